#include "rsgame/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rsgame/errors.hpp"

namespace rsgame::toml {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    long line;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("line " + std::to_string(line) + ": " + msg);
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
};

std::string parse_basic_string(Cursor& c) {
    ++c.pos;  // opening quote
    std::string out;
    while (!c.done() && c.peek() != '"') {
        char ch = c.s[c.pos++];
        if (ch == '\\') {
            if (c.done()) c.fail("dangling escape in string");
            const char e = c.s[c.pos++];
            switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: c.fail(std::string("unsupported escape \\") + e);
            }
        } else {
            out += ch;
        }
    }
    if (c.done()) c.fail("unterminated string");
    ++c.pos;  // closing quote
    return out;
}

Value parse_value(Cursor& c);

Value parse_array(Cursor& c) {
    ++c.pos;  // '['
    Value v;
    v.kind = Value::Kind::Array;
    c.skip_ws();
    if (c.peek() == ']') {
        ++c.pos;
        return v;
    }
    for (;;) {
        c.skip_ws();
        v.arr.push_back(parse_value(c));
        c.skip_ws();
        if (c.peek() == ',') {
            ++c.pos;
            c.skip_ws();
            if (c.peek() == ']') {  // trailing comma
                ++c.pos;
                return v;
            }
            continue;
        }
        if (c.peek() == ']') {
            ++c.pos;
            return v;
        }
        c.fail("expected ',' or ']' in array");
    }
}

Value parse_value(Cursor& c) {
    Value v;
    const char ch = c.peek();
    if (ch == '"') {
        v.kind = Value::Kind::String;
        v.str = parse_basic_string(c);
        return v;
    }
    if (ch == '[') return parse_array(c);
    if (c.s.compare(c.pos, 4, "true") == 0) {
        v.kind = Value::Kind::Bool;
        v.flag = true;
        c.pos += 4;
        return v;
    }
    if (c.s.compare(c.pos, 5, "false") == 0) {
        v.kind = Value::Kind::Bool;
        v.flag = false;
        c.pos += 5;
        return v;
    }
    // number; TOML allows underscores as separators
    std::string digits;
    while (!c.done()) {
        const char d = c.peek();
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '+' || d == '-' || d == '.' ||
            d == 'e' || d == 'E' || d == '_') {
            if (d != '_') digits += d;
            ++c.pos;
        } else {
            break;
        }
    }
    if (digits.empty()) c.fail("expected a value");
    char* end = nullptr;
    v.kind = Value::Kind::Number;
    v.num = std::strtod(digits.c_str(), &end);
    if (end == nullptr || *end != '\0') c.fail("malformed number '" + digits + "'");
    return v;
}

std::string parse_key(Cursor& c) {
    c.skip_ws();
    if (c.peek() == '"') return parse_basic_string(c);
    std::string key;
    while (!c.done()) {
        const char ch = c.peek();
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-') {
            key += ch;
            ++c.pos;
        } else {
            break;
        }
    }
    if (key.empty()) c.fail("expected a key");
    return key;
}

// strips comments that start outside quoted strings
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (ch == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
        if (ch == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

Value* descend(Value& root, const std::string& path, long line) {
    Value* cur = &root;
    std::string part;
    std::istringstream ss(path);
    while (std::getline(ss, part, '.')) {
        if (part.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty table-name component");
        Value& next = cur->tab[part];
        if (next.kind != Value::Kind::Table && !(next.tab.empty() && next.arr.empty() &&
                                                 next.str.empty()))
            throw ConfigError("line " + std::to_string(line) + ": [" + path +
                              "] collides with an existing value");
        next.kind = Value::Kind::Table;
        cur = &next;
    }
    return cur;
}

}  // namespace

Value parse(const std::string& text) {
    Value root;
    root.kind = Value::Kind::Table;
    Value* current = &root;
    std::istringstream in(text);
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_comment(raw);
        Cursor c{line, 0, line_no};
        c.skip_ws();
        if (c.done()) continue;
        if (c.peek() == '[') {
            if (line.find("[[") == c.pos)
                c.fail("arrays of tables are not supported by this reader");
            ++c.pos;
            const std::size_t close = line.find(']', c.pos);
            if (close == std::string::npos) c.fail("unterminated table header");
            std::string path = line.substr(c.pos, close - c.pos);
            // trim
            while (!path.empty() && (path.front() == ' ' || path.front() == '\t'))
                path.erase(path.begin());
            while (!path.empty() && (path.back() == ' ' || path.back() == '\t')) path.pop_back();
            if (path.empty()) c.fail("empty table header");
            current = descend(root, path, line_no);
            c.pos = close + 1;
            c.skip_ws();
            if (!c.done()) c.fail("trailing characters after table header");
            continue;
        }
        const std::string key = parse_key(c);
        c.skip_ws();
        if (c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
        ++c.pos;
        c.skip_ws();
        Value v = parse_value(c);
        c.skip_ws();
        if (!c.done()) c.fail("trailing characters after value for key '" + key + "'");
        if (current->has(key))
            c.fail("duplicate key '" + key + "'");
        current->tab[key] = std::move(v);
    }
    return root;
}

Value parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace rsgame::toml
