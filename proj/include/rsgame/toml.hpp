#pragma once
#include <map>
#include <string>
#include <vector>

namespace rsgame::toml {

// Minimal TOML reader covering what run configs use: [table.path] headers,
// string / number / boolean scalars, and single-line (possibly nested)
// arrays. Dotted keys, multi-line strings, dates, and arrays-of-tables are
// out of scope and rejected.
struct Value {
    enum class Kind { Table, Array, String, Number, Bool } kind = Kind::Table;
    std::string str;
    double num = 0;
    bool flag = false;
    std::vector<Value> arr;
    std::map<std::string, Value> tab;

    bool has(const std::string& key) const { return tab.count(key) != 0; }
    const Value* find(const std::string& key) const {
        auto it = tab.find(key);
        return it == tab.end() ? nullptr : &it->second;
    }
};

Value parse(const std::string& text);       // throws ConfigError with line info
Value parse_file(const std::string& path);  // adds the file name to messages

}  // namespace rsgame::toml
