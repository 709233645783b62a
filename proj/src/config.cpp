#include "rsgame/config.hpp"

#include <cmath>

#include "rsgame/errors.hpp"
#include "rsgame/toml.hpp"

namespace rsgame {

namespace {

using toml::Value;

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw ConfigError(key + ": " + why);
}

const Value& need(const Value& tab, const std::string& prefix, const std::string& key) {
    const Value* v = tab.find(key);
    if (!v) bad(prefix + key, "missing");
    return *v;
}

double num(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::Number) bad(key, "expected a number");
    return v.num;
}

long integer(const Value& v, const std::string& key) {
    const double d = num(v, key);
    const long n = std::lround(d);
    if (std::fabs(d - static_cast<double>(n)) > 1e-9) bad(key, "expected an integer");
    return n;
}

std::string text(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::String) bad(key, "expected a string");
    return v.str;
}

bool flag(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::Bool) bad(key, "expected true or false");
    return v.flag;
}

std::vector<double> num_list(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::Array) bad(key, "expected an array of numbers");
    std::vector<double> out;
    for (const Value& e : v.arr) out.push_back(num(e, key));
    return out;
}

Expr expr_of(const Value& v, const std::string& key) {
    try {
        return parse(text(v, key));
    } catch (const SyntaxError& e) {
        bad(key, e.what());
    } catch (const UnknownIdentifier& e) {
        bad(key, e.what());
    }
}

std::vector<Expr> expr_list(const Value& v, const std::string& key, int expect) {
    if (v.kind != Value::Kind::Array) bad(key, "expected an array of expression strings");
    if (static_cast<int>(v.arr.size()) != expect)
        bad(key, "expected " + std::to_string(expect) + " entries");
    std::vector<Expr> out;
    for (std::size_t i = 0; i < v.arr.size(); ++i)
        out.push_back(expr_of(v.arr[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

ActionSet load_actions(const Value& model_tab, int player) {
    const std::string tab_key = "model.player" + std::to_string(player);
    const Value* tab = model_tab.find("player" + std::to_string(player));
    if (!tab) bad(tab_key, "missing");
    const Value& feats = need(*tab, tab_key + ".", "features");
    if (feats.kind != Value::Kind::Array || feats.arr.empty())
        bad(tab_key + ".features", "expected a non-empty array of feature vectors");
    ActionSet as;
    as.player = player;
    std::size_t flen = 0;
    for (std::size_t i = 0; i < feats.arr.size(); ++i) {
        const std::string fkey = tab_key + ".features[" + std::to_string(i) + "]";
        Action a;
        a.features = num_list(feats.arr[i], fkey);
        if (i == 0)
            flen = a.features.size();
        else if (a.features.size() != flen)
            bad(fkey, "feature length differs from the first action");
        a.name = "a" + std::to_string(i);
        as.actions.push_back(std::move(a));
    }
    if (const Value* names = tab->find("action_names")) {
        if (names->kind != Value::Kind::Array ||
            names->arr.size() != as.actions.size())
            bad(tab_key + ".action_names", "must list one name per action");
        for (std::size_t i = 0; i < names->arr.size(); ++i)
            as.actions[i].name = text(names->arr[i], tab_key + ".action_names");
    }
    return as;
}

GameModel load_model(const Value& root) {
    const Value* mt = root.find("model");
    if (!mt) bad("model", "missing section");
    GameModel m;
    m.d = static_cast<int>(integer(need(*mt, "model.", "dimension"), "model.dimension"));
    if (m.d != 1 && m.d != 2) bad("model.dimension", "must be 1 or 2");
    if (const Value* am = mt->find("a_min")) {
        m.a_min = num(*am, "model.a_min");
        if (!(m.a_min > 0)) bad("model.a_min", "must be positive");
    }
    m.actions1 = load_actions(*mt, 1);
    m.actions2 = load_actions(*mt, 2);
    m.drift1 = expr_list(need(*mt, "model.", "drift1"), "model.drift1", m.d);
    m.drift2 = expr_list(need(*mt, "model.", "drift2"), "model.drift2", m.d);
    m.sigma = expr_list(need(*mt, "model.", "sigma"), "model.sigma", m.d);
    const char* names[2][2] = {{"cost11", "cost12"}, {"cost21", "cost22"}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m.cost[i][j] =
                expr_of(need(*mt, "model.", names[i][j]), std::string("model.") + names[i][j]);

    // arity cross-checks
    const int f1 = m.actions1.feature_len(), f2 = m.actions2.feature_len();
    for (int k = 0; k < m.d; ++k) {
        try {
            m.drift1[k].validate(m.d, f1);
        } catch (const Error& e) {
            bad("model.drift1[" + std::to_string(k) + "]", e.what());
        }
        try {
            m.drift2[k].validate(m.d, f2);
        } catch (const Error& e) {
            bad("model.drift2[" + std::to_string(k) + "]", e.what());
        }
        try {
            m.sigma[k].validate(m.d, 0);
        } catch (const Error& e) {
            bad("model.sigma[" + std::to_string(k) + "]", std::string(e.what()) +
                                                              " (sigma may only reference x)");
        }
    }
    const int flen[2] = {f1, f2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            try {
                m.cost[i][j].validate(m.d, flen[j]);
            } catch (const Error& e) {
                bad(std::string("model.") + names[i][j], e.what());
            }
        }
    return m;
}

std::vector<std::vector<double>> probe_set(const GameModel& m, double R) {
    // axis points, box corners, and a fixed interior lattice
    std::vector<std::vector<double>> probes;
    const double vals[] = {-R, -0.5 * R, -0.1 * R, 0.0, 0.1 * R, 0.5 * R, R};
    if (m.d == 1) {
        for (double v : vals) probes.push_back({v});
    } else {
        for (double a : vals)
            for (double b : vals) probes.push_back({a, b});
    }
    return probes;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    const Value root = toml::parse_file(path);
    RunConfig rc;
    rc.model = load_model(root);

    const Value* gt = root.find("grid");
    if (!gt) bad("grid", "missing section");
    const bool has_radius = gt->has("radius"), has_radii = gt->has("radii");
    if (has_radius == has_radii) bad("grid", "give exactly one of radius or radii");
    if (has_radius) {
        rc.radii = {num(*gt->find("radius"), "grid.radius")};
    } else {
        rc.radii = num_list(*gt->find("radii"), "grid.radii");
        if (rc.radii.empty()) bad("grid.radii", "must not be empty");
        for (std::size_t i = 1; i < rc.radii.size(); ++i)
            if (!(rc.radii[i] > rc.radii[i - 1]))
                bad("grid.radii", "must be strictly increasing");
    }
    for (double R : rc.radii)
        if (!(R > 0)) bad("grid", "radii must be positive");
    const bool has_h = gt->has("h"), has_rule = gt->has("h_rule");
    if (has_h && has_rule) bad("grid", "give at most one of h or h_rule");
    if (has_h) {
        rc.h = num(*gt->find("h"), "grid.h");
        if (!(rc.h > 0)) bad("grid.h", "must be positive");
    } else if (has_rule) {
        rc.h_denominator = num(*gt->find("h_rule"), "grid.h_rule");
        if (!(rc.h_denominator > 0)) bad("grid.h_rule", "must be positive");
    }

    if (const Value* st = root.find("solver")) {
        SolverConfig& s = rc.solver;
        if (const Value* v = st->find("tol_eig")) s.tol_eig = num(*v, "solver.tol_eig");
        if (const Value* v = st->find("tol_lambda")) s.tol_lambda = num(*v, "solver.tol_lambda");
        if (const Value* v = st->find("tol_strategy"))
            s.tol_strategy = num(*v, "solver.tol_strategy");
        if (const Value* v = st->find("tol_res")) s.tol_res = num(*v, "solver.tol_res");
        if (const Value* v = st->find("tol_dev")) s.tol_dev = num(*v, "solver.tol_dev");
        if (const Value* v = st->find("damping")) s.damping = num(*v, "solver.damping");
        if (const Value* v = st->find("max_outer")) s.max_outer = integer(*v, "solver.max_outer");
        if (const Value* v = st->find("max_iter")) s.max_iter = integer(*v, "solver.max_iter");
        if (const Value* v = st->find("max_eigen_iter"))
            s.max_eigen_iter = integer(*v, "solver.max_eigen_iter");
        if (const Value* v = st->find("eigen_mode")) {
            const std::string mode = text(*v, "solver.eigen_mode");
            if (mode == "auto")
                s.eigen_mode = EigenOptions::Mode::Auto;
            else if (mode == "power")
                s.eigen_mode = EigenOptions::Mode::Power;
            else
                bad("solver.eigen_mode", "must be \"auto\" or \"power\"");
        }
        if (const Value* v = st->find("player")) {
            s.player = static_cast<int>(integer(*v, "solver.player"));
            if (s.player != 1 && s.player != 2) bad("solver.player", "must be 1 or 2");
        }
        if (const Value* v = st->find("deviations"))
            s.deviations = static_cast<int>(integer(*v, "solver.deviations"));
        if (const Value* v = st->find("seed"))
            s.seed = static_cast<unsigned long long>(integer(*v, "solver.seed"));
        if (const Value* v = st->find("threads"))
            s.threads = static_cast<int>(integer(*v, "solver.threads"));
        if (const Value* v = st->find("monotonicity_slack"))
            s.monotonicity_slack = num(*v, "solver.monotonicity_slack");
        if (!(s.damping > 0) || s.damping > 1) bad("solver.damping", "must lie in (0, 1]");
        for (double t : {s.tol_eig, s.tol_lambda, s.tol_strategy, s.tol_res, s.tol_dev})
            if (!(t > 0)) bad("solver", "tolerances must be positive");
    }

    if (const Value* st = root.find("simulate")) {
        SimSection& s = rc.sim;
        if (const Value* v = st->find("dt")) s.cfg.dt = num(*v, "simulate.dt");
        if (const Value* v = st->find("T")) s.cfg.T = num(*v, "simulate.T");
        if (const Value* v = st->find("N")) s.cfg.N = integer(*v, "simulate.N");
        if (const Value* v = st->find("seed"))
            s.cfg.seed = static_cast<unsigned long long>(integer(*v, "simulate.seed"));
        if (const Value* v = st->find("R_clamp")) s.cfg.R_clamp = num(*v, "simulate.R_clamp");
        if (const Value* v = st->find("x0")) s.x0 = num_list(*v, "simulate.x0");
        if (const Value* v = st->find("dump_paths")) s.dump_paths = flag(*v, "simulate.dump_paths");
        if (const Value* v = st->find("rep_check")) s.rep_check = flag(*v, "simulate.rep_check");
        if (const Value* v = st->find("r_ball")) s.r_ball = num(*v, "simulate.r_ball");
        if (const Value* v = st->find("rep_x0")) s.rep_x0 = num_list(*v, "simulate.rep_x0");
        if (const Value* v = st->find("rep_T")) s.rep_T = num(*v, "simulate.rep_T");
        if (const Value* v = st->find("rep_N")) s.rep_N = integer(*v, "simulate.rep_N");
        if (const Value* v = st->find("trend_dts")) s.trend_dts = num_list(*v, "simulate.trend_dts");
        if (s.x0.empty()) s.x0.assign(rc.model.d, 0.0);
        if (static_cast<int>(s.x0.size()) != rc.model.d)
            bad("simulate.x0", "dimension mismatch");
        if (s.rep_check) {
            if (s.rep_x0.empty()) bad("simulate.rep_x0", "required when rep_check is on");
            if (static_cast<int>(s.rep_x0.size()) != rc.model.d)
                bad("simulate.rep_x0", "dimension mismatch");
            if (!(s.r_ball > 0)) bad("simulate.r_ball", "must be positive");
        }
        validate(s.cfg);
    } else {
        rc.sim.x0.assign(rc.model.d, 0.0);
    }

    if (const Value* lt = root.find("lyapunov")) {
        rc.has_lyapunov = true;
        LyapunovSpec& L = rc.lyap;
        L.V = expr_of(need(*lt, "lyapunov.", "V"), "lyapunov.V");
        try {
            L.V.validate(rc.model.d, 0);
        } catch (const Error& e) {
            bad("lyapunov.V", e.what());
        }
        const std::string kind = text(need(*lt, "lyapunov.", "case"), "lyapunov.case");
        if (kind == "bounded")
            L.kind = LyapunovCase::Bounded;
        else if (kind == "unbounded")
            L.kind = LyapunovCase::Unbounded;
        else
            bad("lyapunov.case", "must be \"bounded\" or \"unbounded\"");
        L.K_radius = num(need(*lt, "lyapunov.", "K_radius"), "lyapunov.K_radius");
        if (L.kind == LyapunovCase::Bounded) {
            L.delta = num(need(*lt, "lyapunov.", "delta"), "lyapunov.delta");
        } else {
            L.ell = expr_of(need(*lt, "lyapunov.", "ell"), "lyapunov.ell");
            try {
                L.ell.validate(rc.model.d, 0);
            } catch (const Error& e) {
                bad("lyapunov.ell", e.what());
            }
        }
        if (const Value* v = lt->find("h_chk")) rc.lyap_h_chk = num(*v, "lyapunov.h_chk");
    }

    try {
        validate_model(rc.model, probe_set(rc.model, rc.radii.back()));
    } catch (const ValidationFailed& e) {
        throw ValidationFailed(std::string("model validation failed: ") + e.what());
    }
    return rc;
}

}  // namespace rsgame
