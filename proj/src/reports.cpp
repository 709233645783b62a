#include "rsgame/reports.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "rsgame/errors.hpp"
#include "rsgame/kernels.hpp"

namespace rsgame {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* stop_name(SemilinearStop s) {
    switch (s) {
        case SemilinearStop::StrategyFixed: return "strategy-fixed";
        case SemilinearStop::LambdaStalled: return "lambda-stalled";
        case SemilinearStop::MaxIter: return "max-iter";
    }
    return "unknown";
}

json eigenpair_to_json(const EigenPair& e) {
    json j;
    j["lambda"] = e.lambda;
    j["bracket"] = {e.lo, e.hi};
    j["residual"] = e.residual;
    j["iterations"] = e.iterations;
    double mn = e.psi.empty() ? 0 : e.psi[0], mx = mn;
    for (double v : e.psi) {
        if (v < mn) mn = v;
        if (v > mx) mx = v;
    }
    j["psi_min"] = mn;
    j["psi_max"] = mx;
    j["psi_size"] = e.psi.size();
    return j;
}

json grid_to_json(const Grid& g) {
    return json{{"dimension", g.d}, {"radius", g.R}, {"h", g.h},
                {"interior_nodes", g.num_interior()}};
}

std::string iso_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

json semilinear_to_json(const SemilinearSolveReport& rep, int player, const Grid& g) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = "eigen";
    j["player"] = player;
    j["grid"] = grid_to_json(g);
    j["eigenpair"] = eigenpair_to_json(rep.eig);
    j["lambda_history"] = rep.lambda_history;
    j["outer_iterations"] = rep.outer_iterations;
    j["termination"] = stop_name(rep.reason);
    return j;
}

json sweep_to_json(const SweepResult& sr, int player) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = "sweep";
    j["player"] = player;
    json entries = json::array();
    for (const SweepEntry& e : sr.entries)
        entries.push_back(json{{"R", e.R},
                               {"h", e.h},
                               {"interior_nodes", e.interior_nodes},
                               {"lambda", e.lambda},
                               {"outer_iterations", e.outer_iterations}});
    j["entries"] = entries;
    j["lambda_inf"] = sr.lambda_inf;
    return j;
}

json nash_to_json(const NashReport& rep, const Grid& g) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = "nash";
    j["grid"] = grid_to_json(g);
    j["converged"] = rep.converged;
    j["cycle_detected"] = rep.cycle_detected;
    j["iterations"] = rep.iterations;
    j["eigenpair1"] = eigenpair_to_json(rep.eig1);
    j["eigenpair2"] = eigenpair_to_json(rep.eig2);
    j["residuals"] = {rep.residual1, rep.residual2};
    json trace = json::array();
    for (const NashIterate& t : rep.trace)
        trace.push_back(json{{"lambda1", t.lambda1},
                             {"lambda2", t.lambda2},
                             {"strategy_change", t.strategy_change}});
    j["trace"] = trace;
    json devs = json::array();
    for (const DeviationEntry& d : rep.deviations)
        devs.push_back(json{{"player", d.player},
                            {"id", d.id},
                            {"lambda", d.lambda},
                            {"margin", d.margin}});
    j["deviations"] = devs;
    return j;
}

json estimate_to_json(const CostEstimate& est, int player, const SimConfig& cfg,
                      const std::vector<double>& x0) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = "simulate";
    j["player"] = player;
    j["rho"] = est.rho;
    j["rho_half"] = est.rho_half;
    j["se"] = est.se;
    j["n_paths"] = est.n_paths;
    j["x0"] = x0;
    j["dt"] = cfg.dt;
    j["T"] = cfg.T;
    j["seed"] = cfg.seed;
    return j;
}

json rep_check_to_json(const RepCheck& rc) {
    json j;
    j["lhs"] = rc.lhs;
    j["rhs"] = rc.rhs;
    j["se"] = rc.se;
    j["rel_err"] = rc.lhs != 0 ? std::fabs(rc.rhs - rc.lhs) / std::fabs(rc.lhs) : 0.0;
    j["n_used"] = rc.n_used;
    j["n_capped"] = rc.n_capped;
    return j;
}

json rep_trend_to_json(const RepTrend& tr) {
    json j;
    j["lhs"] = tr.lhs;
    json levels = json::array();
    for (const RepTrendLevel& l : tr.levels)
        levels.push_back(json{{"dt", l.dt},
                              {"rhs", l.rhs},
                              {"gap", l.gap},
                              {"se", l.se},
                              {"n_used", l.n_used},
                              {"n_capped", l.n_capped}});
    j["levels"] = levels;
    j["pair_se"] = tr.pair_se;
    json ok = json::array();
    for (bool b : tr.pair_ok) ok.push_back(b);
    j["pair_ok"] = ok;
    j["passed"] = tr.passed;
    return j;
}

json lyapunov_to_json(const LyapunovReport& rep, const LyapunovSpec& spec) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = "check-lyapunov";
    j["case"] = spec.kind == LyapunovCase::Bounded ? "bounded" : "unbounded";
    j["passed"] = rep.passed;
    j["alpha"] = rep.alpha;
    j["min_margin"] = rep.min_margin;
    j["min_V_on_K"] = rep.min_V_on_K;
    j["cost_bound"] = {rep.bound[0], rep.bound[1]};
    j["probes"] = rep.probes;
    j["notes"] = rep.notes;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write failed for " + path);
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void write_psi_csv(const std::string& path, const Grid& g, const std::vector<double>& psi) {
    std::string s = g.d == 1 ? "x0,psi\n" : "x0,x1,psi\n";
    double x[2];
    for (long ii = 0; ii < g.num_interior(); ++ii) {
        g.interior_position(ii, x);
        s += fmt(x[0]);
        if (g.d == 2) s += "," + fmt(x[1]);
        s += "," + fmt(psi[ii]) + "\n";
    }
    write_text_file(path, s);
}

void write_strategy_csv(const std::string& path, const Grid& g, const GameModel& model,
                        const MarkovStrategy& v) {
    const ActionSet& as = model.actions(v.player);
    std::string s = g.d == 1 ? "x0" : "x0,x1";
    for (const Action& a : as.actions) s += ",p_" + a.name;
    s += "\n";
    double x[2];
    for (long n = 0; n < g.num_nodes(); ++n) {
        g.position(n, x);
        s += fmt(x[0]);
        if (g.d == 2) s += "," + fmt(x[1]);
        const double* row = v.at(n);
        for (int u = 0; u < v.m; ++u) s += "," + fmt(row[u]);
        s += "\n";
    }
    write_text_file(path, s);
}

void write_paths_csv(const std::string& path, const std::vector<PathRow>& rows) {
    std::string s = "path_index,S_p,tau_or_T\n";
    for (const PathRow& r : rows)
        s += std::to_string(r.index) + "," + fmt(r.S) + "," + fmt(r.tau_or_T) + "\n";
    write_text_file(path, s);
}

void write_sweep_csv(const std::string& path, const SweepResult& sr) {
    std::string s = "R,h,interior_nodes,lambda,outer_iterations\n";
    for (const SweepEntry& e : sr.entries)
        s += fmt(e.R) + "," + fmt(e.h) + "," + std::to_string(e.interior_nodes) + "," +
             fmt(e.lambda) + "," + std::to_string(e.outer_iterations) + "\n";
    write_text_file(path, s);
}

namespace {

SemilinearOptions semilinear_options(const SolverConfig& s) {
    SemilinearOptions o;
    o.tol_eig = s.tol_eig;
    o.tol_lambda = s.tol_lambda;
    o.max_outer = s.max_outer;
    o.max_eigen_iter = s.max_eigen_iter;
    o.eigen_mode = s.eigen_mode;
    return o;
}

json error_report(const std::string& command, const char* type, const std::string& message) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["error"] = json{{"type", type}, {"message", message}};
    return j;
}

int dispatch(const std::string& command, const RunConfig& rc, const std::string& out) {
    const GameModel& model = rc.model;
    const auto path = [&out](const char* name) { return out + "/" + name; };

    if (command == "sweep") {
        HRule hr;
        if (rc.h > 0)
            hr.explicit_h.assign(rc.radii.size(), rc.h);
        else
            hr.denominator = rc.h_denominator;
        SweepOptions so;
        so.solve = semilinear_options(rc.solver);
        so.monotonicity_slack = rc.solver.monotonicity_slack;
        const SweepResult sr =
            dirichlet_sweep(model, rc.solver.player, uniform_rule(model), rc.radii, hr, so);
        write_json_file(path("report.json"), sweep_to_json(sr, rc.solver.player));
        write_sweep_csv(path("sweep.csv"), sr);
        return 0;
    }

    const Grid g = rc.main_grid();

    if (command == "eigen") {
        const int player = rc.solver.player;
        const int opp = player == 1 ? 2 : 1;
        const MarkovStrategy vopp =
            MarkovStrategy::uniform(opp, model.actions(opp).size(), g.num_nodes());
        const SemilinearSolveReport rep =
            solve_semilinear_eigen(g, model, player, vopp, semilinear_options(rc.solver));
        write_json_file(path("report.json"), semilinear_to_json(rep, player, g));
        write_psi_csv(path("psi.csv"), g, rep.eig.psi);
        write_strategy_csv(path(player == 1 ? "strategy_p1.csv" : "strategy_p2.csv"), g, model,
                           rep.strategy);
        return rep.reason == SemilinearStop::MaxIter ? 2 : 0;
    }

    if (command == "nash") {
        NashOptions no;
        no.damping = rc.solver.damping;
        no.tol_strategy = rc.solver.tol_strategy;
        no.tol_res = rc.solver.tol_res;
        no.max_iter = rc.solver.max_iter;
        no.seed = rc.solver.seed;
        no.solve = semilinear_options(rc.solver);
        NashReport rep = find_nash(g, model, no);
        int code = rep.converged ? 0 : 2;
        std::string violation;
        if (rep.converged && rc.solver.deviations > 0) {
            try {
                verify_nash(g, model, rep, rc.solver.deviations, rc.solver.seed,
                            rc.solver.tol_dev);
            } catch (const NashViolation& e) {
                violation = e.what();
                code = 2;
            }
        }
        json j = nash_to_json(rep, g);
        if (!violation.empty()) j["nash_violation"] = violation;
        write_json_file(path("report.json"), j);
        write_psi_csv(path("psi1.csv"), g, rep.eig1.psi);
        write_psi_csv(path("psi2.csv"), g, rep.eig2.psi);
        write_strategy_csv(path("strategy_p1.csv"), g, model, rep.v1);
        write_strategy_csv(path("strategy_p2.csv"), g, model, rep.v2);
        return code;
    }

    if (command == "simulate") {
        // simulate under the equilibrium pair of this grid
        NashOptions no;
        no.damping = rc.solver.damping;
        no.tol_strategy = rc.solver.tol_strategy;
        no.tol_res = rc.solver.tol_res;
        no.max_iter = rc.solver.max_iter;
        no.solve = semilinear_options(rc.solver);
        const NashReport eq = find_nash(g, model, no);
        if (!eq.converged) {
            write_json_file(path("report.json"),
                            error_report(command, "NoEquilibrium",
                                         "best-response iteration did not converge; "
                                         "nothing to simulate under"));
            return 2;
        }
        const int player = rc.solver.player;
        const CostEstimate est = estimate_rho(g, model, player, eq.v1, eq.v2, rc.sim.x0,
                                              rc.sim.cfg, rc.sim.dump_paths);
        json j = estimate_to_json(est, player, rc.sim.cfg, rc.sim.x0);
        j["lambda_grid"] = player == 1 ? eq.eig1.lambda : eq.eig2.lambda;
        if (rc.sim.dump_paths) write_paths_csv(path("paths.csv"), est.paths);
        if (rc.sim.rep_check) {
            SimConfig rcfg = rc.sim.cfg;
            rcfg.T = rc.sim.rep_T;
            rcfg.N = rc.sim.rep_N;
            const EigenPair& eig = player == 1 ? eq.eig1 : eq.eig2;
            const RepCheck chk = check_stochastic_rep(g, model, eq.v1, eq.v2, player, eig,
                                                      rc.sim.r_ball, rc.sim.rep_x0, rcfg,
                                                      rc.sim.dump_paths);
            j["stochastic_rep"] = rep_check_to_json(chk);
            if (rc.sim.dump_paths) write_paths_csv(path("rep_paths.csv"), chk.paths);
            if (!rc.sim.trend_dts.empty()) {
                const RepTrend tr = stochastic_rep_trend(g, model, eq.v1, eq.v2, player, eig,
                                                         rc.sim.r_ball, rc.sim.rep_x0, rcfg,
                                                         rc.sim.trend_dts);
                j["dt_trend"] = rep_trend_to_json(tr);
            }
        }
        write_json_file(path("report.json"), j);
        return 0;
    }

    if (command == "check-lyapunov") {
        if (!rc.has_lyapunov) throw ConfigError("config has no [lyapunov] section");
        const double h_chk = rc.lyap_h_chk > 0 ? rc.lyap_h_chk : g.h;
        const LyapunovReport rep = check_lyapunov(model, rc.lyap, g, h_chk);
        write_json_file(path("report.json"), lyapunov_to_json(rep, rc.lyap));
        return 0;
    }

    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace

int run_command(const std::string& command, const RunConfig& rc, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    set_max_threads(rc.solver.threads);
    json meta;
    meta["command"] = command;
    meta["started"] = iso_now();
    int code = 0;
    try {
        code = dispatch(command, rc, out_dir);
    } catch (const NoConvergence& e) {
        write_json_file(out_dir + "/report.json", error_report(command, "NoConvergence",
                                                               e.what()));
        code = 2;
    } catch (const SpecInfeasible& e) {
        write_json_file(out_dir + "/report.json", error_report(command, "SpecInfeasible",
                                                               e.what()));
        code = 2;
    } catch (const TooManyCapped& e) {
        write_json_file(out_dir + "/report.json", error_report(command, "TooManyCapped",
                                                               e.what()));
        code = 2;
    }
    meta["finished"] = iso_now();
    meta["exit_code"] = code;
    write_json_file(out_dir + "/run_meta.json", meta);
    return code;
}

}  // namespace rsgame
