#pragma once
#include <json.hpp>
#include <string>
#include <vector>

#include "rsgame/config.hpp"
#include "rsgame/hjb.hpp"
#include "rsgame/lyapunov.hpp"
#include "rsgame/nash.hpp"
#include "rsgame/simulate.hpp"

namespace rsgame {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "rsg-report/1";

json semilinear_to_json(const SemilinearSolveReport& rep, int player, const Grid& g);
json sweep_to_json(const SweepResult& sr, int player);
json nash_to_json(const NashReport& rep, const Grid& g);
json estimate_to_json(const CostEstimate& est, int player, const SimConfig& cfg,
                      const std::vector<double>& x0);
json rep_check_to_json(const RepCheck& rc);
json rep_trend_to_json(const RepTrend& tr);
json lyapunov_to_json(const LyapunovReport& rep, const LyapunovSpec& spec);

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const json& j);
void write_psi_csv(const std::string& path, const Grid& g, const std::vector<double>& psi);
void write_strategy_csv(const std::string& path, const Grid& g, const GameModel& model,
                        const MarkovStrategy& v);
void write_paths_csv(const std::string& path, const std::vector<PathRow>& rows);
void write_sweep_csv(const std::string& path, const SweepResult& sr);

// Dispatches one CLI command, writes report.json (and the command's CSV
// files) plus run_meta.json under out_dir. Returns the process exit code:
// 0 success, 2 reported non-convergence or infeasibility, with errors left
// to the caller as exceptions.
int run_command(const std::string& command, const RunConfig& rc, const std::string& out_dir);

}  // namespace rsgame
