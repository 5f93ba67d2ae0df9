#pragma once

#include "spraysim/mission.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spraysim {

struct TrialResult {
  int index = 0;
  std::uint64_t seed = 0;
  Vec3 start{0.0, 0.0, 0.0};
  std::vector<SprayEvent> spray_events;
  bool done = false;
  std::string abort_reason;
  double sim_duration_s = 0.0;
  double wall_seconds = 0.0;  // stdout only, never written to artifacts
  double tank_remaining_ml = 0.0;
  std::vector<TrajectoryRow> trajectory;

  double mean_error() const;  // mean of spray-event mean errors
};

struct SuiteReport {
  int trials = 0;
  int successes = 0;  // mission done and every scene handle sprayed
  double success_rate = 0.0;
  double grand_mean_error = 0.0;     // mean over trials of per-trial mean error
  double max_trial_mean_error = 0.0;
  // The reference system holds position better than it localizes: nozzle
  // scatter within a trial vs scatter of per-trial means.
  double mean_within_trial_std = 0.0;
  double between_trial_std = 0.0;
  double total_spray_time_s = 0.0;
  double mean_tank_remaining_ml = 0.0;
  int sprays_per_full_tank = 0;
  int reported_handles_per_tank = kReportedHandlesPerTank;
};

struct SuiteOptions {
  int trials = 10;
  std::uint64_t base_seed = 1;
  std::string out_dir;  // empty: no artifacts written
};

// One mission with the start position jittered inside the configured start
// region; trial i uses seed base_seed + i.
TrialResult run_trial(const SceneModel& scene, const MissionConfig& config, int index,
                      std::uint64_t base_seed);

SuiteReport make_report(const std::vector<TrialResult>& trials);

struct SuiteRun {
  SuiteReport report;
  std::vector<TrialResult> trials;
};

// Runs the trials sequentially and, when out_dir is set, writes per-trial
// trajectory and spray-trace CSVs plus summary.txt / summary.json. All
// artifacts are byte-deterministic for fixed inputs.
SuiteRun run_suite(const SceneModel& scene, const MissionConfig& config,
                   const SuiteOptions& options);

std::string report_to_text(const SuiteReport& report,
                           const std::vector<TrialResult>& trials);
std::string report_to_json(const SuiteReport& report,
                           const std::vector<TrialResult>& trials);

}  // namespace spraysim
