#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace spraysim {

// Mass fraction of sprayed droplets reaching the target vs nozzle distance.
// Piecewise linear through the anchors, constant below the first, declining
// linearly to zero at the cutoff beyond the last. Calibrated to the measured
// 73% at 0.30 m; the at-nozzle value and cutoff are configuration.
struct DepositionModel {
  std::vector<std::pair<double, double>> anchors{{0.0, 0.90}, {0.30, 0.73}};
  double cutoff_distance = 0.60;
};

double deposition_fraction(const DepositionModel& model, double distance);
void validate(const DepositionModel& model);  // throws std::invalid_argument

// Measured wetted-area fractions right after spraying and 60 s later, per
// spray duration. Coverage decays linearly between the two samples and
// keeps the same rate afterwards, floored at zero.
struct CoverageRow {
  double duration_s;
  double initial;
  double at_60s;
};

struct CoverageModel {
  std::vector<CoverageRow> table{{1.0, 0.68, 0.64}, {2.0, 0.97, 0.94}, {3.0, 0.98, 0.97}};
  double required_fraction = 0.90;
  double persistence_s = 60.0;
};

double coverage_after(const CoverageModel& model, double spray_duration_s,
                      double elapsed_s);
// True iff coverage stays at or above the required fraction for the whole
// persistence window.
bool is_disinfected(const CoverageModel& model, double spray_duration_s);
void validate(const CoverageModel& model);

struct TankState {
  double capacity_ml = 250.0;
  double remaining_ml = 250.0;
  double flow_rate_ml_per_min = 76.9;  // 2.6 US fl oz/min
};

// Remaining volume after spraying for `duration_s`; nullopt (and no spray)
// when the tank cannot supply the full burst.
std::optional<TankState> consume(const TankState& tank, double duration_s);

// How many full bursts of `duration_s` the remaining volume supports.
int sprays_remaining(const TankState& tank, double duration_s);

// The reference hardware is reported to manage only about 20 handles per
// tank; flow-rate arithmetic gives ~97. The gap is unexplained, so reports
// surface both numbers instead of guessing.
inline constexpr int kReportedHandlesPerTank = 20;

}  // namespace spraysim
