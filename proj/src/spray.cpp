#include "spraysim/spray.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spraysim {

void validate(const DepositionModel& model) {
  if (model.anchors.empty())
    throw std::invalid_argument("deposition model: needs at least one anchor");
  double prev_d = -1.0, prev_f = 1.0 + 1e-12;
  for (const auto& [d, f] : model.anchors) {
    if (d < 0.0) throw std::invalid_argument("deposition model: negative distance");
    if (f < 0.0 || f > 1.0)
      throw std::invalid_argument("deposition model: fraction outside [0, 1]");
    if (d <= prev_d)
      throw std::invalid_argument("deposition model: anchors must increase in distance");
    if (f > prev_f)
      throw std::invalid_argument("deposition model: fractions must be non-increasing");
    prev_d = d;
    prev_f = f;
  }
  if (model.cutoff_distance <= model.anchors.back().first)
    throw std::invalid_argument("deposition model: cutoff must lie beyond the last anchor");
}

double deposition_fraction(const DepositionModel& model, double distance) {
  if (distance < 0.0)
    throw std::invalid_argument("deposition_fraction: distance must be >= 0");
  const auto& a = model.anchors;
  if (distance <= a.front().first) return a.front().second;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (distance <= a[i].first) {
      const double t = (distance - a[i - 1].first) / (a[i].first - a[i - 1].first);
      return a[i - 1].second + t * (a[i].second - a[i - 1].second);
    }
  }
  if (distance >= model.cutoff_distance) return 0.0;
  const double t =
      (distance - a.back().first) / (model.cutoff_distance - a.back().first);
  return a.back().second * (1.0 - t);
}

void validate(const CoverageModel& model) {
  if (model.table.empty()) throw std::invalid_argument("coverage model: empty table");
  double prev = 0.0;
  bool first = true;
  for (const auto& row : model.table) {
    if (row.duration_s <= 0.0)
      throw std::invalid_argument("coverage model: durations must be positive");
    if (!first && row.duration_s <= prev)
      throw std::invalid_argument("coverage model: durations must increase");
    if (row.initial < 0.0 || row.initial > 1.0 || row.at_60s < 0.0 || row.at_60s > 1.0)
      throw std::invalid_argument("coverage model: fractions outside [0, 1]");
    if (row.at_60s > row.initial)
      throw std::invalid_argument("coverage model: coverage must not grow over time");
    prev = row.duration_s;
    first = false;
  }
  if (model.required_fraction <= 0.0 || model.required_fraction > 1.0)
    throw std::invalid_argument("coverage model: required fraction outside (0, 1]");
}

namespace {

// Clamped linear interpolation of a table column against duration.
double interp_duration(const CoverageModel& model, double duration,
                       double CoverageRow::*column) {
  const auto& t = model.table;
  if (duration <= t.front().duration_s) return t.front().*column;
  if (duration >= t.back().duration_s) return t.back().*column;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (duration <= t[i].duration_s) {
      const double f =
          (duration - t[i - 1].duration_s) / (t[i].duration_s - t[i - 1].duration_s);
      return t[i - 1].*column + f * (t[i].*column - t[i - 1].*column);
    }
  }
  return t.back().*column;
}

}  // namespace

double coverage_after(const CoverageModel& model, double spray_duration_s,
                      double elapsed_s) {
  if (spray_duration_s <= 0.0)
    throw std::invalid_argument("coverage_after: duration must be > 0");
  if (elapsed_s < 0.0) throw std::invalid_argument("coverage_after: elapsed must be >= 0");
  const double c0 = interp_duration(model, spray_duration_s, &CoverageRow::initial);
  const double c60 = interp_duration(model, spray_duration_s, &CoverageRow::at_60s);
  const double rate = (c0 - c60) / 60.0;  // continues past 60 s
  return std::max(0.0, c0 - rate * elapsed_s);
}

bool is_disinfected(const CoverageModel& model, double spray_duration_s) {
  // Coverage is linear in elapsed time with a non-positive slope, so the
  // minimum over the persistence window sits at its end.
  const double start = coverage_after(model, spray_duration_s, 0.0);
  const double end = coverage_after(model, spray_duration_s, model.persistence_s);
  return start >= model.required_fraction && end >= model.required_fraction;
}

std::optional<TankState> consume(const TankState& tank, double duration_s) {
  if (duration_s < 0.0) throw std::invalid_argument("consume: duration must be >= 0");
  const double need = tank.flow_rate_ml_per_min * duration_s / 60.0;
  if (need > tank.remaining_ml + 1e-12) return std::nullopt;
  TankState out = tank;
  out.remaining_ml = std::max(0.0, tank.remaining_ml - need);
  return out;
}

int sprays_remaining(const TankState& tank, double duration_s) {
  if (duration_s <= 0.0) throw std::invalid_argument("sprays_remaining: duration must be > 0");
  const double per_spray = tank.flow_rate_ml_per_min * duration_s / 60.0;
  return static_cast<int>(std::floor(tank.remaining_ml / per_spray + 1e-9));
}

}  // namespace spraysim
