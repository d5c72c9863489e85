#pragma once

// Per-interval comparison of four settlement schemes, time-series
// aggregation, and operating-envelope sweeps.
//
//   NemPassive    standalone members consuming the pi_plus bundle regardless of b
//   NemBenchmark  standalone members responding optimally to NEM
//   NemCommunity  benchmark consumption, but one pooled NEM bill at the PCC
//   DNem          members responding to the community's dynamic price

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dnem/mechanism.hpp"
#include "dnem/model.hpp"

namespace dnem {

enum class Scheme { NemPassive, NemBenchmark, NemCommunity, DNem };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::NemPassive, Scheme::NemBenchmark,
                                                      Scheme::NemCommunity, Scheme::DNem};

const char* to_string(Scheme scheme);

struct IntervalResult {
  long interval;
  Scheme scheme;
  double welfare;
  double z_pcc;
  std::optional<double> gamma;  // DNem only
  std::optional<Zone> zone;     // DNem only
  std::vector<Schedule> per_member;
};

// Results in kAllSchemes order. Throws FeasibilityError for an infeasible member.
std::array<IntervalResult, 4> run_interval(const Community& community, const Tariff& tariff,
                                           std::span<const double> b, long interval = 0);

// Time-of-use DSO tariff: pi_plus switches between on- and off-peak by the
// interval's position within the day; pi_minus is fixed.
struct TouTariff {
  double pi_plus_on;
  double pi_plus_off;
  std::vector<int> on_peak_intervals;  // indices within a day
  double pi_minus;
  int intervals_per_day;

  Tariff at(long interval) const;
  bool operator==(const TouTariff&) const = default;
};

using TariffSchedule = std::function<Tariff(long)>;

// Generation per interval, one value per member in community order.
struct GenerationSeries {
  std::vector<long> intervals;
  std::vector<std::vector<double>> b;

  std::size_t size() const { return intervals.size(); }
};

struct SkippedInterval {
  long interval;
  std::string reason;
};

struct SchemeSummary {
  Scheme scheme;
  double total_welfare;
  double average_welfare;
  double gain_over_passive_pct;  // 100 (W_s - W_passive) / |W_passive|
};

struct TimeseriesReport {
  std::vector<IntervalResult> rows;  // four per evaluated interval, timestamp order
  std::vector<SkippedInterval> skipped;
  std::array<SchemeSummary, 4> summary;
  std::size_t evaluated_intervals = 0;
};

// Throws std::invalid_argument when `generation` holds no intervals.
TimeseriesReport run_timeseries(const Community& community, const TariffSchedule& tariff,
                                const GenerationSeries& generation);

struct SweepResult {
  double envelope_width;
  std::array<double, 4> average_welfare;  // kAllSchemes order
};

struct SweepReport {
  std::vector<SweepResult> rows;
  std::vector<std::pair<double, std::string>> skipped_widths;
};

// Applies the symmetric envelope [-width, width] to every member. A width
// with any infeasible interval is reported in skipped_widths.
SweepReport oe_sweep(const Community& base, const TariffSchedule& tariff,
                     const GenerationSeries& generation, std::span<const double> widths);

Community with_uniform_envelope(const Community& base, double width);

}  // namespace dnem
