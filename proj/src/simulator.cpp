#include "dnem/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "dnem/benchmark.hpp"
#include "dnem/member_response.hpp"

namespace dnem {

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::NemPassive: return "nem_passive";
    case Scheme::NemBenchmark: return "nem_benchmark";
    case Scheme::NemCommunity: return "nem_community";
    case Scheme::DNem: return "dnem";
  }
  return "unknown";
}

Tariff TouTariff::at(long interval) const {
  const long slot = ((interval % intervals_per_day) + intervals_per_day) % intervals_per_day;
  const bool on = std::find(on_peak_intervals.begin(), on_peak_intervals.end(), slot) != on_peak_intervals.end();
  return Tariff(on ? pi_plus_on : pi_plus_off, pi_minus);
}

std::array<IntervalResult, 4> run_interval(const Community& community, const Tariff& tariff,
                                           std::span<const double> b, long interval) {
  if (b.size() != community.size())
    throw std::invalid_argument("generation vector length must equal member count");

  IntervalResult passive{interval, Scheme::NemPassive, 0.0, 0.0, {}, {}, {}};
  IntervalResult bench{interval, Scheme::NemBenchmark, 0.0, 0.0, {}, {}, {}};
  IntervalResult pooled{interval, Scheme::NemCommunity, 0.0, 0.0, {}, {}, {}};
  IntervalResult dnem{interval, Scheme::DNem, 0.0, 0.0, {}, {}, {}};

  double pooled_utility = 0.0;
  for (std::size_t i = 0; i < community.size(); ++i) {
    const Member& m = community[i];
    passive.per_member.push_back(passive_schedule(m, tariff, b[i]));
    bench.per_member.push_back(benchmark_schedule(m, tariff, b[i]));
    passive.welfare += passive.per_member.back().surplus();
    passive.z_pcc += passive.per_member.back().net();
    bench.welfare += bench.per_member.back().surplus();
    bench.z_pcc += bench.per_member.back().net();
    pooled_utility += bench.per_member.back().utility();
  }
  // Pooled scheme: same consumption as the benchmark, one bill at the PCC.
  // Member-level allocation of that bill does not affect welfare.
  pooled.per_member = bench.per_member;
  pooled.z_pcc = bench.z_pcc;
  pooled.welfare = pooled_utility - nem_settlement(tariff, pooled.z_pcc);

  const auto price = community_price(community, tariff, b);
  dnem.gamma = price.gamma;
  dnem.zone = price.zone;
  for (std::size_t i = 0; i < community.size(); ++i) {
    dnem.per_member.push_back(optimal_member_schedule(community[i], price.gamma, b[i]));
    dnem.welfare += dnem.per_member.back().surplus();
    dnem.z_pcc += dnem.per_member.back().net();
  }
  return {std::move(passive), std::move(bench), std::move(pooled), std::move(dnem)};
}

TimeseriesReport run_timeseries(const Community& community, const TariffSchedule& tariff,
                                const GenerationSeries& generation) {
  if (generation.size() == 0) throw std::invalid_argument("no intervals in generation series");
  TimeseriesReport report;
  std::array<double, 4> totals{};
  for (std::size_t t = 0; t < generation.size(); ++t) {
    const long interval = generation.intervals[t];
    try {
      auto rows = run_interval(community, tariff(interval), generation.b[t], interval);
      for (std::size_t s = 0; s < rows.size(); ++s) {
        totals[s] += rows[s].welfare;
        report.rows.push_back(std::move(rows[s]));
      }
      ++report.evaluated_intervals;
    } catch (const std::exception& e) {
      report.skipped.push_back({interval, e.what()});
    }
  }
  const double passive = totals[0];
  for (std::size_t s = 0; s < kAllSchemes.size(); ++s) {
    const double avg = report.evaluated_intervals ? totals[s] / static_cast<double>(report.evaluated_intervals) : 0.0;
    const double gain = passive != 0.0 ? 100.0 * (totals[s] - passive) / std::abs(passive) : 0.0;
    report.summary[s] = {kAllSchemes[s], totals[s], avg, gain};
  }
  return report;
}

Community with_uniform_envelope(const Community& base, double width) {
  if (!(width >= 0.0)) throw std::invalid_argument("envelope width must be >= 0");
  std::vector<Member> members;
  members.reserve(base.size());
  for (const auto& m : base.members()) members.push_back(m.with_envelope(OperatingEnvelope(-width, width)));
  return Community(std::move(members));
}

SweepReport oe_sweep(const Community& base, const TariffSchedule& tariff,
                     const GenerationSeries& generation, std::span<const double> widths) {
  if (generation.size() == 0) throw std::invalid_argument("no intervals in generation series");
  SweepReport out;
  for (double width : widths) {
    const Community community = with_uniform_envelope(base, width);
    const auto report = run_timeseries(community, tariff, generation);
    if (!report.skipped.empty()) {
      out.skipped_widths.emplace_back(width, "interval " + std::to_string(report.skipped.front().interval) +
                                                 ": " + report.skipped.front().reason);
      continue;
    }
    SweepResult row{width, {}};
    for (std::size_t s = 0; s < kAllSchemes.size(); ++s) row.average_welfare[s] = report.summary[s].average_welfare;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace dnem
