#include "dnem/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dnem {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

SyntheticCase make_synthetic_case(const SyntheticOptions& o) {
  if (o.members < 1) throw std::invalid_argument("synthetic community needs at least one member");
  if (o.days < 1) throw std::invalid_argument("synthetic run needs at least one day");
  if (o.interval_minutes <= 0 || 1440 % o.interval_minutes != 0)
    throw std::invalid_argument("interval_minutes must divide a day");

  std::mt19937_64 rng(o.seed);
  const double hours = o.interval_minutes / 60.0;
  const int per_day = 1440 / o.interval_minutes;
  const double limit = o.envelope * hours;

  CommunityConfig config;
  config.interval_minutes = o.interval_minutes;
  config.tariff = TouTariff{o.pi_plus_on, o.pi_plus_off, {}, o.pi_minus, per_day};
  for (int slot = 0; slot < per_day; ++slot) {
    const double hour = slot * hours;
    if (hour >= 16.0 && hour < 21.0) config.tariff.on_peak_intervals.push_back(slot);
  }

  std::vector<double> pv_kw;
  for (int i = 0; i < o.members; ++i) {
    // Utility curvature scales with 1/hours so consumption scales with interval length.
    std::vector<Device> devices;
    devices.emplace_back(0.0, 4.0 * hours,
                         QuadraticUtility(uniform(rng, 0.6, 1.2), uniform(rng, 0.15, 0.4) / hours));
    devices.emplace_back(0.1 * hours, 3.0 * hours,
                         QuadraticUtility(uniform(rng, 0.4, 0.9), uniform(rng, 0.3, 0.8) / hours));
    config.members.emplace_back("h" + std::to_string(i + 1), std::move(devices), OperatingEnvelope(-limit, limit));
    pv_kw.push_back(i < o.members - o.members_without_pv ? uniform(rng, 2.0, 6.0) : 0.0);
  }

  GenerationSeries series;
  for (int day = 0; day < o.days; ++day) {
    const double clearness = uniform(rng, 0.5, 1.0);
    for (int slot = 0; slot < per_day; ++slot) {
      const double mid_hour = (slot + 0.5) * hours;
      const double sun = std::max(0.0, std::sin(std::numbers::pi * (mid_hour - 6.0) / 13.0));
      std::vector<double> b;
      for (int i = 0; i < o.members; ++i) b.push_back(pv_kw[i] * clearness * sun * hours);
      series.intervals.push_back(static_cast<long>(day) * per_day + slot);
      series.b.push_back(std::move(b));
    }
  }
  return {std::move(config), std::move(series)};
}

}  // namespace dnem
