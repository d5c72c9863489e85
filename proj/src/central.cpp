#include "dnem/central.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnem/member_response.hpp"
#include "dnem/rootfind.hpp"

namespace dnem {

namespace {

double envelope_target(const Member& m, double total, double b) {
  return std::clamp(total, m.envelope().z_min() + b, m.envelope().z_max() + b);
}

double clamped_total(const Community& c, std::span<const double> b, double price) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += envelope_target(c[i], member_aggregate_demand(c[i], price), b[i]);
  return s;
}

void check_inputs(const Community& c, std::span<const double> b) {
  if (b.size() != c.size()) throw std::invalid_argument("generation vector length must equal member count");
  for (std::size_t i = 0; i < c.size(); ++i) require_feasible(c[i], b[i]);
}

}  // namespace

CentralThresholds central_thresholds(const Community& community, const Tariff& tariff,
                                     std::span<const double> b) {
  check_inputs(community, b);
  return {clamped_total(community, b, tariff.pi_plus()), clamped_total(community, b, tariff.pi_minus())};
}

CentralResult centralized_schedule(const Community& community, const Tariff& tariff,
                                   std::span<const double> b) {
  const auto th = central_thresholds(community, tariff, b);
  double b_total = 0.0;
  for (double x : b) b_total += x;

  Zone zone;
  double price;
  if (b_total < th.d_tilde_plus) {
    zone = Zone::Import;
    price = tariff.pi_plus();
  } else if (b_total > th.d_tilde_minus) {
    zone = Zone::Export;
    price = tariff.pi_minus();
  } else {
    zone = Zone::NetZero;
    const auto f = [&](double mu) { return clamped_total(community, b, mu); };
    price = solve_monotone_decreasing(
                f, {tariff.pi_minus(), tariff.pi_plus(), b_total, kFineToleranceX, kFineToleranceF})
                .root;
  }

  CentralResult result{{}, 0.0, th.d_tilde_plus, th.d_tilde_minus, zone, price};
  result.schedules.reserve(community.size());
  double utility = 0.0;
  for (std::size_t i = 0; i < community.size(); ++i) {
    const Member& m = community[i];
    const double unconstrained = member_aggregate_demand(m, price);
    const double target = envelope_target(m, unconstrained, b[i]);
    std::vector<double> d = target == unconstrained
                                ? member_consumption_at(m, price)
                                : consumption_for_total(m, target, std::min(price, m.price_floor()),
                                                        std::max(price, m.price_ceiling()),
                                                        kFineToleranceX, kFineToleranceF)
                                      .consumption;
    double total = 0.0;
    for (double x : d) total += x;
    const double z = total - b[i];
    result.schedules.emplace_back(m, std::move(d), z, b[i], price * z);
    utility += result.schedules.back().utility();
  }

  switch (zone) {
    case Zone::Import: result.welfare = utility - tariff.pi_plus() * (th.d_tilde_plus - b_total); break;
    case Zone::NetZero: result.welfare = utility; break;
    case Zone::Export: result.welfare = utility - tariff.pi_minus() * (th.d_tilde_minus - b_total); break;
  }
  return result;
}

double grid_oracle(const Community& community, const Tariff& tariff, std::span<const double> b,
                   double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
  if (community.size() > 3) throw std::invalid_argument("grid oracle supports at most 3 members");
  for (const auto& m : community.members())
    if (m.devices().size() != 1) throw std::invalid_argument("grid oracle supports one device per member");
  check_inputs(community, b);

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  constexpr double kSlack = 1e-12;

  // best[s] = max sum of utilities over members seen so far with grid-index sum s.
  // Every grid point is visited; grouping by index sum only reorders the search.
  std::vector<double> best{0.0};
  double floor_total = 0.0;
  double b_total = 0.0;
  for (std::size_t i = 0; i < community.size(); ++i) {
    const Member& m = community[i];
    const Device& dev = m.devices()[0];
    const auto points = static_cast<std::size_t>(std::floor((dev.d_max() - dev.d_min()) / step + 1e-9)) + 1;
    std::vector<double> u(points, kNegInf);
    bool any = false;
    for (std::size_t j = 0; j < points; ++j) {
      const double d = std::min(dev.d_min() + static_cast<double>(j) * step, dev.d_max());
      const double z = d - b[i];
      if (z < m.envelope().z_min() - kSlack || z > m.envelope().z_max() + kSlack) continue;
      u[j] = utility_value(dev, d);
      any = true;
    }
    if (!any) throw std::domain_error("no envelope-feasible grid point for member " + m.id());

    std::vector<double> next(best.size() + points - 1, kNegInf);
    for (std::size_t s = 0; s < best.size(); ++s) {
      if (best[s] == kNegInf) continue;
      for (std::size_t j = 0; j < points; ++j) {
        if (u[j] == kNegInf) continue;
        next[s + j] = std::max(next[s + j], best[s] + u[j]);
      }
    }
    best = std::move(next);
    floor_total += dev.d_min();
    b_total += b[i];
  }

  double welfare = kNegInf;
  for (std::size_t s = 0; s < best.size(); ++s) {
    if (best[s] == kNegInf) continue;
    const double z_total = floor_total + static_cast<double>(s) * step - b_total;
    welfare = std::max(welfare, best[s] - nem_settlement(tariff, z_total));
  }
  return welfare;
}

}  // namespace dnem
