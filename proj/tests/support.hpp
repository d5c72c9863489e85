#pragma once

// Shared test fixtures: the two-member worked scenario, random feasible
// communities, and brute-force single-device oracles that share no code
// with the library's solvers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "dnem/model.hpp"

namespace dnem::testing {

inline Member single_device_member(std::string id, double alpha, double beta, double d_min, double d_max,
                                   double z_min, double z_max) {
  return Member(std::move(id), {Device(d_min, d_max, QuadraticUtility(alpha, beta))},
                OperatingEnvelope(z_min, z_max));
}

// alpha = 2 and 3, beta = 1, bounds [0, 5], envelopes +-10.
inline Community worked_community() {
  return Community({single_device_member("m1", 2.0, 1.0, 0.0, 5.0, -10.0, 10.0),
                    single_device_member("m2", 3.0, 1.0, 0.0, 5.0, -10.0, 10.0)});
}

inline Tariff worked_tariff() { return Tariff(0.5, 0.1); }

inline const std::vector<double> kWorkedB = {0.0, 4.4};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

 private:
  std::mt19937_64 gen_;
};

struct RandomOptions {
  int min_members = 1;
  int max_members = 10;
  int min_devices = 1;
  int max_devices = 3;
};

inline Member random_member(Rng& rng, const std::string& id, int devices) {
  std::vector<Device> ds;
  for (int k = 0; k < devices; ++k) {
    const double d_min = rng.coin(0.3) ? 0.0 : rng.uniform(0.0, 0.5);
    const double d_max = d_min + rng.uniform(0.5, 4.0);
    ds.emplace_back(d_min, d_max, QuadraticUtility(rng.uniform(0.3, 3.0), rng.uniform(0.4, 2.0)));
  }
  // Occasionally zero-width on one side to exercise degenerate envelopes.
  const double z_max = rng.coin(0.1) ? 0.0 : rng.uniform(0.05, 4.0);
  const double z_min = rng.coin(0.1) ? 0.0 : -rng.uniform(0.05, 4.0);
  return Member(id, std::move(ds), OperatingEnvelope(z_min, z_max));
}

// Feasible generation range from the envelope conditions, intersected with b >= 0.
inline std::pair<double, double> feasible_b_range(const Member& m) {
  double lo = std::max(0.0, m.min_total() - m.envelope().z_max());
  double hi = m.max_total() - m.envelope().z_min();
  // Rounding can put the computed edge a hair outside; walk it back in.
  while (validate_feasibility(m, lo)) lo = std::nextafter(lo, hi);
  while (validate_feasibility(m, hi)) hi = std::nextafter(hi, lo);
  return {lo, hi};
}

inline double random_feasible_b(Rng& rng, const Member& m) {
  auto [lo, hi] = feasible_b_range(m);
  if (rng.coin(0.1)) return rng.coin() ? lo : hi;
  return rng.uniform(lo, hi);
}

struct RandomInstance {
  Community community;
  Tariff tariff;
  std::vector<double> b;
};

inline RandomInstance random_instance(Rng& rng, const RandomOptions& o = {}) {
  const int n = rng.integer(o.min_members, o.max_members);
  std::vector<Member> members;
  for (int i = 0; i < n; ++i)
    members.push_back(random_member(rng, "m" + std::to_string(i), rng.integer(o.min_devices, o.max_devices)));
  const double pi_minus = rng.uniform(0.0, 0.3);
  const double pi_plus = rng.coin(0.05) ? pi_minus : pi_minus + rng.uniform(0.05, 0.8);
  Community c(std::move(members));
  std::vector<double> b;
  for (const auto& m : c.members()) b.push_back(random_feasible_b(rng, m));
  return {std::move(c), Tariff(pi_plus, pi_minus), std::move(b)};
}

// Instance small enough for the grid oracle, with at least one envelope-feasible
// grid point per member (narrow envelopes can fall between grid points).
inline RandomInstance random_grid_instance(Rng& rng, double step, int max_members = 3) {
  while (true) {
    auto inst = random_instance(rng, {1, max_members, 1, 1});
    bool ok = true;
    for (std::size_t i = 0; i < inst.community.size() && ok; ++i) {
      const Member& m = inst.community[i];
      const Device& dev = m.devices()[0];
      const double lo = std::max(dev.d_min(), m.envelope().z_min() + inst.b[i]);
      const double hi = std::min(dev.d_max(), m.envelope().z_max() + inst.b[i]);
      const double j = std::ceil((lo - dev.d_min()) / step - 1e-9);
      ok = dev.d_min() + j * step <= hi + 1e-12 && dev.d_min() + j * step <= dev.d_max();
    }
    if (ok) return inst;
  }
}

// Direct transcription of the quadratic utility, independent of QuadraticUtility.
inline double quad_utility(double alpha, double beta, double d) {
  return d <= alpha / beta ? alpha * d - 0.5 * beta * d * d : alpha * alpha / (2.0 * beta);
}

struct GridBest {
  double d;
  double value;
};

// Exhaustive search over d in [d_min, d_max] (step) with the envelope on z = d - b,
// maximizing U(d) - payment(z). Single-device members only.
inline GridBest grid_single_device(const Member& m, double b, const std::function<double(double)>& payment,
                                   double step = 1e-4) {
  const Device& dev = m.devices()[0];
  GridBest best{std::numeric_limits<double>::quiet_NaN(), -std::numeric_limits<double>::infinity()};
  const auto n = static_cast<long>(std::floor((dev.d_max() - dev.d_min()) / step + 1e-9));
  auto consider = [&](double d) {
    const double z = d - b;
    if (z < m.envelope().z_min() - 1e-12 || z > m.envelope().z_max() + 1e-12) return;
    const double v = quad_utility(dev.utility().alpha(), dev.utility().beta(), d) - payment(z);
    if (v > best.value) best = {d, v};
  };
  for (long j = 0; j <= n; ++j) consider(dev.d_min() + static_cast<double>(j) * step);
  // Kinks of the objective (bounds, envelope edges, z = 0) are often the optimum;
  // include them so the grid error stays O(step^2) there.
  consider(dev.d_max());
  consider(std::clamp(b, dev.d_min(), dev.d_max()));
  consider(std::clamp(m.envelope().z_max() + b, dev.d_min(), dev.d_max()));
  consider(std::clamp(m.envelope().z_min() + b, dev.d_min(), dev.d_max()));
  return best;
}

inline std::function<double(double)> linear_payment(double gamma) {
  return [gamma](double z) { return gamma * z; };
}

inline std::function<double(double)> nem_payment(double pi_plus, double pi_minus) {
  return [=](double z) { return z >= 0.0 ? pi_plus * z : pi_minus * z; };
}

}  // namespace dnem::testing
