#pragma once

// Operator side of the envelope-aware dynamic NEM: community thresholds,
// the interior clearing price, the announced price and the payment rule.
//
// Pricing works on MemberBid values, which expose a member's demand curve,
// device totals and envelope but no utility evaluation. The Community
// overloads only build bids and forward.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dnem/model.hpp"

namespace dnem {

enum class Zone { Import, NetZero, Export };

const char* to_string(Zone zone);

struct PriceDecision {
  double gamma;
  Zone zone;
  double sigma1;
  double sigma2;
};

struct ReferencePoints {
  double r_plus;   // aggregate demand at pi_plus
  double r_minus;  // aggregate demand at pi_minus
};

struct SigmaThresholds {
  double sigma1;
  double sigma2;
};

// What the operator learns from a member: its demand curve (projected
// aggregate demand as a function of price), device totals, and envelope.
struct MemberBid {
  std::string id;
  OperatingEnvelope envelope;
  double min_total;
  double max_total;
  std::function<double(double)> demand;
};

MemberBid make_bid(const Member& member);
std::vector<MemberBid> make_bids(const Community& community);

ReferencePoints member_reference_points(const Member& member, const Tariff& tariff);

// Throws FeasibilityError naming the first infeasible member.
SigmaThresholds sigma_thresholds(std::span<const MemberBid> bids, const Tariff& tariff,
                                 std::span<const double> b);
SigmaThresholds sigma_thresholds(const Community& community, const Tariff& tariff,
                                 std::span<const double> b);

// Root of sum_i clamp(R_i(mu), z_min_i + b_i, z_max_i + b_i) = b_N on
// [pi_minus, pi_plus]. Throws std::domain_error when b_N is outside
// [sigma1, sigma2].
double solve_pi_z(std::span<const MemberBid> bids, const Tariff& tariff, std::span<const double> b);
double solve_pi_z(const Community& community, const Tariff& tariff, std::span<const double> b);

PriceDecision community_price(std::span<const MemberBid> bids, const Tariff& tariff,
                              std::span<const double> b);
PriceDecision community_price(const Community& community, const Tariff& tariff,
                              std::span<const double> b);

double member_payment(double gamma, double z);

double total_generation(std::span<const double> b);

}  // namespace dnem
