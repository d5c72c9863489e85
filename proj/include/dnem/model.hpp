#pragma once

// Core vocabulary of the community market: tariffs, operating envelopes,
// devices with quadratic utilities, members, and per-interval schedules.
//
// Energies are kWh per netting interval and prices are currency per kWh.
// The interval length itself never enters the math.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnem {

// DSO net-metering tariff seen at a revenue meter: buy rate `pi_plus`
// for imports, sell rate `pi_minus` for exports.
class Tariff {
 public:
  Tariff(double pi_plus, double pi_minus);

  double pi_plus() const { return pi_plus_; }
  double pi_minus() const { return pi_minus_; }

  bool operator==(const Tariff&) const = default;

 private:
  double pi_plus_;
  double pi_minus_;
};

// Per-meter limits on net consumption, `z_min <= z <= z_max`.
class OperatingEnvelope {
 public:
  OperatingEnvelope(double z_min, double z_max);

  double z_min() const { return z_min_; }
  double z_max() const { return z_max_; }

  bool operator==(const OperatingEnvelope&) const = default;

 private:
  double z_min_;
  double z_max_;
};

// U(d) = alpha*d - beta*d^2/2 up to satiation at d = alpha/beta, flat after.
class QuadraticUtility {
 public:
  QuadraticUtility(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  double value(double d) const;
  double marginal(double d) const;
  // Consumption at which marginal utility equals `price`. Unclamped, so it
  // is negative above alpha and exceeds satiation for negative prices.
  double inverse_marginal(double price) const;

  bool operator==(const QuadraticUtility&) const = default;

 private:
  double alpha_;
  double beta_;
};

class Device {
 public:
  Device(double d_min, double d_max, QuadraticUtility utility);

  double d_min() const { return d_min_; }
  double d_max() const { return d_max_; }
  const QuadraticUtility& utility() const { return utility_; }

  bool operator==(const Device&) const = default;

 private:
  double d_min_;
  double d_max_;
  QuadraticUtility utility_;
};

class Member {
 public:
  Member(std::string id, std::vector<Device> devices, OperatingEnvelope envelope);

  const std::string& id() const { return id_; }
  std::span<const Device> devices() const { return devices_; }
  const OperatingEnvelope& envelope() const { return envelope_; }

  double min_total() const;
  double max_total() const;
  // Lowest price at which every device sits at d_max (may be negative).
  double price_floor() const;
  // Highest price at which some device still consumes above d_min.
  double price_ceiling() const;

  // Copy of this member with a different envelope.
  Member with_envelope(OperatingEnvelope envelope) const;

  bool operator==(const Member&) const = default;

 private:
  std::string id_;
  std::vector<Device> devices_;
  OperatingEnvelope envelope_;
};

class Community {
 public:
  explicit Community(std::vector<Member> members);

  std::span<const Member> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Member& operator[](std::size_t i) const { return members_[i]; }
  // Index of the member with `id`; throws std::out_of_range if absent.
  std::size_t index_of(const std::string& id) const;

 private:
  std::vector<Member> members_;
};

// A member's decision for one interval. The constructor enforces device
// bounds, the envelope, and z = sum(d) - (b - curtailment).
class Schedule {
 public:
  Schedule(const Member& member, std::vector<double> consumption, double net,
           double b, double payment, double curtailment = 0.0);

  std::span<const double> consumption() const { return consumption_; }
  double total_consumption() const;
  double net() const { return net_; }
  double generation() const { return b_; }
  // Generation spilled to respect the export envelope (passive baseline only).
  double curtailment() const { return curtailment_; }
  double utility() const { return utility_; }
  double payment() const { return payment_; }
  double surplus() const { return utility_ - payment_; }

 private:
  std::vector<double> consumption_;
  double net_;
  double b_;
  double curtailment_;
  double utility_;
  double payment_;
};

class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(std::string member_id, const std::string& what);
  const std::string& member_id() const { return member_id_; }

 private:
  std::string member_id_;
};

enum class EnvelopeSide { Import, Export };

struct FeasibilityViolation {
  EnvelopeSide side;
  double bound;     // z_max (import) or z_min (export)
  double required;  // min_total - b (import) or max_total - b (export)

  std::string describe() const;
};

inline constexpr double kScheduleTolerance = 1e-9;
inline constexpr double kEnvelopeTolerance = 1e-8;

double utility_value(const Device& device, double d);
// clamp(inverse_marginal(price), d_min, d_max)
double projected_demand(const Device& device, double price);
double member_aggregate_demand(const Member& member, double price);
std::vector<double> member_consumption_at(const Member& member, double price);
double member_utility(const Member& member, std::span<const double> consumption);

// PCC settlement under NEM: pi_plus*z when importing, pi_minus*z otherwise.
double nem_settlement(const Tariff& tariff, double z);

// Checks z_max >= min_total - b and z_min <= max_total - b.
// Throws std::domain_error for negative b.
std::optional<FeasibilityViolation> validate_feasibility(const Member& member, double b);
// Throws FeasibilityError when validate_feasibility reports a violation.
void require_feasible(const Member& member, double b);

}  // namespace dnem
