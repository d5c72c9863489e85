#pragma once

// Deterministic synthetic communities: two flexible loads per household
// (an HVAC-like load and an aggregate of other loads) and rooftop PV on
// most members, under an on/off-peak retail tariff.

#include <cstdint>

#include "dnem/io.hpp"

namespace dnem {

struct SyntheticOptions {
  int members = 20;
  int members_without_pv = 3;
  int days = 7;
  int interval_minutes = 60;
  double envelope = 3.0;  // symmetric kW limit
  double pi_plus_on = 0.40;
  double pi_plus_off = 0.20;
  double pi_minus = 0.05;
  std::uint64_t seed = 2018;
};

struct SyntheticCase {
  CommunityConfig config;
  GenerationSeries generation;
};

SyntheticCase make_synthetic_case(const SyntheticOptions& options);

}  // namespace dnem
