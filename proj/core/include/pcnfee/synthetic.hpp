#pragma once

#include <cstdint>

#include "pcnfee/graph.hpp"
#include "pcnfee/snapshot.hpp"

namespace pcnfee {

/// Preferential-attachment channel topology with Lightning-like capacities
/// and fee policies.
struct SyntheticOptions {
  std::size_t nodes = 200;
  /// Target channel count (each channel is two directed edges).
  std::size_t channels = 800;
  std::uint64_t seed = 1;
  /// Share of channel directions that use the default policy; the rest draw
  /// base fee and rate uniformly from [0, max_base_fee] and [0, max_fee_rate_ppm].
  double default_policy_fraction = 0.5;
  ChannelPolicy default_policy = kDefaultPolicy;
  Sat max_base_fee = 2000;
  std::uint64_t max_fee_rate_ppm = 2000;
  /// Capacities are log-uniform in [min_capacity, max_capacity].
  Sat min_capacity = 8'000;
  Sat max_capacity = 80'000'000;
};

Snapshot generate_synthetic(const SyntheticOptions& options);

}  // namespace pcnfee
