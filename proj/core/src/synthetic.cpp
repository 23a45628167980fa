#include "pcnfee/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace pcnfee {

namespace {

std::string node_name(std::size_t i, std::size_t width) {
  std::string digits = std::to_string(i);
  return "n" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

}  // namespace

Snapshot generate_synthetic(const SyntheticOptions& options) {
  if (options.nodes < 2) throw std::invalid_argument("synthetic graph needs at least 2 nodes");
  if (options.min_capacity == 0 || options.min_capacity > options.max_capacity) {
    throw std::invalid_argument("capacity range must satisfy 0 < min <= max");
  }
  const std::size_t n = options.nodes;
  const std::size_t max_channels = n * (n - 1) / 2;
  const std::size_t target = std::min(options.channels, max_channels);
  const std::size_t per_node = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(static_cast<double>(target) / static_cast<double>(n))),
      1, n - 1);

  std::mt19937_64 rng(options.seed);
  Snapshot snapshot;
  const std::size_t width = std::to_string(n - 1).size();
  for (std::size_t i = 0; i < n; ++i) snapshot.nodes.push_back(node_name(i, width));

  std::set<std::pair<std::size_t, std::size_t>> links;
  std::vector<std::size_t> endpoints;  // each node once per incident channel
  auto link = [&](std::size_t a, std::size_t b) {
    if (a == b || links.size() >= target) return false;
    if (!links.emplace(std::min(a, b), std::max(a, b)).second) return false;
    endpoints.push_back(a);
    endpoints.push_back(b);
    return true;
  };

  const std::size_t core = std::min(n, per_node + 1);
  for (std::size_t a = 0; a < core; ++a) {
    for (std::size_t b = a + 1; b < core; ++b) link(a, b);
  }
  for (std::size_t v = core; v < n; ++v) {
    std::set<std::size_t> chosen;
    std::size_t attempts = 0;
    while (chosen.size() < std::min(per_node, v) && attempts++ < 64 * per_node) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      chosen.insert(endpoints.empty() ? 0 : endpoints[pick(rng)]);
    }
    for (std::size_t u : chosen) link(v, u);
  }
  // Top up to the requested channel count with degree-biased extra links.
  for (std::size_t attempts = 0; links.size() < target && attempts < 64 * target; ++attempts) {
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    link(endpoints[pick(rng)], endpoints[pick(rng)]);
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<Sat> base_fee(0, options.max_base_fee);
  std::uniform_int_distribution<std::uint64_t> fee_rate(0, options.max_fee_rate_ppm);
  const double log_lo = std::log(static_cast<double>(options.min_capacity));
  const double log_hi = std::log(static_cast<double>(options.max_capacity));
  auto policy = [&]() {
    if (unit(rng) < options.default_policy_fraction) return options.default_policy;
    const Sat base = base_fee(rng);
    return ChannelPolicy{base, fee_rate(rng)};
  };

  for (const auto& [a, b] : links) {
    const double log_capacity = log_lo + (log_hi - log_lo) * unit(rng);
    const auto capacity = static_cast<Sat>(std::llround(std::exp(log_capacity)));
    const auto p1 = policy();
    const auto p2 = policy();
    snapshot.channels.push_back({snapshot.nodes[a], snapshot.nodes[b],
                                 std::clamp(capacity, options.min_capacity, options.max_capacity),
                                 p1, p2});
  }
  return snapshot;
}

}  // namespace pcnfee
