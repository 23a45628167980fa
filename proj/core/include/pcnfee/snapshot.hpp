#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcnfee/graph.hpp"

namespace pcnfee {

/// Normalized network snapshot:
///
///   {"nodes": [{"id": "..."}],
///    "channels": [{"node1": "...", "node2": "...", "capacity_sat": 123,
///                  "policy1": {"base_fee": 1000, "fee_rate_ppm": 1},
///                  "policy2": {...}}]}
///
/// policy1 prices node1 -> node2, policy2 the reverse. A missing policy
/// falls back to the default policy.
struct SnapshotChannel {
  std::string node1;
  std::string node2;
  Sat capacity = 0;
  std::optional<ChannelPolicy> policy1;
  std::optional<ChannelPolicy> policy2;
};

struct Snapshot {
  std::vector<std::string> nodes;
  std::vector<SnapshotChannel> channels;
};

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestResult {
  PcnGraph graph;
  std::size_t channels_read = 0;
  std::size_t skipped_channels = 0;
  /// Channel directions that had no policy and got the default.
  std::size_t defaulted_policies = 0;
  std::vector<std::string> warnings;
};

/// Parses and validates a snapshot. Malformed channels are skipped with a
/// warning; unparseable input or an empty node list throws SnapshotError.
IngestResult parse_snapshot(std::istream& in, const ChannelPolicy& default_policy = kDefaultPolicy);
IngestResult ingest_snapshot(const std::filesystem::path& path,
                             const ChannelPolicy& default_policy = kDefaultPolicy);

IngestResult build_graph(const Snapshot& snapshot,
                         const ChannelPolicy& default_policy = kDefaultPolicy);

void write_snapshot(std::ostream& out, const Snapshot& snapshot);

}  // namespace pcnfee
