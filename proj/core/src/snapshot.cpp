#include "pcnfee/snapshot.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace pcnfee {

namespace {

using nlohmann::json;

std::optional<Sat> non_negative(const json& value) {
  if (value.is_number_unsigned()) return value.get<Sat>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<Sat>(value.get<std::int64_t>());
  }
  return std::nullopt;
}

// nullopt if the policy object is malformed; throws nothing.
std::optional<ChannelPolicy> read_policy(const json& value) {
  if (!value.is_object()) return std::nullopt;
  const auto base = value.contains("base_fee") ? non_negative(value["base_fee"]) : std::nullopt;
  const auto rate =
      value.contains("fee_rate_ppm") ? non_negative(value["fee_rate_ppm"]) : std::nullopt;
  if (!base || !rate) return std::nullopt;
  return ChannelPolicy{*base, *rate};
}

}  // namespace

IngestResult build_graph(const Snapshot& snapshot, const ChannelPolicy& default_policy) {
  IngestResult result;
  for (const auto& id : snapshot.nodes) {
    if (result.graph.find(id)) {
      result.warnings.push_back("duplicate node id skipped: " + id);
      continue;
    }
    result.graph.add_node(id);
  }
  if (result.graph.node_count() == 0) throw SnapshotError("snapshot contains no nodes");

  for (std::size_t i = 0; i < snapshot.channels.size(); ++i) {
    const auto& channel = snapshot.channels[i];
    ++result.channels_read;
    const auto a = result.graph.find(channel.node1);
    const auto b = result.graph.find(channel.node2);
    if (!a || !b || *a == *b) {
      ++result.skipped_channels;
      result.warnings.push_back("channel " + std::to_string(i) +
                                " skipped: unknown or identical endpoints");
      continue;
    }
    for (const auto& policy : {channel.policy1, channel.policy2}) {
      if (!policy) {
        ++result.defaulted_policies;
        result.warnings.push_back("channel " + std::to_string(i) + ": missing policy defaulted");
      }
    }
    result.graph.add_edge({*a, *b, channel.policy1.value_or(default_policy), channel.capacity});
    result.graph.add_edge({*b, *a, channel.policy2.value_or(default_policy), channel.capacity});
  }
  return result;
}

IngestResult parse_snapshot(std::istream& in, const ChannelPolicy& default_policy) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SnapshotError(std::string("snapshot is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw SnapshotError("snapshot must be an object with a \"nodes\" array");
  }

  Snapshot snapshot;
  std::vector<std::string> malformed;
  for (const auto& node : doc["nodes"]) {
    if (node.is_object() && node.contains("id") && node["id"].is_string()) {
      snapshot.nodes.push_back(node["id"].get<std::string>());
    } else {
      malformed.push_back("node entry without a string id skipped");
    }
  }

  std::size_t bad_channels = 0;
  if (doc.contains("channels")) {
    if (!doc["channels"].is_array()) throw SnapshotError("\"channels\" must be an array");
    std::size_t position = 0;
    for (const auto& entry : doc["channels"]) {
      const auto here = position++;
      auto skip = [&](const std::string& why) {
        ++bad_channels;
        malformed.push_back("channel " + std::to_string(here) + " skipped: " + why);
      };
      if (!entry.is_object()) {
        skip("not an object");
        continue;
      }
      if (!entry.contains("node1") || !entry["node1"].is_string() || !entry.contains("node2") ||
          !entry["node2"].is_string()) {
        skip("missing endpoints");
        continue;
      }
      const auto capacity =
          entry.contains("capacity_sat") ? non_negative(entry["capacity_sat"]) : std::nullopt;
      if (!capacity) {
        skip("capacity_sat missing or negative");
        continue;
      }
      SnapshotChannel channel{entry["node1"].get<std::string>(), entry["node2"].get<std::string>(),
                              *capacity, std::nullopt, std::nullopt};
      bool broken_policy = false;
      for (auto [key, slot] : {std::pair{"policy1", &channel.policy1},
                               std::pair{"policy2", &channel.policy2}}) {
        if (!entry.contains(key) || entry[key].is_null()) continue;
        *slot = read_policy(entry[key]);
        if (!*slot) broken_policy = true;
      }
      if (broken_policy) {
        skip("malformed policy");
        continue;
      }
      snapshot.channels.push_back(std::move(channel));
    }
  }

  auto result = build_graph(snapshot, default_policy);
  result.channels_read += bad_channels;
  result.skipped_channels += bad_channels;
  result.warnings.insert(result.warnings.begin(), malformed.begin(), malformed.end());
  return result;
}

IngestResult ingest_snapshot(const std::filesystem::path& path,
                             const ChannelPolicy& default_policy) {
  std::ifstream in(path);
  if (!in) throw SnapshotError("cannot open snapshot: " + path.string());
  return parse_snapshot(in, default_policy);
}

void write_snapshot(std::ostream& out, const Snapshot& snapshot) {
  nlohmann::ordered_json doc;
  auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& id : snapshot.nodes) nodes.push_back({{"id", id}});
  auto& channels = doc["channels"] = nlohmann::ordered_json::array();
  for (const auto& channel : snapshot.channels) {
    nlohmann::ordered_json entry{{"node1", channel.node1},
                                 {"node2", channel.node2},
                                 {"capacity_sat", channel.capacity}};
    if (channel.policy1) {
      entry["policy1"] = {{"base_fee", channel.policy1->base_fee},
                          {"fee_rate_ppm", channel.policy1->fee_rate_ppm}};
    }
    if (channel.policy2) {
      entry["policy2"] = {{"base_fee", channel.policy2->base_fee},
                          {"fee_rate_ppm", channel.policy2->fee_rate_ppm}};
    }
    channels.push_back(std::move(entry));
  }
  out << doc.dump(1) << '\n';
}

}  // namespace pcnfee
