#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "pcnfee/experiment.hpp"

namespace pcnfee {

namespace {

using nlohmann::ordered_json;

std::string fixed6(const Rational& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value.get_d());
  return buffer;
}

ordered_json config_to_json(const ExperimentConfig& config) {
  ordered_json out{{"snapshot", config.snapshot.string()},
                   {"tx_amount", config.tx_amount},
                   {"n_channels", config.n_channels},
                   {"strategies", config.strategies},
                   {"fee_modes", config.fee_modes},
                   {"seed", config.seed},
                   {"f_max", config.f_max},
                   {"divisions", config.divisions},
                   {"default_policy",
                    {{"base_fee", config.default_policy.base_fee},
                     {"fee_rate_ppm", config.default_policy.fee_rate_ppm}}},
                   {"strategic_id", config.strategic_id},
                   {"seed_channels", config.seed_channels}};
  out["budget"] = config.budget ? ordered_json(*config.budget) : ordered_json(nullptr);
  return out;
}

ExperimentConfig config_from_json(const ordered_json& in) {
  ExperimentConfig config;
  config.snapshot = in.at("snapshot").get<std::string>();
  config.tx_amount = in.at("tx_amount").get<Sat>();
  config.n_channels = in.at("n_channels").get<std::size_t>();
  config.strategies = in.at("strategies").get<std::vector<std::string>>();
  config.fee_modes = in.at("fee_modes").get<std::vector<std::string>>();
  config.seed = in.at("seed").get<std::uint64_t>();
  config.f_max = in.at("f_max").get<Sat>();
  config.divisions = in.at("divisions").get<unsigned>();
  config.default_policy = {in.at("default_policy").at("base_fee").get<Sat>(),
                           in.at("default_policy").at("fee_rate_ppm").get<std::uint64_t>()};
  config.strategic_id = in.at("strategic_id").get<std::string>();
  config.seed_channels = in.at("seed_channels").get<bool>();
  if (!in.at("budget").is_null()) config.budget = in.at("budget").get<Sat>();
  return config;
}

}  // namespace

void write_report_csv(std::ostream& out, const RunReport& report) {
  out << "strategy,fee_mode,step,peer_id,fee,total_reward_numerator,total_reward_denominator,"
         "reward_float\n";
  for (const auto& series : report.series) {
    for (const auto& point : series.points) {
      out << series.strategy << ',' << series.fee_mode << ',' << point.step << ',' << point.peer
          << ',' << point.fee << ',' << point.total_reward.get_num().get_str() << ','
          << point.total_reward.get_den().get_str() << ',' << fixed6(point.total_reward) << '\n';
    }
  }
}

std::string report_to_json(const RunReport& report) {
  ordered_json doc;
  doc["config"] = config_to_json(report.config);
  doc["snapshot"] = {{"nodes", report.snapshot_nodes},
                     {"edges", report.snapshot_edges},
                     {"filtered_edges", report.filtered_edges}};
  doc["seeded_peers"] = report.seeded_peers;
  doc["initial_reward"] = to_string(report.initial_reward);
  auto& all = doc["series"] = ordered_json::array();
  for (const auto& series : report.series) {
    ordered_json entry{{"strategy", series.strategy},
                       {"fee_mode", series.fee_mode},
                       {"truncated", series.truncated},
                       {"error", series.error}};
    auto& points = entry["points"] = ordered_json::array();
    for (const auto& point : series.points) {
      points.push_back({{"step", point.step},
                        {"peer", point.peer},
                        {"fee", point.fee},
                        {"total_reward", to_string(point.total_reward)},
                        {"reward_float", point.total_reward.get_d()},
                        {"evaluations", point.evaluations},
                        {"seconds", point.seconds}});
    }
    all.push_back(std::move(entry));
  }
  return doc.dump(2);
}

RunReport report_from_json(const std::string& text) {
  const auto doc = ordered_json::parse(text);
  RunReport report;
  report.config = config_from_json(doc.at("config"));
  report.snapshot_nodes = doc.at("snapshot").at("nodes").get<std::size_t>();
  report.snapshot_edges = doc.at("snapshot").at("edges").get<std::size_t>();
  report.filtered_edges = doc.at("snapshot").at("filtered_edges").get<std::size_t>();
  report.seeded_peers = doc.at("seeded_peers").get<std::vector<std::string>>();
  report.initial_reward = rational_from_string(doc.at("initial_reward").get<std::string>());
  for (const auto& entry : doc.at("series")) {
    Series series;
    series.strategy = entry.at("strategy").get<std::string>();
    series.fee_mode = entry.at("fee_mode").get<std::string>();
    series.truncated = entry.at("truncated").get<bool>();
    series.error = entry.at("error").get<std::string>();
    for (const auto& p : entry.at("points")) {
      series.points.push_back({p.at("step").get<std::size_t>(), p.at("peer").get<std::string>(),
                               p.at("fee").get<Sat>(),
                               rational_from_string(p.at("total_reward").get<std::string>()),
                               p.at("evaluations").get<std::size_t>(),
                               p.at("seconds").get<double>()});
    }
    report.series.push_back(std::move(series));
  }
  return report;
}

std::filesystem::path emit_report(const RunReport& report, ReportFormat format,
                                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const auto path = out_dir / (format == ReportFormat::csv ? "report.csv" : "report.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path.string());
  if (format == ReportFormat::csv) {
    write_report_csv(out, report);
  } else {
    out << report_to_json(report) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing report: " + path.string());
  return path;
}

}  // namespace pcnfee
