#include <ostream>

#include <json.hpp>

#include "pcnfee/strategy.hpp"

namespace pcnfee {

std::string to_json(const StrategyRun& run) {
  nlohmann::ordered_json doc;
  doc["strategy"] = run.strategy;
  doc["fee_mode"] = run.fee_mode.name();
  doc["initial_reward"] = to_string(run.initial_reward);
  doc["truncated"] = run.truncated;
  auto& steps = doc["steps"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    const auto& step = run.steps[i];
    steps.push_back({{"step", i + 1},
                     {"peer", step.peer_id},
                     {"fee", step.fee},
                     {"base_fee", step.out_policy.base_fee},
                     {"fee_rate_ppm", step.out_policy.fee_rate_ppm},
                     {"total_reward", to_string(step.total_reward)},
                     {"evaluations", step.evaluations}});
  }
  return doc.dump(2);
}

void write_csv(std::ostream& out, const StrategyRun& run) {
  out << "step,peer,fee,reward\n";
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    const auto& step = run.steps[i];
    out << i + 1 << ',' << step.peer_id << ',' << step.fee << ',' << to_string(step.total_reward)
        << '\n';
  }
}

}  // namespace pcnfee
