#include "mobpat/pipeline.hpp"

#include <algorithm>

namespace mobpat {

UserModel build_user_model(UserHistory history, const LabelTaxonomy& taxonomy,
                           SessionOptions options) {
  UserModel m;
  m.visits = relabel(history, taxonomy);
  m.sessions = sessionize(m.visits, options);
  m.history = std::move(history);
  return m;
}

std::string dump_json(const nlohmann::ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::vector<SequentialPattern> mine_user(const UserModel& model, const MiningConfig& config) {
  return mine(std::span<const VisitSequence>(model.sessions), config);
}

MobilityGraph graph_for_user(const UserModel& model, const MiningConfig& config) {
  MiningConfig pairs = config;
  pairs.max_pattern_length = std::min<std::size_t>(config.max_pattern_length, 2);
  auto patterns = mine_user(model, pairs);
  return build_graph(model.visits, model.sessions, patterns);
}

std::string patterns_json(const UserModel& model, const MiningConfig& config) {
  auto patterns = mine_user(model, config);
  return dump_json(to_json(std::span<const SequentialPattern>(patterns)));
}

std::string graph_json(const UserModel& model, const MiningConfig& config) {
  return dump_json(to_json(graph_for_user(model, config)));
}

}  // namespace mobpat
