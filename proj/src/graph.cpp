#include "mobpat/graph.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace mobpat {

const GraphNode* MobilityGraph::find_node(std::string_view label) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), label,
                             [](const GraphNode& n, std::string_view l) { return n.label < l; });
  return it != nodes.end() && it->label == label ? &*it : nullptr;
}

const GraphEdge* MobilityGraph::find_edge(std::string_view from, std::string_view to) const {
  auto key = std::make_pair(from, to);
  auto it = std::lower_bound(edges.begin(), edges.end(), key, [](const GraphEdge& e, const auto& k) {
    return std::make_pair(std::string_view(e.from), std::string_view(e.to)) < k;
  });
  return it != edges.end() && it->from == from && it->to == to ? &*it : nullptr;
}

MobilityGraph build_graph(std::span<const LabeledVisit> visits,
                          std::span<const VisitSequence> sessions,
                          std::span<const SequentialPattern> patterns) {
  std::map<std::string, std::size_t, std::less<>> visit_counts;
  for (const auto& v : visits) ++visit_counts[v.label];

  std::map<std::pair<std::string, std::string>, std::size_t> transitions;
  for (const auto& s : sessions) {
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (!visit_counts.contains(s.items[i])) {
        throw InconsistencyError("session item '" + s.items[i] + "' has no visits");
      }
      if (i + 1 < s.items.size()) ++transitions[{s.items[i], s.items[i + 1]}];
    }
  }

  std::map<std::pair<std::string, std::string>, std::size_t> pair_support;
  for (const auto& p : patterns) {
    if (p.items.size() == 2) pair_support[{p.items[0], p.items[1]}] = p.support;
  }

  MobilityGraph g;
  g.nodes.reserve(visit_counts.size());
  for (auto& [label, count] : visit_counts) g.nodes.push_back({label, count});
  g.edges.reserve(transitions.size());
  for (auto& [key, count] : transitions) {
    GraphEdge e{key.first, key.second, count, std::nullopt};
    if (auto it = pair_support.find(key); it != pair_support.end()) e.pattern_support = it->second;
    g.edges.push_back(std::move(e));
  }
  return g;
}

nlohmann::ordered_json to_json(const MobilityGraph& graph) {
  auto nodes = nlohmann::ordered_json::array();
  for (const auto& n : graph.nodes) {
    nlohmann::ordered_json j;
    j["label"] = n.label;
    j["visit_count"] = n.visit_count;
    nodes.push_back(std::move(j));
  }
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : graph.edges) {
    nlohmann::ordered_json j;
    j["from"] = e.from;
    j["to"] = e.to;
    j["transition_count"] = e.transition_count;
    if (e.pattern_support) j["pattern_support"] = *e.pattern_support;
    edges.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  return out;
}

}  // namespace mobpat
