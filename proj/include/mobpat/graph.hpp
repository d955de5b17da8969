#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mobpat/miner.hpp"
#include "mobpat/sessionize.hpp"
#include "mobpat/taxonomy.hpp"

namespace mobpat {

struct GraphNode {
  std::string label;
  std::size_t visit_count = 0;

  bool operator==(const GraphNode&) const = default;
};

/// Directed transition between consecutive items of a session. pattern_support
/// is the support of the mined length-2 pattern [from, to], when one was mined.
struct GraphEdge {
  std::string from;
  std::string to;
  std::size_t transition_count = 0;
  std::optional<std::size_t> pattern_support;

  bool operator==(const GraphEdge&) const = default;
};

/// Nodes sorted by label, edges by (from, to).
struct MobilityGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  const GraphNode* find_node(std::string_view label) const;
  const GraphEdge* find_edge(std::string_view from, std::string_view to) const;

  bool operator==(const MobilityGraph&) const = default;
};

class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

MobilityGraph build_graph(std::span<const LabeledVisit> visits,
                          std::span<const VisitSequence> sessions,
                          std::span<const SequentialPattern> patterns);

nlohmann::ordered_json to_json(const MobilityGraph& graph);

}  // namespace mobpat
