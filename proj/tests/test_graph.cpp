#include <doctest.h>

#include "mobpat/graph.hpp"
#include "mobpat/pipeline.hpp"

using namespace mobpat;
using namespace std::chrono;

namespace {

std::vector<LabeledVisit> visits_of(std::initializer_list<std::pair<const char*, int>> items) {
  // (label, day index)
  std::vector<LabeledVisit> out;
  int minute = 0;
  for (auto [label, d] : items) {
    out.push_back({"u", label, sys_seconds{sys_days{2012y / April / 3} + days{d}} + minutes{600 + minute++}, 0, "v"});
  }
  return out;
}

}  // namespace

TEST_CASE("single session A,B,A") {
  auto visits = visits_of({{"A", 0}, {"B", 0}, {"A", 0}});
  auto sessions = sessionize(visits);
  MobilityGraph g = build_graph(visits, sessions, {});
  CHECK(g.nodes == std::vector<GraphNode>{{"A", 2}, {"B", 1}});
  CHECK(g.edges == std::vector<GraphEdge>{{"A", "B", 1, std::nullopt}, {"B", "A", 1, std::nullopt}});
  CHECK(dump_json(to_json(g)) ==
        R"({"nodes":[{"label":"A","visit_count":2},{"label":"B","visit_count":1}],)"
        R"("edges":[{"from":"A","to":"B","transition_count":1},{"from":"B","to":"A","transition_count":1}]})");
}

TEST_CASE("empty input gives an empty graph") {
  MobilityGraph g = build_graph({}, {}, {});
  CHECK(g.nodes.empty());
  CHECK(g.edges.empty());
  CHECK(dump_json(to_json(g)) == R"({"nodes":[],"edges":[]})");
}

TEST_CASE("transitions add up across days and carry pattern support") {
  auto visits = visits_of({{"A", 0}, {"B", 0}, {"A", 1}, {"B", 1}});
  auto sessions = sessionize(visits);
  std::vector<SequentialPattern> patterns = {{{"A"}, 2}, {{"B"}, 2}, {{"A", "B"}, 2}};
  MobilityGraph g = build_graph(visits, sessions, patterns);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].transition_count == 2);
  CHECK(g.edges[0].pattern_support == 2);
  CHECK(g.find_edge("A", "B") == &g.edges[0]);
  CHECK(g.find_edge("B", "A") == nullptr);
  CHECK(g.find_node("A")->visit_count == 2);
  CHECK(g.find_node("C") == nullptr);
}

TEST_CASE("self loops only without collapsing") {
  auto visits = visits_of({{"A", 0}, {"A", 0}, {"B", 0}});
  CHECK(build_graph(visits, sessionize(visits), {}).find_edge("A", "A") == nullptr);
  CHECK(build_graph(visits, sessionize(visits, {false}), {}).find_edge("A", "A")->transition_count == 1);
}

TEST_CASE("sessions referencing unknown labels are rejected") {
  auto visits = visits_of({{"A", 0}});
  VisitSequence bogus{"u", 2012y / April / 3, {"A", "Z"}};
  std::vector<VisitSequence> sessions{bogus};
  CHECK_THROWS_AS(build_graph(visits, sessions, {}), InconsistencyError);
}
