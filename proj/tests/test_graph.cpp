#include "psch/random_instances.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace psch;
using psch::testing::make_graph;

namespace {

GraphData line_data() {
  GraphData d;
  d.p = 2.0;
  d.vertices = {{"a", 1.0, 0.0}, {"b", 2.0, 0.5}, {"c", 1.0, 0.0}};
  d.edges = {{"a", "b", 1.0}, {"b", "c", 3.0}};
  return d;
}

bool has_kind(const ValidationReport& r, const std::string& kind) {
  for (const auto& v : r.violations)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("edge table is symmetric and sorted") {
  EdgeTableD t;
  t.set(3, 1, 2.0);
  t.set(0, 2, 1.0);
  t.add(1, 3, 0.5);
  CHECK(t(1, 3) == 2.5);
  CHECK(t(3, 1) == 2.5);
  CHECK(t(0, 1) == 0.0);
  CHECK(t(2, 2) == 0.0);
  CHECK_FALSE(t.contains(0, 1));
  REQUIRE(t.size() == 2);
  CHECK(t.entries()[0].u == 0);
  CHECK(t.entries()[1].u == 1);
  CHECK_THROWS_AS(t.set(1, 1, 1.0), InputError);
}

TEST_CASE("valid data builds a connected graph") {
  const auto rep = validate(line_data());
  CHECK(rep.valid());
  CHECK(rep.connected);
  REQUIRE(rep.row_sums.size() == 3);
  CHECK(rep.row_sums[1] == 4.0);
  const Graph g = build_graph(line_data());
  CHECK(g.size() == 3);
  CHECK(g.index_of("c") == 2);
  CHECK(g.degree(1) == 4.0);
  CHECK_THROWS_AS(g.index_of("z"), InputError);
}

TEST_CASE("validation lists every defect") {
  SUBCASE("asymmetry") {
    GraphData d = line_data();
    d.edges.push_back({"b", "a", 2.0});
    const auto rep = validate(d);
    CHECK(has_kind(rep, "asymmetry"));
    CHECK_THROWS_AS(build_graph(d), InputError);
  }
  SUBCASE("diagonal") {
    GraphData d = line_data();
    d.edges.push_back({"a", "a", 1.0});
    CHECK(has_kind(validate(d), "nonzero_diagonal"));
  }
  SUBCASE("measure") {
    GraphData d = line_data();
    d.vertices[0].m = 0.0;
    CHECK(has_kind(validate(d), "nonpositive_measure"));
    CHECK_THROWS_AS(build_graph(d), InputError);
  }
  SUBCASE("negative weight") {
    GraphData d = line_data();
    d.edges[0].b = -1.0;
    CHECK(has_kind(validate(d), "negative_weight"));
  }
  SUBCASE("unknown vertex") {
    GraphData d = line_data();
    d.edges.push_back({"a", "q", 1.0});
    CHECK(has_kind(validate(d), "unknown_vertex"));
  }
  SUBCASE("duplicate id") {
    GraphData d = line_data();
    d.vertices.push_back({"a", 1.0, 0.0});
    CHECK(has_kind(validate(d), "duplicate_id"));
  }
  SUBCASE("exponent") {
    GraphData d = line_data();
    d.p = 1.0;
    CHECK(has_kind(validate(d), "invalid_exponent"));
  }
  SUBCASE("disconnected is reported but buildable") {
    GraphData d = line_data();
    d.edges.pop_back();
    const auto rep = validate(d);
    CHECK(has_kind(rep, "disconnected"));
    CHECK(rep.components.size() == 2);
    const Graph g = build_graph(d);
    CHECK_FALSE(g.connected());
    CHECK(g.components().size() == 2);
  }
}

TEST_CASE("restrict folds leaving edges into the potential") {
  const Graph g = make_graph({1, 1, 1, 1, 1}, {0, 0, 0.25, 0, 0}, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 4, 4}}, 2.0);
  const Graph r = restrict(g, {3, 1, 2});
  REQUIRE(r.size() == 3);
  CHECK(r.id(0) == "1");
  CHECK(r.id(2) == "3");
  CHECK(r.potential()(0) == 1.0);
  CHECK(r.potential()(1) == 0.25);
  CHECK(r.potential()(2) == 4.0);
  CHECK(r.weights()(0, 1) == 2.0);
  CHECK(r.weights()(1, 2) == 3.0);
  CHECK_THROWS_AS(restrict(g, {}), InputError);
}

TEST_CASE("family generators") {
  SUBCASE("killed path") {
    const Graph g = path_graph(3, true, true, 2.0);
    CHECK(g.size() == 3);
    CHECK(g.id(0) == "0");
    CHECK(g.potential()(0) == 1.0);
    CHECK(g.potential()(1) == 0.0);
    CHECK(g.potential()(2) == 1.0);
    CHECK(g.weights().size() == 2);
  }
  SUBCASE("tree with killed leaves") {
    const Graph g = tree_graph(2, 3, true, 2.0);
    CHECK(g.size() == 15);
    CHECK(g.degree(0) == 2.0);
    CHECK(g.degree(1) == 3.0);
    for (Index i = 7; i < 15; ++i) CHECK(g.potential()(i) == 2.0);
    CHECK(g.potential()(0) == 0.0);
  }
  SUBCASE("Dirichlet square") {
    const Graph g = generate({LatticeFamily{2, 3, true}, Profile{}, 2.0});
    CHECK(g.size() == 9);
    CHECK(g.weights().size() == 12);
    CHECK(g.potential()(g.index_of("0,0")) == 2.0);
    CHECK(g.potential()(g.index_of("0,1")) == 1.0);
    CHECK(g.potential()(g.index_of("1,1")) == 0.0);
  }
  SUBCASE("cycle and complete graph") {
    const Graph cyc = generate({CycleFamily{5}, Profile{}, 3.0});
    for (Index i = 0; i < 5; ++i) CHECK(cyc.degree(i) == 2.0);
    CHECK(cyc.p() == 3.0);
    CHECK(complete_graph(4, 2.0).weights().size() == 6);
    CHECK_THROWS_AS(generate({CycleFamily{2}, Profile{}, 2.0}), InputError);
  }
  SUBCASE("profiles") {
    Profile prof;
    prof.b = 2.0;
    prof.m_values = Eigen::VectorXd::LinSpaced(3, 1.0, 3.0);
    const Graph g = generate({PathFamily{3, true, false}, prof, 2.0});
    CHECK(g.measure()(2) == 3.0);
    CHECK(g.potential()(0) == 2.0);
  }
}

TEST_CASE("combinatorial distance") {
  const Graph g = path_graph(5, false, false, 2.0);
  CHECK(combinatorial_distance(g, 0, 4) == 4);
  CHECK(combinatorial_distance(g, 2, 2) == 0);
  const Graph h = make_graph({1, 1, 1}, {0, 0, 0}, {{0, 1, 1}}, 2.0);
  CHECK_THROWS_AS(combinatorial_distance(h, 0, 2), PreconditionError);
}

TEST_CASE("connected subsets are enumerated once each") {
  auto collect = [](const Graph& g, int cap) {
    std::set<VertexSet> seen;
    long visits = 0;
    for_each_connected_subset(adjacency_lists(g.size(), g.weights()), cap, [&](const VertexSet& s) {
      ++visits;
      CHECK(std::is_sorted(s.begin(), s.end()));
      seen.insert(s);
    });
    CHECK(visits == static_cast<long>(seen.size()));
    return visits;
  };
  // Intervals of a path of 4: 4 + 3 + 2 + 1.
  CHECK(collect(path_graph(4, false, false, 2.0), 4) == 10);
  CHECK(collect(path_graph(4, false, false, 2.0), 2) == 7);
  // Every nonempty subset of K4.
  CHECK(collect(complete_graph(4, 2.0), 4) == 15);
  // Cycle of 5: 5 singletons, 5 pairs, 5 triples, 5 quadruples, the whole cycle.
  CHECK(collect(generate({CycleFamily{5}, Profile{}, 2.0}), 5) == 21);
}

TEST_CASE("exhaustion plans") {
  const Graph g = path_graph(5, false, false, 2.0);
  const auto balls = ExhaustionPlan::balls(g, 2);
  REQUIRE(balls.size() == 3);
  CHECK(balls[0] == VertexSet{2});
  CHECK(balls[1] == VertexSet{1, 2, 3});
  CHECK(balls.exhausts(5));
  const auto pre = ExhaustionPlan::prefixes(5, {1, 3});
  CHECK(pre[1] == VertexSet{0, 1, 2});
  CHECK_FALSE(pre.exhausts(5));
  CHECK_THROWS_AS(ExhaustionPlan({{0, 1}, {0, 1}}), InputError);
  CHECK_THROWS_AS(ExhaustionPlan({{0, 1}, {2, 3}}), InputError);
}

TEST_CASE("random graphs round-trip through their data") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(k), k % 2 ? 2.0 : 3.0);
    const Graph& g = inst.graph;
    CHECK(g.connected());
    CHECK(validate(g).valid());
    CHECK(build_graph(to_data(g)) == g);
    CHECK((inst.supersolution.array() > 0).all());
  }
}
