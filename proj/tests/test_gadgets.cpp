#include <gtest/gtest.h>

#include "fanspec/gadgets.hpp"
#include "fanspec/oracle.hpp"
#include "fanspec/problems.hpp"

using namespace fanspec;

namespace {

Circuit or_circuit() {  // x1 OR x2
  return {{{GateType::Input, {}}, {GateType::Input, {}}, {GateType::Or, {0, 1}}, {GateType::Output, {2}}}};
}
Circuit and_circuit() {
  return {{{GateType::Input, {}}, {GateType::Input, {}}, {GateType::And, {0, 1}}, {GateType::Output, {2}}}};
}
Circuit identity_circuit() { return {{{GateType::Input, {}}, {GateType::Output, {0}}}}; }
Circuit contradiction() {  // x AND NOT x
  return {{{GateType::Input, {}}, {GateType::Not, {0}}, {GateType::And, {0, 1}}, {GateType::Output, {2}}}};
}

Configuration run_to_fixed_point(const Network& net, Configuration x) {
  for (std::size_t s = 0; s <= net.n() * net.alphabet().height(); ++s) {
    Configuration y = step_deterministic(net, x);
    if (y == x) break;
    x = std::move(y);
  }
  return x;
}

}  // namespace

TEST(Bramble, PathExample) {
  const Graph p3 = Graph::path(3);
  EXPECT_TRUE(validate_bramble(p3, {{{0, 1}, {1, 2}}}).ok());
  const auto rep = validate_bramble(p3, {{{0}, {2}}});
  ASSERT_EQ(rep.issues.size(), 1u);
  EXPECT_EQ(rep.issues[0].kind, BrambleIssue::Kind::Disjoint);
}

TEST(Bramble, ReportsEveryAxiom) {
  const Graph p4 = Graph::path(4);
  const auto rep = validate_bramble(p4, {{{0, 2}, {0, 1}, {0, 3}}});
  bool disconnected = false, overloaded = false;
  for (const auto& i : rep.issues) {
    disconnected |= i.kind == BrambleIssue::Kind::Disconnected;
    overloaded |= i.kind == BrambleIssue::Kind::Overloaded && i.vertex == 0;
  }
  EXPECT_TRUE(disconnected);
  EXPECT_TRUE(overloaded);
}

TEST(Bramble, GridCrosses) {
  for (std::size_t m = 2; m <= 6; ++m) {
    const Bramble b = grid_bramble(m);
    EXPECT_EQ(b.size(), m);
    EXPECT_TRUE(validate_bramble(Graph::grid(m, m), b).ok()) << m;
  }
  EXPECT_THROW(grid_bramble(1), ArgumentError);
}

TEST(Routing, SingleEdgeOnPath) {
  const auto r = route(Graph::path(3), {{{0, 1}, {1, 2}}}, 2, {{0, 1}});
  EXPECT_EQ(r.mu, (std::vector<Vertex>{0, 2}));
  ASSERT_EQ(r.paths.size(), 1u);
  EXPECT_EQ(r.paths[0], (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(r.load, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Routing, NoEdges) {
  const auto r = route(Graph::grid(3, 3), grid_bramble(3), 3, {});
  EXPECT_EQ(r.mu, (std::vector<Vertex>{0, 4, 8}));
  EXPECT_TRUE(r.paths.empty());
}

TEST(Routing, RandomLoadBound) {
  Rng rng(11);
  for (int it = 0; it < 100; ++it) {
    const std::size_t m = 3 + draw(rng, 6);
    const std::size_t nv = 2 + draw(rng, m - 1);
    const auto arcs = random_digraph(nv, 2, draw(rng, 2 * nv + 1), rng);
    Digraph d(arcs.begin(), arcs.end());
    const auto r = route(Graph::grid(m, m), grid_bramble(m), nv, d);
    const std::size_t delta = std::max<std::size_t>(1, digraph_degree(nv, d));
    std::vector<std::size_t> hosted(m * m, 0);
    for (Vertex v : r.mu) ++hosted[v];
    for (std::size_t v = 0; v < m * m; ++v) {
      EXPECT_LE(r.load[v], 4 * delta);
      EXPECT_LE(hosted[v], 2u);
    }
    for (std::size_t e = 0; e < d.size(); ++e) {
      EXPECT_EQ(r.paths[e].front(), r.mu[d[e].first]);
      EXPECT_EQ(r.paths[e].back(), r.mu[d[e].second]);
    }
  }
}

TEST(SquareColoring, Examples) {
  const auto p3 = square_coloring(Graph::path(3));
  EXPECT_EQ(*std::max_element(p3.begin(), p3.end()) + 1, 3u);
  EXPECT_EQ(square_coloring(Graph::path(1)), (std::vector<std::uint32_t>{0}));
  const Graph c4 = Graph::cycle(4);
  const auto col = square_coloring(c4);
  EXPECT_TRUE(is_square_coloring(c4, col));
  EXPECT_LE(*std::max_element(col.begin(), col.end()) + 1, 5u);
  const Graph grid = Graph::grid(5, 5);
  const auto gc = square_coloring(grid);
  EXPECT_TRUE(is_square_coloring(grid, gc));
  EXPECT_LE(*std::max_element(gc.begin(), gc.end()) + 1, 17u);
}

TEST(Circuit, ValidationAndEvaluation) {
  EXPECT_NO_THROW(validate_circuit(contradiction()));
  EXPECT_THROW(validate_circuit(contradiction(), true), ValidationError);
  Circuit bad = and_circuit();
  bad.gates[2].inputs = {0};
  EXPECT_THROW(validate_circuit(bad), ValidationError);
  Circuit cyc = identity_circuit();
  cyc.gates[1].inputs = {1};
  EXPECT_THROW(validate_circuit(cyc), ValidationError);
  EXPECT_FALSE(satisfying_assignment(contradiction()));
  EXPECT_TRUE(satisfying_assignment(or_circuit()));
  EXPECT_EQ(and_circuit().evaluate({true, true})[3], true);
  EXPECT_EQ(and_circuit().evaluate({true, false})[3], false);
}

TEST(Circuit, RandomGeneratorsAreValid) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    EXPECT_NO_THROW(validate_circuit(random_sat_circuit(1 + draw(rng, 4), draw(rng, 8), rng)));
    EXPECT_NO_THROW(validate_circuit(random_monotone_circuit(2 + draw(rng, 2), 8, rng), true, true));
  }
}

TEST(NilpotencyGadget, SatisfiableHasCleanFixedPoint) {
  const Circuit c = identity_circuit();
  const auto host = grid_host_for(c);
  const auto gad = sat_nilpotency_gadget(c, host.graph, host.bramble);
  EXPECT_TRUE(validate_network(gad.net, 2048).ok());
  const Configuration fp = nilpotency_configuration(gad, {true});
  EXPECT_EQ(step_deterministic(gad.net, fp), fp);
  const Configuration bottom(gad.net.n(), gad.bottom);
  EXPECT_EQ(step_deterministic(gad.net, bottom), bottom);
  const Configuration zero = nilpotency_configuration(gad, {false});
  EXPECT_NE(step_deterministic(gad.net, zero), zero);
}

TEST(NilpotencyGadget, ContradictionCollapses) {
  const Circuit c = contradiction();
  const auto host = grid_host_for(c);
  const auto gad = sat_nilpotency_gadget(c, host.graph, host.bramble);
  for (bool x : {false, true}) {
    const Configuration cfg = nilpotency_configuration(gad, {x});
    EXPECT_NE(step_deterministic(gad.net, cfg), cfg);
  }
  Rng rng(3);
  const Configuration bottom(gad.net.n(), gad.bottom);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(run_to_fixed_point(gad.net, random_configuration(gad.net, rng)), bottom);
}

TEST(PredecessorGadget, OrHasPredecessor) {
  const Circuit c = or_circuit();
  const auto host = grid_host_for(c);
  const auto gad = circuit_predecessor_gadget(c, host.graph, host.bramble);
  EXPECT_TRUE(validate_network(gad.g.net, 2048).ok());
  EXPECT_TRUE(gad.g.net.set_rule().has_value());
  EXPECT_EQ(step_deterministic(gad.g.net, predecessor_configuration(gad, {true, false})), gad.target);
  EXPECT_NE(step_deterministic(gad.g.net, predecessor_configuration(gad, {false, false})), gad.target);
}

TEST(PredecessorGadget, ContradictionHasNone) {
  const Circuit c = contradiction();
  const auto host = grid_host_for(c);
  const auto gad = circuit_predecessor_gadget(c, host.graph, host.bramble);
  for (bool x : {false, true})
    EXPECT_NE(step_deterministic(gad.g.net, predecessor_configuration(gad, {x})), gad.target);
}

TEST(PredecessorGadget, SolverFindsPredecessorOnSmallHost) {
  const Circuit c = identity_circuit();
  const auto host = grid_host_for(c);
  const auto gad = circuit_predecessor_gadget(c, host.graph, host.bramble);
  const auto res = solve_predecessor(gad.g.net, gad.target, 1);
  ASSERT_TRUE(res.predecessor);
  EXPECT_EQ(*res.predecessor, predecessor_configuration(gad, {true}));
}

TEST(AsyncGadget, ScheduleReachesTarget) {
  const Circuit c = identity_circuit();
  const auto host = grid_host_for(c);
  const auto gad = circuit_async_gadget(c, host.graph, host.bramble);
  EXPECT_TRUE(validate_network(gad.g.net, 2048).ok());
  EXPECT_NE(gad.c0, gad.c1);
  const auto sched = async_schedule(gad, {true});
  EXPECT_TRUE(replay_schedule(gad.g.net, gad.c0, sched, gad.c1));
  EXPECT_FALSE(replay_schedule(gad.g.net, gad.c0, async_schedule(gad, {false}), gad.c1));
}

TEST(AsyncGadget, OrAndContradiction) {
  {
    const Circuit c = or_circuit();
    const auto host = grid_host_for(c);
    const auto gad = circuit_async_gadget(c, host.graph, host.bramble);
    EXPECT_TRUE(replay_schedule(gad.g.net, gad.c0, async_schedule(gad, {false, true}), gad.c1));
  }
  const Circuit c = contradiction();
  const auto host = grid_host_for(c);
  const auto gad = circuit_async_gadget(c, host.graph, host.bramble);
  const Network lifted = async_lift(gad.g.net);
  Rng rng(9);
  for (int run = 0; run < 200; ++run) {
    Configuration x = gad.c0;
    for (int s = 0; s < 200; ++s) {
      const Configuration fx = step_deterministic(gad.g.net, x);
      for (Vertex v = 0; v < x.size(); ++v)
        if (coin(rng, 50)) x[v] = fx[v];
    }
    EXPECT_NE(x, gad.c1);
  }
}

TEST(RoutedPrediction, AndCircuit) {
  const Circuit c = and_circuit();
  const auto host = grid_host_for(c);
  for (auto [x1, x2] : {std::pair{true, true}, {true, false}, {false, true}, {false, false}}) {
    const auto p = routed_prediction_gadget(c, host.graph, host.bramble, {x1, x2}, 0);
    const Orbit o = orbit(p.g.net, p.y0, p.t);
    EXPECT_EQ(routed_prediction_output(p, o.steps.back()), std::optional<bool>(x1 && x2));
  }
}

TEST(RoutedPrediction, IdentityCircuit) {
  const Circuit c = identity_circuit();
  const auto host = grid_host_for(c);
  for (bool b : {false, true}) {
    const auto p = routed_prediction_gadget(c, host.graph, host.bramble, {b}, 0);
    EXPECT_TRUE(validate_network(p.g.net, 2048).ok());
    const Orbit o = orbit(p.g.net, p.y0, p.t);
    EXPECT_EQ(routed_prediction_output(p, o.steps.back()), std::optional<bool>(b));
    const Verdict v = solve_prediction(p.g.net, p.y0, p.v, p.spec_v, p.t);
    EXPECT_EQ(v.satisfiable, b);
  }
}

TEST(RoutedPrediction, RandomMonotoneCircuits) {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const Circuit c = random_monotone_circuit(2 + draw(rng, 2), 8, rng);
    const auto host = grid_host_for(c);
    std::vector<bool> x(c.input_gates().size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = coin(rng, 50);
    const auto p = routed_prediction_gadget(c, host.graph, host.bramble, x, 0);
    const Orbit o = orbit(p.g.net, p.y0, p.t);
    EXPECT_EQ(routed_prediction_output(p, o.steps.back()), std::optional<bool>(c.evaluate(x)[c.output_gates()[0]]));
  }
}

TEST(DominatingGadget, Examples) {
  EXPECT_TRUE(decide_dominating_gadget(dominating_set_gadget(Graph::complete(3), 1)).satisfiable);
  EXPECT_FALSE(decide_dominating_gadget(dominating_set_gadget(Graph::path(4), 1)).satisfiable);
  const auto star = decide_dominating_gadget(dominating_set_gadget(Graph::star(4), 1));
  ASSERT_TRUE(star.satisfiable);
  EXPECT_EQ(star.selection, (std::vector<Vertex>{0}));
}

TEST(DominatingGadget, NetworkIsFreezing) {
  const auto gad = dominating_set_gadget(Graph::path(3), 2);
  EXPECT_TRUE(validate_network(gad.net, 4096).ok());
}

TEST(DominatingGadget, AllConnectedGraphsUpToFive) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const Graph& g : connected_graphs(n))
      for (std::size_t k : {1u, 2u}) {
        const auto gad = dominating_set_gadget(g, k);
        const auto dec = decide_dominating_gadget(gad);
        EXPECT_EQ(dec.satisfiable, brute_dominating_set(g, k)) << "n=" << n << " k=" << k;
      }
}

// Every free marking of the selection and witness rows, including ones with
// zero or several marks per block or unequal offsets.
TEST(DominatingGadget, ExhaustiveMarkingsOnTinyGraphs) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Graph& g : connected_graphs(n))
      for (std::size_t k : {1u, 2u}) {
        const auto gad = dominating_set_gadget(g, k);
        const std::size_t bits = (k + 1) * gad.columns;
        if (bits > 18) continue;
        bool any = false;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
          std::vector<std::vector<std::size_t>> marks(k + 1);
          for (std::size_t b = 0; b < bits; ++b)
            if ((mask >> b) & 1) marks[b / gad.columns].push_back(b % gad.columns);
          if (!dominating_run_accepted(gad, dominating_marking(gad, marks))) continue;
          any = true;
          // an accepted marking selects one vertex per row, the same in every
          // block, and the selected vertices dominate the graph
          std::vector<Vertex> chosen;
          for (std::size_t r = 0; r < k; ++r) {
            ASSERT_EQ(marks[r].size(), n);
            for (std::size_t b = 0; b < n; ++b) ASSERT_EQ(marks[r][b] % n, marks[r][0] % n);
            chosen.push_back(static_cast<Vertex>(marks[r][0] % n));
          }
          for (Vertex v = 0; v < n; ++v)
            EXPECT_TRUE(std::any_of(chosen.begin(), chosen.end(), [&](Vertex s) { return v == s || g.has_edge(v, s); }));
        }
        EXPECT_EQ(any, brute_dominating_set(g, k)) << "n=" << n << " k=" << k;
      }
}

// The free ordering layer is part of the marking: an inconsistent one
// raises an error even over a correct selection.
TEST(DominatingGadget, InconsistentLayerIsRejected) {
  const auto gad = dominating_set_gadget(Graph::star(2), 1);
  const auto dec = decide_dominating_gadget(gad);
  ASSERT_TRUE(dec.satisfiable);
  Configuration bad = dec.initial;
  bad[gad.cell(1, 0)] ^= dom_encode({false, true});
  EXPECT_FALSE(dominating_run_accepted(gad, bad));
}
