// Worked examples for the core, decomposition, trace, validity, solver,
// problem and oracle layers. Expected values were computed by hand or by the
// brute-force oracles and are frozen here.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fanspec/instances.hpp"
#include "fanspec/oracle.hpp"
#include "fanspec/problems.hpp"
#include "fanspec/solver.hpp"
#include "fanspec/treedecomp.hpp"
#include "fanspec/validity.hpp"

using namespace fanspec;

namespace {

Network or_net(const Graph& g) { return standard_network(g, StandardRule::Or); }
Network id_net(const Graph& g) { return standard_network(g, StandardRule::Identity); }

RleTrace seq(std::initializer_list<State> s) { return RleTrace::from_sequence(std::vector<State>(s)); }

}  // namespace

// ------------------------------------------------------------------ core

TEST(Core, ValidateNetworkExamples) {
  EXPECT_TRUE(validate_network(id_net(Graph::path(3))).ok());
  EXPECT_TRUE(validate_network(or_net(Graph::cycle(4))).ok());
  // 1 -> 0 under 0 <= 1
  Network bad = Network::from_function(Graph::path(2), Alphabet::chain(2),
                                       [](Vertex, std::span<const State>, StateSet& out) { out.push_back(0); }, true);
  const ValidationReport rep = validate_network(bad);
  ASSERT_FALSE(rep.ok());
  EXPECT_TRUE(std::any_of(rep.issues.begin(), rep.issues.end(),
                          [](const ValidationIssue& i) { return i.kind == ValidationIssue::Kind::Monotonicity; }));
}

TEST(Core, StepExamples) {
  EXPECT_EQ(step_deterministic(or_net(Graph::path(3)), {1, 0, 0}), (Configuration{1, 1, 0}));
  EXPECT_EQ(step_deterministic(id_net(Graph::path(3)), {0, 1, 0}), (Configuration{0, 1, 0}));
  EXPECT_EQ(step_deterministic(standard_network(Graph::path(2), StandardRule::ConstantOne), {0, 0}),
            (Configuration{1, 1}));
}

TEST(Core, SuccessorsAndAsyncLift) {
  const Network orp2 = or_net(Graph::path(2));
  EXPECT_EQ(successors(orp2, {1, 0}), (std::vector<Configuration>{{1, 1}}));
  const Network lifted = async_lift(orp2);
  auto succ = successors(lifted, {1, 0});
  std::sort(succ.begin(), succ.end());
  EXPECT_EQ(succ, (std::vector<Configuration>{{1, 0}, {1, 1}}));
  // a node with a 1-neighbour that is still 0 may move or stall
  StateSet img;
  lifted.image(1, {1, 0}, img);
  EXPECT_EQ(img, (StateSet{0, 1}));
  const Network ident = id_net(Graph::path(3));
  EXPECT_EQ(successors(async_lift(ident), {0, 1, 0}), (std::vector<Configuration>{{0, 1, 0}}));
  const Network c1 = async_lift(standard_network(Graph::path(2), StandardRule::ConstantOne));
  c1.image(0, {0, 0}, img);
  EXPECT_EQ(img, (StateSet{0, 1}));
}

TEST(Core, ExpandSetRule) {
  const Graph g = Graph::cycle(5);
  SetRule rho([](State s, std::span<const State> set) {
    return std::find(set.begin(), set.end(), 1u) != set.end() ? State{1} : s;
  });
  SetRule table;
  for (State s : {0u, 1u}) {
    table.add(s, {s}, s);
    table.add(s, {0, 1}, 1);
  }
  const Network a = expand_set_rule(table, g, Alphabet::chain(2));
  const Network b = or_net(g);
  for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(a.table(v).masks, b.table(v).masks);
  SetRule ident;
  for (State s : {0u, 1u}) {
    ident.add(s, {s}, s);
    ident.add(s, {0, 1}, s);
  }
  const Network c = expand_set_rule(ident, g, Alphabet::chain(2));
  for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(c.table(v).masks, id_net(g).table(v).masks);
  SetRule bad = ident;
  bad = SetRule();
  bad.add(0, {0}, 0);
  bad.add(0, {0, 1}, 0);
  bad.add(1, {1}, 1);
  bad.add(1, {0, 1}, 0);
  EXPECT_THROW(expand_set_rule(bad, g, Alphabet::chain(2)), ValidationError);
}

TEST(Core, OrbitExamples) {
  const Orbit o = orbit(or_net(Graph::path(4)), {1, 0, 0, 0}, 3);
  EXPECT_EQ(o.steps, (std::vector<Configuration>{{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}, {1, 1, 1, 1}}));
  const Orbit c = orbit(id_net(Graph::path(3)), {1, 0, 1}, 5);
  EXPECT_EQ(c.steps.size(), 6u);
  for (const auto& x : c.steps) EXPECT_EQ(x, (Configuration{1, 0, 1}));
}

TEST(Core, MaxOrbitLength) {
  EXPECT_EQ(max_orbit_length(1, 2, 3), 14u);
  EXPECT_EQ(max_orbit_length(2, 2, 4), 36u);
  EXPECT_EQ(max_orbit_length(1, 1, 9), 10u);
  EXPECT_THROW(max_orbit_length(0, 2, 3), ArgumentError);
}

TEST(Core, FreezingChangeBound) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Graph g = random_connected_graph(2 + draw(rng, 5), 3, 30, rng);
    const Alphabet a = random_alphabet(2 + draw(rng, 2), rng);
    const Network net = random_network(g, a, true, 40, rng);
    const Orbit o = random_orbit(net, 12, rng);
    ASSERT_TRUE(orbit_is_monotone(net, o));
    std::size_t changes = 0;
    for (Vertex v = 0; v < net.n(); ++v) changes += RleTrace::from_sequence(o.node_sequence(v)).runs().size() - 1;
    EXPECT_LE(changes, net.n() * (a.height() - 1));
  }
}

// ------------------------------------------------------------ treedecomp

TEST(TreeDecomp, ValidateExamples) {
  const Graph p3 = Graph::path(3);
  EXPECT_EQ(validate_decomposition(p3, trivial_decomposition(p3)).width, std::optional<std::size_t>(2));
  TreeDecomposition d{{{0, 1}, {1, 2}}, {{0, 1}}, 0};
  EXPECT_EQ(validate_decomposition(p3, d).width, std::optional<std::size_t>(1));
  TreeDecomposition broken{{{0, 1}, {2}}, {{0, 1}}, 0};
  const auto chk = validate_decomposition(p3, broken);
  ASSERT_FALSE(chk.ok());
  EXPECT_TRUE(std::any_of(chk.issues.begin(), chk.issues.end(),
                          [](const DecompositionIssue& i) { return i.kind == DecompositionIssue::Kind::EdgeCoverage; }));
  EXPECT_THROW(require_valid(p3, broken), ValidationError);
}

TEST(TreeDecomp, HeuristicWidths) {
  EXPECT_EQ(heuristic_decomposition(Graph::path(6)).width(), 1u);
  EXPECT_EQ(heuristic_decomposition(Graph::star(4)).width(), 1u);
  EXPECT_EQ(heuristic_decomposition(Graph::complete(4)).width(), 3u);
  EXPECT_EQ(heuristic_decomposition(Graph::cycle(5)).width(), 2u);
}

TEST(TreeDecomp, BalanceExamples) {
  const Graph p3 = Graph::path(3);
  const TreeDecomposition single = binarize_balance(trivial_decomposition(p3));
  EXPECT_EQ(single.size(), 1u);
  EXPECT_EQ(single.depth(), 0u);

  TreeDecomposition chain;
  for (Vertex i = 0; i < 8; ++i) chain.bags.push_back({i, i + 1});
  for (std::size_t i = 0; i + 1 < 8; ++i) chain.edges.emplace_back(i, i + 1);
  chain.root = 0;
  const TreeDecomposition b = binarize_balance(chain);
  const Graph p9 = Graph::path(9);
  ASSERT_TRUE(validate_decomposition(p9, b).ok());
  EXPECT_TRUE(b.is_binary());
  EXPECT_LE(b.width(), 5u);
  EXPECT_LE(b.depth(), balance_depth_bound(chain.size()));

  TreeDecomposition star{{{0, 1, 2, 3, 4, 5}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}, {}, 0};
  for (std::size_t i = 1; i <= 5; ++i) star.edges.emplace_back(0, i);
  const TreeDecomposition s = binarize_balance(star);
  EXPECT_TRUE(s.is_binary());
  ASSERT_TRUE(validate_decomposition(Graph::star(5), s).ok());
}

TEST(TreeDecomp, RandomBalanceContract) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + draw(rng, 19);
    const Graph g = random_partial_ktree(n, 1 + draw(rng, 3), 4, 30, rng);
    const TreeDecomposition d = heuristic_decomposition(g);
    const TreeDecomposition b = binarize_balance(d);
    ASSERT_TRUE(validate_decomposition(g, b).ok()) << i;
    EXPECT_TRUE(b.is_binary());
    EXPECT_LE(b.width(), 3 * d.width() + 2);
    EXPECT_LE(b.depth(), balance_depth_bound(b.size()));
  }
}

TEST(TreeDecomp, Levels) {
  EXPECT_EQ(levels(TreeDecomposition{{{0}}, {}, 0}), (std::vector<std::vector<std::size_t>>{{0}}));
  TreeDecomposition chain{{{0}, {0}, {0}}, {{0, 1}, {1, 2}}, 0};
  EXPECT_EQ(levels(chain), (std::vector<std::vector<std::size_t>>{{2}, {1}, {0}}));
  TreeDecomposition bin{{{0}, {0}, {0}, {0}, {0}, {0}, {0}}, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}}, 0};
  const auto lv = levels(bin);
  ASSERT_EQ(lv.size(), 3u);
  EXPECT_EQ(lv[0].size(), 4u);
  EXPECT_EQ(lv[1].size(), 2u);
  EXPECT_EQ(lv[2].size(), 1u);
}

// ---------------------------------------------------------------- traces

TEST(Traces, EncodeExamples) {
  const Alphabet a = Alphabet::chain(2);
  SequenceEncoding e = encode({0}, {{0, 0, 1, 1, 1}}, 4, a);
  EXPECT_EQ(e.times, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(e.states, (std::vector<std::vector<State>>{{0}, {1}}));
  e = encode({0}, {{1, 1, 1}}, 2, a);
  EXPECT_EQ(e.times, (std::vector<std::size_t>{0}));
  e = encode({0, 1}, {{0, 1, 1}, {0, 0, 1}}, 2, a);
  EXPECT_EQ(e.times, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(e.states, (std::vector<std::vector<State>>{{0, 0}, {1, 0}, {1, 1}}));
}

TEST(Traces, DecodeAndRestrict) {
  SequenceEncoding e{{0}, 3, {0}, {{1}}};
  EXPECT_EQ(decode(e), (DenseTable{{1, 1, 1, 1}}));
  EXPECT_TRUE(decode(SequenceEncoding{{}, 3, {0}, {{}}}).empty());
  const Alphabet a = Alphabet::chain(2);
  const SequenceEncoding uw = encode({0, 1}, {{0, 0, 1}, {0, 1, 1}}, 2, a);
  const SequenceEncoding r = restrict(uw, {0});
  EXPECT_EQ(r.times, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(r.states, (std::vector<std::vector<State>>{{0}, {1}}));
  EXPECT_EQ(restrict(uw, {0, 1}), uw);
  const SequenceEncoding flat = encode({0, 1}, {{1, 1, 1}, {0, 1, 1}}, 2, a);
  EXPECT_EQ(restrict(flat, {0}).times, (std::vector<std::size_t>{0}));
}

TEST(Traces, RandomRoundTrips) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Alphabet a = random_alphabet(1 + draw(rng, 3), rng);
    const std::size_t t = draw(rng, 51), u = 1 + draw(rng, 3);
    std::vector<Vertex> verts;
    DenseTable cols;
    for (std::size_t k = 0; k < u; ++k) {
      verts.push_back(static_cast<Vertex>(k));
      cols.push_back(random_monotone_sequence(a, t, rng));
    }
    const SequenceEncoding e = encode(verts, cols, t, a);
    ASSERT_EQ(decode(e), cols);
    EXPECT_LE(e.times.size(), std::min<std::size_t>(t + 1, u * (a.size() - 1) + 1));
    std::vector<Vertex> z;
    DenseTable zc;
    for (std::size_t k = 0; k < u; ++k)
      if (coin(rng, 50)) {
        z.push_back(verts[k]);
        zc.push_back(cols[k]);
      }
    EXPECT_EQ(restrict(e, z), encode(z, zc, t, a));
    const PaddedEncoding p = pad(e, a.size());
    EXPECT_EQ(unpad(p, verts, t), e);
  }
}

TEST(Traces, CanonicalKeys) {
  const RleTrace x({{0, 3}, {1, 2}}), y({{0, 3}, {1, 2}}), z({{0, 2}, {1, 3}});
  EXPECT_EQ(canonical_key(x), canonical_key(y));
  EXPECT_NE(canonical_key(x), canonical_key(z));
  EXPECT_EQ(trace_from_key(canonical_key(z)), z);
  EXPECT_EQ(canonical_key(x), "0:3,1:2");
}

TEST(Traces, EncodeSpec) {
  const Alphabet a = Alphabet::chain(2);
  Specification s = encode_spec({{0, {{0, 0, 1}, {0, 1, 1}}}, {1, {}}, {2, {{1, 1, 1}, {1, 1, 1}}}}, 2, a);
  EXPECT_EQ(s.find(0)->traces->size(), 2u);
  EXPECT_TRUE(s.find(1)->traces->empty());
  EXPECT_EQ(s.find(2)->traces->size(), 1u);
}

// -------------------------------------------------------------- validity

TEST(Validity, LocalExamples) {
  const Network net = or_net(Graph::path(2));
  const Specification free_spec(1);
  LocalTrace lt{0, {{0, seq({0, 1})}, {1, seq({1, 1})}}, 1};
  EXPECT_TRUE(is_locally_valid(net, free_spec, lt));
  lt.traces[0] = seq({0, 0});
  EXPECT_FALSE(is_locally_valid(net, free_spec, lt));
  const Network ident = id_net(Graph::path(2));
  EXPECT_TRUE(is_locally_valid(ident, free_spec, LocalTrace{0, {{0, seq({1, 1})}, {1, seq({0, 0})}}, 1}));
}

TEST(Validity, PartialExamples) {
  const Network net = or_net(Graph::path(3));
  const Specification free_spec(2);
  const Orbit o = orbit(net, {1, 0, 0}, 2);
  PartialTrace pt{{0, 1}, {}, 2};
  for (Vertex v = 0; v < 3; ++v) pt.traces[v] = RleTrace::from_sequence(o.node_sequence(v));
  EXPECT_TRUE(is_partially_valid(net, free_spec, pt));
  pt.traces[1] = seq({0, 0, 0});
  EXPECT_FALSE(is_partially_valid(net, free_spec, pt));
  EXPECT_TRUE(is_partially_valid(net, free_spec, PartialTrace{{}, {}, 2}));
}

TEST(Validity, EnumerateExamples) {
  const Network lone = id_net(Graph(1, {}));
  const auto pvts = enumerate_pvt(lone, Specification(2), {0}, 2);
  ASSERT_EQ(pvts.size(), 2u);
  EXPECT_EQ(pvts[0].traces.at(0), seq({0, 0, 0}));
  EXPECT_EQ(pvts[1].traces.at(0), seq({1, 1, 1}));

  Specification empty(2);
  empty.forbid_all(0);
  EXPECT_TRUE(enumerate_pvt(lone, empty, {0}, 2).empty());

  // OR on P2 around node 0: the traces of node 0 are exactly those of the orbits
  const Network net = or_net(Graph::path(2));
  std::set<RleTrace> from_pvt, from_orbits;
  for (const auto& pt : enumerate_pvt(net, Specification(1), {0}, 1)) {
    ASSERT_TRUE(is_partially_valid(net, Specification(1), pt));
    from_pvt.insert(pt.traces.at(0));
  }
  const auto orbits = brute_restricted_orbits(net, {0, 1}, 1);
  for (const auto& o : orbits) from_orbits.insert(o[0]);
  EXPECT_EQ(from_pvt, from_orbits);
  EXPECT_EQ(from_pvt.size(), 3u);
}

TEST(Validity, EnumerationIsCompleteOnSmallInstances) {
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const Graph g = random_connected_graph(2 + draw(rng, 3), 3, 30, rng);
    const Alphabet a = random_alphabet(2, rng);
    const Network net = random_network(g, a, coin(rng, 50), 50, rng);
    const std::size_t t = 1 + draw(rng, 2);
    const Specification spec(t);
    const std::vector<Vertex> u{0};
    const auto vars = closed_neighborhood(g, u);
    std::set<std::vector<RleTrace>> yielded;
    for (const auto& pt : enumerate_pvt(net, spec, u, t)) {
      std::vector<RleTrace> row;
      for (Vertex x : vars) row.push_back(pt.traces.at(x));
      yielded.insert(row);
    }
    // every assignment of monotone traces to N[U] is valid iff it was yielded
    std::vector<std::vector<State>> mono;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (t + 1)); ++code) {
      std::vector<State> s;
      for (std::size_t k = 0; k <= t; ++k) s.push_back(static_cast<State>((code >> k) & 1));
      bool ok = true;
      for (std::size_t k = 0; k < t; ++k) ok = ok && a.leq(s[k], s[k + 1]);
      if (ok) mono.push_back(s);
    }
    std::vector<std::size_t> pick(vars.size(), 0);
    while (true) {
      PartialTrace pt{u, {}, t};
      std::vector<RleTrace> row;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        pt.traces[vars[k]] = RleTrace::from_sequence(mono[pick[k]]);
        row.push_back(pt.traces[vars[k]]);
      }
      ASSERT_EQ(is_partially_valid(net, spec, pt), yielded.count(row) == 1) << "instance " << i;
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == mono.size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
}

// ---------------------------------------------------------------- solver

TEST(Solver, P3Examples) {
  const Network net = or_net(Graph::path(3));
  Specification s(2);
  s.set_final(2, {1});
  const Verdict v = check_spec(net, s);
  ASSERT_TRUE(v.satisfiable);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(orbit_replays(net, *v.witness));
  EXPECT_EQ(v.witness->steps.back()[2], 1u);
  for (Vertex u = 0; u < 3; ++u) s.set_initial(u, {0});
  EXPECT_FALSE(check_spec(net, s).satisfiable);
  EXPECT_TRUE(check_spec(net, Specification(4)).satisfiable);
}

TEST(Solver, JoinChildren) {
  EXPECT_TRUE(join_children({0}, {0}, {}).has_value());
  DpTable empty;
  empty.vars = {0};
  empty.key_vars = {0};
  EXPECT_FALSE(join_children({0}, {0}, {&empty}).has_value());
  DpTable a, b;
  a.vars = {0, 1};
  a.key_vars = {0};
  a.entries = {{{0, 5}, {}}, {{1, 6}, {}}};
  b.vars = {0, 2};
  b.key_vars = {0};
  b.entries = {{{0, 7}, {}}, {{1, 8}, {}}};
  const auto back = join_children({0}, {1}, {&a, &b});
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, (std::vector<std::uint32_t>{1, 1}));
}

TEST(Solver, WitnessMatchesSimulationWhenStartIsPinned) {
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    const Graph g = random_partial_ktree(2 + draw(rng, 6), 2, 3, 30, rng);
    const Network net = random_network(g, random_alphabet(2 + draw(rng, 2), rng), true, 50, rng);
    const Configuration c = random_configuration(net, rng);
    const std::size_t t = draw(rng, 6);
    Specification s(t);
    for (Vertex v = 0; v < net.n(); ++v) s.set_initial(v, {c[v]});
    const Verdict v = check_spec(net, s);
    ASSERT_TRUE(v.satisfiable);
    EXPECT_EQ(v.witness->steps, orbit(net, c, t).steps);
  }
}

TEST(Solver, DecompositionAndJobsDoNotChangeVerdicts) {
  Rng rng(13);
  for (int i = 0; i < 40; ++i) {
    const Graph g = random_partial_ktree(2 + draw(rng, 6), 2, 3, 30, rng);
    const Network net = random_network(g, random_alphabet(1 + draw(rng, 3), rng), coin(rng, 50), 60, rng);
    const Specification s = random_spec(net, draw(rng, 7), rng);
    SolverOptions one;
    one.jobs = 1;
    SolverOptions two;
    two.jobs = 2;
    const bool a = check_spec(net, s, binarize(heuristic_decomposition(g)), one).satisfiable;
    EXPECT_EQ(a, check_spec(net, s, binarize_balance(heuristic_decomposition(g)), two).satisfiable);
    EXPECT_EQ(a, check_spec(net, s, trivial_decomposition(g), SolverOptions{}).satisfiable);
  }
}

// -------------------------------------------------------------- problems

TEST(Problems, PredictionExamples) {
  const Network net = or_net(Graph::path(3));
  NodeSpec ends_one;
  ends_one.initial = StateSet{0};
  ends_one.final = StateSet{1};
  EXPECT_TRUE(solve_prediction(net, {1, 0, 0}, 2, ends_one, 2).satisfiable);
  NodeSpec zero;
  zero.traces.emplace();
  zero.traces->emplace(canonical_key(RleTrace::constant(0, 2)), RleTrace::constant(0, 2));
  EXPECT_FALSE(solve_prediction(net, {1, 0, 0}, 2, zero, 2).satisfiable);
  NodeSpec stay;
  stay.traces.emplace();
  stay.traces->emplace(canonical_key(RleTrace::constant(1, 3)), RleTrace::constant(1, 3));
  EXPECT_TRUE(solve_prediction(id_net(Graph::path(3)), {0, 1, 0}, 1, stay, 3).satisfiable);
}

TEST(Problems, PredecessorExamples) {
  const Network net = or_net(Graph::path(2));
  const auto yes = solve_predecessor(net, {1, 1}, 1);
  ASSERT_TRUE(yes.predecessor);
  EXPECT_EQ(step_deterministic(net, *yes.predecessor), (Configuration{1, 1}));
  EXPECT_FALSE(solve_predecessor(net, {1, 0}, 1).predecessor);
  const auto fixed = solve_predecessor(net, {0, 0}, 4);
  ASSERT_TRUE(fixed.predecessor);
  EXPECT_EQ(*fixed.predecessor, (Configuration{0, 0}));
}

TEST(Problems, NilpotencyExamples) {
  EXPECT_TRUE(solve_nilpotency(standard_network(Graph::cycle(4), StandardRule::ConstantOne)).nilpotent);
  EXPECT_FALSE(solve_nilpotency(id_net(Graph::path(2))).nilpotent);
  const NilpotencyResult r = solve_nilpotency(or_net(Graph::path(2)));
  EXPECT_FALSE(r.nilpotent);
  EXPECT_EQ(r.horizon, 2u * 2 * (2 * 2 + 1));
}

TEST(Problems, AsyncExamples) {
  const Network net = or_net(Graph::path(2));
  const auto yes = solve_async_reachability(net, {1, 0}, {1, 1});
  ASSERT_TRUE(yes.verdict.satisfiable);
  EXPECT_TRUE(replay_schedule(net, {1, 0}, yes.schedule, {1, 1}));
  EXPECT_FALSE(solve_async_reachability(net, {0, 0}, {1, 1}).verdict.satisfiable);
  const auto same = solve_async_reachability(net, {1, 0}, {1, 0});
  ASSERT_TRUE(same.verdict.satisfiable);
  EXPECT_TRUE(same.schedule.empty());
}

// ---------------------------------------------------------------- oracle

TEST(Oracle, Examples) {
  const Network orp2 = or_net(Graph::path(2));
  EXPECT_TRUE(brute_check_spec(orp2, Specification(3)));
  Specification decrease(2);
  decrease.set_initial(0, {1});
  decrease.set_final(0, {0});
  EXPECT_FALSE(brute_check_spec(orp2, decrease));
  EXPECT_TRUE(brute_nilpotency(standard_network(Graph::path(3), StandardRule::ConstantOne)));
  EXPECT_FALSE(brute_nilpotency(id_net(Graph::path(3))));
  EXPECT_FALSE(brute_nilpotency(or_net(Graph::cycle(3))));
  EXPECT_EQ(brute_predecessor(orp2, {0, 0}, 3), std::optional<Configuration>(Configuration{0, 0}));
  EXPECT_FALSE(brute_predecessor(orp2, {1, 0}, 1));
  EXPECT_EQ(brute_predecessor(orp2, {1, 1}, 1), std::optional<Configuration>(Configuration{0, 1}));
  EXPECT_TRUE(brute_dominating_set(Graph::complete(3), 1));
  EXPECT_FALSE(brute_dominating_set(Graph::path(4), 1));
  EXPECT_EQ(brute_dominating_witness(Graph::star(4), 1), std::optional<std::vector<Vertex>>(std::vector<Vertex>{0}));
}

TEST(Oracle, PinnedSpecMatchesSimulation) {
  Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    const Graph g = random_connected_graph(2 + draw(rng, 4), 3, 30, rng);
    const Network net = random_network(g, random_alphabet(2, rng), true, 50, rng);
    const Configuration x0 = random_configuration(net, rng), guess = random_configuration(net, rng);
    const std::size_t t = draw(rng, 5);
    Specification s(t);
    for (Vertex v = 0; v < net.n(); ++v) {
      s.set_initial(v, {x0[v]});
      s.set_final(v, {guess[v]});
    }
    EXPECT_EQ(brute_check_spec(net, s), orbit(net, x0, t).steps.back() == guess);
  }
}

TEST(Oracle, BudgetsRefuse) {
  OracleBudget tiny;
  tiny.max_configs = 4;
  EXPECT_THROW(brute_check_spec(or_net(Graph::path(3)), Specification(1), tiny), BudgetError);
}
