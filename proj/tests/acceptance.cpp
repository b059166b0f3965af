// Acceptance run: one PASS/FAIL line per criterion. Thresholds, sample sizes
// and seeds are pinned below; the exit status is nonzero if any selected
// criterion fails.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fanspec/core.hpp"
#include "fanspec/errors.hpp"
#include "fanspec/gadgets.hpp"
#include "fanspec/instances.hpp"
#include "fanspec/oracle.hpp"
#include "fanspec/problems.hpp"
#include "fanspec/solver.hpp"
#include "fanspec/treedecomp.hpp"

using namespace fanspec;

namespace {

// Pinned limits.
constexpr std::size_t kSpecInstances = 200;
constexpr double kSpecSeconds = 300;
constexpr std::size_t kPumpInstances = 50;
constexpr std::size_t kPumpExtra = 5;
constexpr std::size_t kDecompGraphs = 100;
constexpr std::size_t kProblemRandom = 100;
constexpr double kProblemSeconds = 600;
constexpr double kDominatingSeconds = 300;
constexpr std::size_t kRoutingPairs = 100;
constexpr std::size_t kSatCircuits = 30;
constexpr std::size_t kSatStarts = 500;
constexpr std::size_t kMonotoneCircuits = 50;
constexpr std::size_t kMonotoneMaxGates = 8;
constexpr std::size_t kDeterminismInstances = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Every satisfiable verdict produced anywhere in the run is replayed here.
struct WitnessLedger {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void orbit(const Network& net, const Specification& spec, const Orbit& o, const std::string& where) {
    ++checked;
    std::string why;
    if (o.horizon() != spec.horizon()) why = "horizon " + std::to_string(o.horizon());
    else if (!orbit_replays(net, o)) why = "a step is not a successor";
    else
      for (Vertex v = 0; v < net.n() && why.empty(); ++v)
        if (!spec.admits_sequence(v, o.node_sequence(v))) why = "node " + std::to_string(v) + " violates its spec";
    if (!why.empty()) failures.push_back(where + ": " + why);
  }
  void fail(const std::string& where) {
    ++checked;
    failures.push_back(where);
  }
  void pass() { ++checked; }
};

WitnessLedger witnesses;

void record(const Network& net, const Specification& spec, const Verdict& v, const std::string& where) {
  if (!v.satisfiable) return;
  if (!v.witness) return witnesses.fail(where + ": satisfiable without a witness");
  witnesses.orbit(net, spec, *v.witness, where);
}

Specification random_small_spec(Rng& rng, Network& net_out, std::size_t max_n, std::size_t max_q) {
  const std::size_t n = 1 + draw(rng, max_n);
  Graph g = random_partial_ktree(n, 2, 3, 30, rng);
  Alphabet a = random_alphabet(1 + draw(rng, max_q), rng);
  net_out = random_network(g, a, coin(rng, 50), 60, rng);
  return random_spec(net_out, draw(rng, 9), rng);
}

// ---------------------------------------------------------------- 1

Outcome solver_oracle_equivalence() {
  Rng rng(1001);
  std::size_t agree = 0, sat = 0;
  std::string first_bad;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < kSpecInstances; ++i) {
    Network net;
    Specification spec = random_small_spec(rng, net, 7, 3);
    try {
      const bool expect = brute_check_spec(net, spec);
      const Verdict v = check_spec(net, spec);
      record(net, spec, v, "spec instance " + std::to_string(i));
      if (v.satisfiable == expect) ++agree;
      else if (first_bad.empty()) first_bad = "instance " + std::to_string(i);
      sat += expect;
    } catch (const std::exception& e) {
      if (first_bad.empty()) first_bad = "instance " + std::to_string(i) + ": " + e.what();
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = agree == kSpecInstances && secs < kSpecSeconds;
  o.detail = fmt("%zu/%zu agree (%zu satisfiable), %.1f s (limit %.0f s)", agree, kSpecInstances, sat, secs,
                 kSpecSeconds);
  if (!first_bad.empty()) o.detail += "; first mismatch " + first_bad;
  return o;
}

// ---------------------------------------------------------------- 2

Outcome witness_soundness() {
  // Its own sample, so the criterion is meaningful when run alone.
  Rng rng(2002);
  for (std::size_t i = 0; i < kSpecInstances; ++i) {
    Network net;
    Specification spec = random_small_spec(rng, net, 7, 3);
    try {
      record(net, spec, check_spec(net, spec), "soundness instance " + std::to_string(i));
    } catch (const std::exception& e) {
      witnesses.fail("soundness instance " + std::to_string(i) + ": " + e.what());
    }
  }
  Outcome o;
  o.pass = witnesses.failures.empty() && witnesses.checked > 0;
  o.detail = fmt("%zu witnesses replayed, %zu failures", witnesses.checked, witnesses.failures.size());
  if (!witnesses.failures.empty()) o.detail += "; first: " + witnesses.failures.front();
  return o;
}

// ---------------------------------------------------------------- 3

using Rows = std::vector<std::vector<State>>;

Rows joint_rows(const std::vector<RleTrace>& traces, std::size_t t) {
  Rows rows(t + 1);
  for (std::size_t s = 0; s <= t; ++s)
    for (const auto& tr : traces) rows[s].push_back(tr.at(s));
  return rows;
}

// All ways of adding `extra` rows to blocks that already hold at least `min_block` rows.
void stretch(const Rows& rows, std::size_t min_block, std::size_t extra, std::set<Rows>& out) {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // (first row, length)
  for (std::size_t s = 0; s < rows.size(); ++s) {
    if (s > 0 && rows[s] == rows[s - 1]) ++blocks.back().second;
    else blocks.push_back({s, 1});
  }
  std::vector<std::size_t> add(blocks.size(), 0);
  std::function<void(std::size_t, std::size_t)> place = [&](std::size_t b, std::size_t left) {
    if (b == blocks.size()) {
      if (left) return;
      Rows r;
      for (std::size_t i = 0; i < blocks.size(); ++i)
        r.insert(r.end(), blocks[i].second + add[i], rows[blocks[i].first]);
      out.insert(std::move(r));
      return;
    }
    const std::size_t cap = blocks[b].second >= min_block ? left : 0;
    for (std::size_t k = 0; k <= cap; ++k) {
      add[b] = k;
      place(b + 1, left - k);
    }
    add[b] = 0;
  };
  place(0, extra);
}

Outcome pumping_bound() {
  Rng rng(3003);
  std::size_t ok = 0;
  std::size_t largest_l = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < kPumpInstances; ++i) {
    const std::size_t n = 2 + draw(rng, 4);
    Graph g = random_partial_ktree(n, 2, 3, 30, rng);
    Alphabet a = random_alphabet(2, rng);
    Network net = random_network(g, a, coin(rng, 50), 50, rng);
    std::vector<Vertex> u;
    for (Vertex v = 0; v < n; ++v) u.push_back(v);
    std::shuffle(u.begin(), u.end(), rng);
    u.resize(1 + draw(rng, 2));
    std::sort(u.begin(), u.end());
    const std::size_t q = a.size();
    const std::size_t l = max_orbit_length(u.size(), q, n);
    const std::size_t min_block = q * n + 1;
    largest_l = std::max(largest_l, l);
    try {
      std::set<Rows> predicted, actual;
      for (const auto& r : brute_restricted_orbits(net, u, l)) stretch(joint_rows(r, l), min_block, kPumpExtra, predicted);
      for (const auto& r : brute_restricted_orbits(net, u, l + kPumpExtra)) actual.insert(joint_rows(r, l + kPumpExtra));
      if (predicted == actual) ++ok;
      else if (first_bad.empty())
        first_bad = fmt("instance %zu: %zu predicted vs %zu actual", i, predicted.size(), actual.size());
    } catch (const std::exception& e) {
      if (first_bad.empty()) first_bad = "instance " + std::to_string(i) + ": " + e.what();
    }
  }
  Outcome o;
  o.pass = ok == kPumpInstances;
  o.detail = fmt("%zu/%zu instances: length L+%zu orbits are exactly the stretched length-L orbits (L up to %zu)", ok,
                 kPumpInstances, kPumpExtra, largest_l);
  if (!first_bad.empty()) o.detail += "; first counterexample " + first_bad;
  return o;
}

// ---------------------------------------------------------------- 4

Outcome decomposition_contract() {
  Rng rng(4004);
  std::size_t ok = 0;
  std::size_t worst_depth = 0, worst_bags = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < kDecompGraphs; ++i) {
    const std::size_t n = 1 + draw(rng, 20);
    const Graph g = coin(rng, 50) ? random_partial_ktree(n, 1 + draw(rng, 3), 4, 30, rng)
                                  : random_connected_graph(n, 4, 30, rng);
    const TreeDecomposition in = heuristic_decomposition(g);
    const std::size_t k = in.width();
    const TreeDecomposition d = binarize_balance(in);
    std::string why;
    const auto check = validate_decomposition(g, d);
    const double c = static_cast<double>(kBalanceDepthFactor);
    const double depth_limit = c * std::log2(static_cast<double>(std::max<std::size_t>(d.size(), 1))) + c;
    if (!check.ok()) why = "invalid: " + check.issues.front().message;
    else if (!d.is_binary()) why = "not binary";
    else if (d.width() > 3 * k + 2) why = fmt("width %zu > 3*%zu+2", d.width(), k);
    else if (static_cast<double>(d.depth()) > depth_limit)
      why = fmt("depth %zu > %.1f for %zu bags", d.depth(), depth_limit, d.size());
    if (why.empty()) {
      ++ok;
      if (d.depth() > worst_depth) worst_depth = d.depth(), worst_bags = d.size();
    } else if (first_bad.empty()) {
      first_bad = "graph " + std::to_string(i) + ": " + why;
    }
  }
  Outcome o;
  o.pass = ok == kDecompGraphs;
  o.detail = fmt("%zu/%zu binary, valid, width <= 3k+2, depth <= %zu*log2(bags)+%zu (deepest %zu with %zu bags)", ok,
                 kDecompGraphs, kBalanceDepthFactor, kBalanceDepthFactor, worst_depth, worst_bags);
  if (!first_bad.empty()) o.detail += "; " + first_bad;
  return o;
}

// ---------------------------------------------------------------- 5

struct Tally {
  std::size_t total = 0, agree = 0;
  std::string first_bad;
  void add(bool same, const std::string& where) {
    ++total;
    if (same) ++agree;
    else if (first_bad.empty()) first_bad = where;
  }
};

// The oracle side of prediction: brute force over orbits from c only.
bool oracle_prediction(const Network& net, const Configuration& c, Vertex v, const NodeSpec& spec_v, std::size_t t) {
  Specification s(t);
  s.node(v) = spec_v;
  for (Vertex u = 0; u < net.n(); ++u) s.set_initial(u, {c[u]});
  if (spec_v.initial && !std::binary_search(spec_v.initial->begin(), spec_v.initial->end(), c[v]))
    s.forbid_all(v);
  return brute_check_spec(net, s);
}

Specification prediction_spec(const Configuration& c, Vertex v, const NodeSpec& spec_v, std::size_t t) {
  Specification s(t);
  s.node(v) = spec_v;
  for (Vertex u = 0; u < c.size(); ++u)
    if (u != v) s.set_initial(u, {c[u]});
  return s;
}

void all_problems(const Network& net, const std::vector<Configuration>& configs, const std::string& tag,
                  std::map<std::string, Tally>& tally) {
  const std::size_t q = net.alphabet().size();
  {
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
      const Configuration& c = configs[ci];
      const std::string at = tag + " config " + std::to_string(ci);
      for (Vertex v = 0; v < net.n(); ++v)
        for (std::size_t t = 1; t <= 3; ++t)
          for (State s = 0; s < q; ++s)
            for (int kind = 0; kind < 2; ++kind) {
              NodeSpec ns;
              if (kind == 0) ns.final = StateSet{s};
              else ns.avoid = {s};
              const Verdict got = solve_prediction(net, c, v, ns, t);
              if (got.satisfiable) {
                Specification full = prediction_spec(c, v, ns, t);
                full.set_initial(v, {c[v]});
                record(net, full, got, at + " prediction");
              }
              tally["prediction"].add(got.satisfiable == oracle_prediction(net, c, v, ns, t), at + " prediction");
            }
      for (std::size_t t = 1; t <= 2; ++t) {
        const PredecessorResult got = solve_predecessor(net, c, t);
        const bool expect = brute_predecessor(net, c, t).has_value();
        bool same = got.verdict.satisfiable == expect;
        if (got.verdict.satisfiable) {
          const bool replays = got.predecessor && orbit(net, *got.predecessor, t).steps.back() == c;
          replays ? witnesses.pass() : witnesses.fail(at + " predecessor does not map to the target");
          same = same && replays;
        }
        tally["predecessor"].add(same, at + " predecessor t=" + std::to_string(t));
      }
    }
    tally["nilpotency"].add(solve_nilpotency(net).nilpotent == brute_nilpotency(net), tag + " nilpotency");
  }
  for (std::size_t i = 0; i < configs.size(); ++i)
    for (std::size_t j = 0; j < configs.size(); ++j) {
      const AsyncReachResult got = solve_async_reachability(net, configs[i], configs[j]);
      const bool expect = brute_async_reach(net, configs[i], configs[j]);
      bool same = got.verdict.satisfiable == expect;
      if (got.verdict.satisfiable) {
        const bool replays = replay_schedule(net, configs[i], got.schedule, configs[j]);
        replays ? witnesses.pass() : witnesses.fail(tag + " async schedule does not replay");
        same = same && replays;
      }
      tally["async-reach"].add(same, tag + " async " + std::to_string(i) + "->" + std::to_string(j));
    }
}

std::vector<Configuration> all_configurations(const Network& net) {
  std::vector<Configuration> out;
  for (std::uint64_t i = 0; i < configuration_count(net); ++i) out.push_back(configuration_at(net, i));
  return out;
}

Outcome canonical_problems() {
  std::map<std::string, Tally> tally;
  const auto t0 = Clock::now();
  std::size_t networks = 0;
  std::string error;
  try {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::size_t gi = 0;
      for (const Graph& g : connected_graphs(n)) {
        for (auto [rule, name] : {std::pair{StandardRule::Or, "or"}, {StandardRule::And, "and"},
                                  {StandardRule::Identity, "identity"}, {StandardRule::Threshold, "threshold"}}) {
          const Network net = standard_network(g, rule, 2);
          all_problems(net, all_configurations(net), fmt("n=%zu graph %zu %s", n, gi, name), tally);
          ++networks;
        }
        ++gi;
      }
    }
    Rng rng(5005);
    for (std::size_t i = 0; i < kProblemRandom; ++i) {
      const std::size_t n = 1 + draw(rng, 6);
      Graph g = random_partial_ktree(n, 2, 3, 30, rng);
      Alphabet a = random_alphabet(2 + draw(rng, 2), rng);
      // the four problems are posed for deterministic networks
      Network net = random_network(g, a, true, 50, rng);
      std::vector<Configuration> configs;
      for (int k = 0; k < 3; ++k) configs.push_back(random_configuration(net, rng));
      all_problems(net, configs, "random " + std::to_string(i), tally);
      ++networks;
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = error.empty() && secs < kProblemSeconds;
  std::ostringstream d;
  for (const auto& [name, t] : tally) {
    d << name << " " << t.agree << "/" << t.total << ", ";
    if (t.agree != t.total) {
      o.pass = false;
      if (error.empty()) error = "first mismatch " + t.first_bad;
    }
  }
  o.pass = o.pass && tally.size() == 4;
  o.detail = d.str() + fmt("%zu networks, %.1f s (limit %.0f s)", networks, secs, kProblemSeconds);
  if (!error.empty()) o.detail += "; " + error;
  return o;
}

// ---------------------------------------------------------------- 6

Outcome dominating_gadget() {
  const auto t0 = Clock::now();
  std::size_t total = 0, agree = 0, yes = 0;
  std::string first_bad;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const Graph& g : connected_graphs(n))
      for (std::size_t k : {1u, 2u}) {
        ++total;
        const auto gad = dominating_set_gadget(g, k);
        const auto dec = decide_dominating_gadget(gad);
        bool same = dec.satisfiable == brute_dominating_set(g, k);
        // the reported marking must be accepted by simulation
        if (dec.satisfiable) same = same && dominating_run_accepted(gad, dec.initial);
        if (same) ++agree;
        else if (first_bad.empty()) first_bad = fmt("n=%zu k=%zu", n, k);
        yes += dec.satisfiable;
      }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = agree == total && secs < kDominatingSeconds;
  o.detail = fmt("%zu/%zu (graph, k) pairs match brute force (%zu yes), %.1f s (limit %.0f s)", agree, total, yes, secs,
                 kDominatingSeconds);
  if (!first_bad.empty()) o.detail += "; first mismatch " + first_bad;
  return o;
}

// ---------------------------------------------------------------- 7

Outcome routing_load() {
  Rng rng(7007);
  std::size_t ok = 0;
  std::size_t max_load_ratio_num = 0, max_load_ratio_den = 1;
  std::string first_bad;
  for (std::size_t i = 0; i < kRoutingPairs; ++i) {
    const std::size_t m = 3 + draw(rng, 6);
    const std::size_t nv = 2 + draw(rng, m - 1);
    const auto arcs = random_digraph(nv, 2 + draw(rng, 2), draw(rng, 2 * nv + 1), rng);
    const Digraph d(arcs.begin(), arcs.end());
    const Graph host = Graph::grid(m, m);
    std::string why;
    try {
      const auto r = route(host, grid_bramble(m), nv, d);
      const std::size_t delta = std::max<std::size_t>(1, digraph_degree(nv, d));
      std::vector<std::size_t> hosted(host.n(), 0), load(host.n(), 0);
      for (Vertex v : r.mu) ++hosted[v];
      for (std::size_t e = 0; e < d.size() && why.empty(); ++e) {
        const auto& p = r.paths[e];
        if (p.empty() || p.front() != r.mu[d[e].first] || p.back() != r.mu[d[e].second]) why = "path endpoints";
        for (std::size_t s = 0; s + 1 < p.size() && why.empty(); ++s)
          if (!host.has_edge(p[s], p[s + 1])) why = "path leaves the host";
        std::set<Vertex> touched(p.begin(), p.end());
        for (Vertex v : touched) ++load[v];
      }
      for (Vertex v = 0; v < host.n() && why.empty(); ++v) {
        if (load[v] > 4 * delta) why = fmt("load %zu > 4*%zu at %u", load[v], delta, v);
        if (hosted[v] > 2) why = fmt("%zu digraph vertices on host vertex %u", hosted[v], v);
        if (load[v] * max_load_ratio_den > max_load_ratio_num * delta)
          max_load_ratio_num = load[v], max_load_ratio_den = delta;
      }
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (why.empty()) ++ok;
    else if (first_bad.empty()) first_bad = "pair " + std::to_string(i) + ": " + why;
  }
  Outcome o;
  o.pass = ok == kRoutingPairs;
  o.detail = fmt("%zu/%zu routings within load 4*Delta and two digraph vertices per host vertex (peak load/Delta %zu/%zu)",
                 ok, kRoutingPairs, max_load_ratio_num, max_load_ratio_den);
  if (!first_bad.empty()) o.detail += "; " + first_bad;
  return o;
}

// ---------------------------------------------------------------- 8

Configuration settle(const Network& net, Configuration x) {
  const std::size_t limit = net.n() * std::max<std::size_t>(net.alphabet().height(), 1) + 1;
  for (std::size_t s = 0; s <= limit; ++s) {
    Configuration y = step_deterministic(net, x);
    if (y == x) break;
    x = std::move(y);
  }
  return x;
}

Outcome sat_nilpotency() {
  Rng rng(8008);
  std::size_t ok = 0, sat = 0, starts = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < kSatCircuits; ++i) {
    const std::size_t inputs = 1 + draw(rng, 4);
    const Circuit c = random_sat_circuit(inputs, 1 + draw(rng, 5), rng);
    std::string why;
    try {
      const auto host = grid_host_for(c);
      const auto gad = sat_nilpotency_gadget(c, host.graph, host.bramble);
      const Configuration bottom(gad.net.n(), gad.bottom);
      const auto assignment = satisfying_assignment(c);
      if (assignment) {
        ++sat;
        const Configuration fp = nilpotency_configuration(gad, *assignment);
        if (step_deterministic(gad.net, fp) != fp) why = "satisfying assignment is not a fixed point";
        else if (std::find(fp.begin(), fp.end(), gad.bottom) != fp.end()) why = "fixed point contains bottom";
        else if (step_deterministic(gad.net, bottom) != bottom) why = "all-bottom is not fixed";
      } else {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << inputs) && why.empty(); ++x) {
          std::vector<bool> bits(inputs);
          for (std::size_t b = 0; b < inputs; ++b) bits[b] = (x >> b) & 1;
          const Configuration cfg = nilpotency_configuration(gad, bits);
          if (step_deterministic(gad.net, cfg) == cfg) why = "unsatisfiable circuit has a clean fixed point";
        }
        for (std::size_t k = 0; k < kSatStarts && why.empty(); ++k) {
          ++starts;
          if (settle(gad.net, random_configuration(gad.net, rng)) != bottom)
            why = "random start did not collapse to bottom (start " + std::to_string(k) + ")";
        }
      }
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (why.empty()) ++ok;
    else if (first_bad.empty()) first_bad = "circuit " + std::to_string(i) + ": " + why;
  }
  Outcome o;
  o.pass = ok == kSatCircuits && sat < kSatCircuits && sat > 0;
  o.detail = fmt("%zu/%zu circuits (%zu satisfiable with a clean fixed point, %zu unsatisfiable, %zu random starts "
                 "collapsed)",
                 ok, kSatCircuits, sat, kSatCircuits - sat, starts);
  if (!first_bad.empty()) o.detail += "; " + first_bad;
  return o;
}

// ---------------------------------------------------------------- 9

Outcome routed_prediction() {
  Rng rng(9009);
  std::size_t ok = 0, ones = 0, max_gates = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < kMonotoneCircuits; ++i) {
    const Circuit c = random_monotone_circuit(1 + draw(rng, 3), kMonotoneMaxGates, rng);
    max_gates = std::max(max_gates, c.gates.size());
    std::vector<bool> x(c.input_gates().size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = coin(rng, 50);
    std::string why;
    try {
      const bool expect = c.evaluate(x)[c.output_gates()[0]];
      ones += expect;
      const auto host = grid_host_for(c);
      const auto p = routed_prediction_gadget(c, host.graph, host.bramble, x, 0);
      const Orbit o = orbit(p.g.net, p.y0, p.t);
      const auto got = routed_prediction_output(p, o.steps.back());
      if (got != std::optional<bool>(expect)) why = "simulated output differs from the circuit";
      else if (p.spec_v.admits_states(o.steps.front()[p.v], o.steps.back()[p.v]) != expect)
        why = "prediction spec disagrees with the output";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (why.empty()) ++ok;
    else if (first_bad.empty()) first_bad = "circuit " + std::to_string(i) + ": " + why;
  }
  Outcome o;
  o.pass = ok == kMonotoneCircuits && max_gates <= kMonotoneMaxGates;
  o.detail = fmt("%zu/%zu outputs match circuit evaluation (%zu true, at most %zu gates)", ok, kMonotoneCircuits, ones,
                 max_gates);
  if (!first_bad.empty()) o.detail += "; " + first_bad;
  return o;
}

// ---------------------------------------------------------------- 10

bool same_shape(const TreeDecomposition& a, const TreeDecomposition& b) {
  return a.bags == b.bags && a.edges == b.edges && a.root == b.root;
}

// A second valid decomposition of the same graph: rerooted at the last bag, or
// with a duplicated leaf bag when there is only one.
TreeDecomposition alternative(TreeDecomposition d) {
  if (d.size() > 1) {
    d.root = d.size() - 1;
  } else {
    d.bags.push_back(d.bags.front());
    d.edges.push_back({0, 1});
  }
  return d;
}

Outcome determinism() {
  Rng rng(10010);
  std::size_t ok = 0, distinct = 0;
  std::string first_bad;
  const std::vector<std::size_t> jobs = {1, 2, 0};  // 0 = every core
  for (std::size_t i = 0; i < kDeterminismInstances; ++i) {
    Network net;
    Specification spec = random_small_spec(rng, net, 7, 3);
    const TreeDecomposition base = heuristic_decomposition(net.graph());
    std::vector<TreeDecomposition> decs = {binarize(base), binarize_balance(base)};
    if (same_shape(decs[0], decs[1])) decs[1] = alternative(decs[0]);
    distinct += !same_shape(decs[0], decs[1]);
    std::string why;
    try {
      std::optional<bool> answer;
      for (std::size_t di = 0; di < decs.size(); ++di) {
        std::optional<Orbit> reference;
        for (std::size_t j : jobs) {
          SolverOptions opts;
          opts.jobs = j;
          const Verdict v = check_spec(net, spec, decs[di], opts);
          record(net, spec, v, "determinism instance " + std::to_string(i));
          if (!answer) answer = v.satisfiable;
          if (v.satisfiable != *answer) why = fmt("decomposition %zu jobs %zu changed the answer", di, j);
          if (j == jobs.front()) reference = v.witness;
          else if (v.witness.has_value() != reference.has_value() ||
                   (v.witness && v.witness->steps != reference->steps))
            why = fmt("decomposition %zu jobs %zu changed the witness", di, j);
        }
      }
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (why.empty()) ++ok;
    else if (first_bad.empty()) first_bad = "instance " + std::to_string(i) + ": " + why;
  }
  Outcome o;
  o.pass = ok == kDeterminismInstances && distinct == kDeterminismInstances;
  o.detail = fmt("%zu/%zu instances identical across jobs {1, 2, all} and %zu/%zu with two distinct decompositions", ok,
                 kDeterminismInstances, distinct, kDeterminismInstances);
  if (!first_bad.empty()) o.detail += "; " + first_bad;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run: prints PASS or FAIL for each criterion"};
  std::vector<int> only;
  app.add_option("criteria", only, "Criteria to run (default: all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  if (only.empty())
    for (int c = 1; c <= 10; ++c) only.push_back(c);
  std::sort(only.begin(), only.end());
  only.erase(std::unique(only.begin(), only.end()), only.end());

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria = {
      {1, {"solver/oracle equivalence", solver_oracle_equivalence}},
      {2, {"witness soundness", witness_soundness}},
      {3, {"pumping bound", pumping_bound}},
      {4, {"balanced binary decomposition", decomposition_contract}},
      {5, {"canonical problems vs oracles", canonical_problems}},
      {6, {"dominating-set gadget", dominating_gadget}},
      {7, {"routing load", routing_load}},
      {8, {"SAT to nilpotency gadget", sat_nilpotency}},
      {9, {"routed prediction", routed_prediction}},
      {10, {"determinism across jobs and decompositions", determinism}},
  };
  // Witness soundness collects from every other criterion, so it runs last.
  std::vector<int> order;
  for (int c : only)
    if (c != 2) order.push_back(c);
  if (std::find(only.begin(), only.end(), 2) != only.end()) order.push_back(2);

  std::map<int, Outcome> results;
  for (int c : order) {
    const auto t0 = Clock::now();
    std::fprintf(stderr, "running %d (%s)...\n", c, criteria.at(c).first);
    try {
      results[c] = criteria.at(c).second();
    } catch (const std::exception& e) {
      results[c] = {false, std::string("aborted: ") + e.what()};
    }
    std::fprintf(stderr, "  done in %.1f s\n", seconds_since(t0));
  }
  int failed = 0;
  for (const auto& [c, r] : results) {
    std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", c, criteria.at(c).first, r.detail.c_str());
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}
