#include "fanspec/fanspec.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

#include "fanspec/oracle.hpp"
#include "fanspec/problems.hpp"
#include "fanspec/validity.hpp"
#include "internal/json_io.hpp"

using namespace fanspec;
using jio::json;
using jio::Where;

struct fs_network {
  Network net;
};
struct fs_spec {
  Specification spec;
};
struct fs_decomposition {
  TreeDecomposition d;
};

namespace {

thread_local std::string g_last_error;

fs_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return FS_ERR_PARSE;
    case ErrorKind::Validation: return FS_ERR_VALIDATION;
    case ErrorKind::Resource: return FS_ERR_RESOURCE;
    case ErrorKind::Budget: return FS_ERR_BUDGET;
    case ErrorKind::Argument: return FS_ERR_ARGUMENT;
    case ErrorKind::Internal: return FS_ERR_INTERNAL;
  }
  return FS_ERR_INTERNAL;
}

struct Disagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
fs_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return FS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const Disagreement& e) {
    g_last_error = e.what();
    return FS_ERR_DISAGREEMENT;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return FS_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FS_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FS_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ArgumentError(std::string(what) + " must not be null");
}

char* give(const json& j) {
  const std::string s = jio::pretty(j);
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string origin_or(const char* origin, const char* fallback) { return origin ? origin : fallback; }

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  return (end && *end == '\0' && v > 0) ? v : fallback;
}

fs_options resolve(const fs_options* opts) {
  if (opts) return *opts;
  fs_options o;
  fs_options_default(&o);
  return o;
}

SolverOptions solver_options(const fs_options& o) {
  SolverOptions s;
  s.jobs = o.jobs;
  s.bag_cap = o.bag_cap;
  s.work_budget = o.work_budget;
  s.compress_horizon = o.compress_horizon != 0;
  s.mode = o.faithful ? TableMode::Faithful : TableMode::Projected;
  return s;
}

OracleBudget oracle_budget(const fs_options& o) {
  OracleBudget b;
  b.max_configs = o.oracle_max_configs;
  b.max_nodes = o.oracle_max_nodes;
  b.timeout_ms = o.oracle_timeout_ms;
  return b;
}

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs the solver and/or the oracle as the options ask. The solver result is
// reported when it ran; with both engines the answers must agree.
template <class SolverFn, class OracleFn>
bool run_engines(const fs_options& o, json& out, SolverFn&& solver, OracleFn&& oracle) {
  const auto t0 = Clock::now();
  bool answer = false;
  json timing = json::object();
  if (o.engine != FS_ENGINE_ORACLE) {
    answer = solver(out);
    timing["solver_ms"] = std::round(ms_since(t0) * 1000) / 1000;
  }
  if (o.engine != FS_ENGINE_SOLVER) {
    const auto t1 = Clock::now();
    json oracle_out = json::object();
    const bool oracle_answer = oracle(oracle_out);
    timing["oracle_ms"] = std::round(ms_since(t1) * 1000) / 1000;
    if (o.engine == FS_ENGINE_ORACLE) {
      out = std::move(oracle_out);
      answer = oracle_answer;
    } else if (oracle_answer != answer) {
      throw Disagreement(std::string("solver answered ") + (answer ? "yes" : "no") + ", oracle answered " +
                         (oracle_answer ? "yes" : "no"));
    } else {
      out["oracle_agrees"] = true;
    }
  }
  out["engine"] = o.engine == FS_ENGINE_SOLVER ? "solver" : o.engine == FS_ENGINE_ORACLE ? "oracle" : "both";
  out["timing"] = std::move(timing);
  return answer;
}

Configuration config_text(const Network& net, const char* text, const char* origin) {
  need(text, origin);
  return jio::config_from(jio::parse_text(text, origin), net, Where(origin));
}

json orbit_or_null(const std::optional<Orbit>& o, const Alphabet& a) {
  return o ? jio::orbit_to(*o, a) : json(nullptr);
}

bool witness_ok(const Network& net, const Specification& spec, const Orbit& o) {
  if (o.horizon() != spec.horizon() || o.steps.empty()) return false;
  for (const auto& c : o.steps)
    if (c.size() != net.n()) return false;
  if (!orbit_replays(net, o)) return false;
  for (Vertex v = 0; v < net.n(); ++v)
    if (!spec.admits_sequence(v, o.node_sequence(v))) return false;
  return true;
}

std::vector<bool> bits_from(const json& j, std::size_t count, const Where& w) {
  if (!j.is_array()) w.parse_fail("expected an array of booleans");
  if (j.size() != count) w.fail("expected " + std::to_string(count) + " input bits, got " + std::to_string(j.size()));
  std::vector<bool> bits;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_boolean())
      bits.push_back(j[i].get<bool>());
    else if (j[i].is_number_integer() && (j[i] == 0 || j[i] == 1))
      bits.push_back(j[i] == 1);
    else
      w.idx(i).parse_fail("expected a boolean");
  }
  return bits;
}

json bits_to(const std::vector<bool>& b) {
  json j = json::array();
  for (bool x : b) j.push_back(x);
  return j;
}

json schedule_to(const std::vector<std::vector<Vertex>>& s) {
  json j = json::array();
  for (const auto& step : s) j.push_back(step);
  return j;
}

json gadget_bundle(const std::string& kind, const json& params) {
  const Where w("params");
  static const std::set<std::string> kinds = {"dominating-set", "sat-nilpotency", "circuit-predecessor",
                                              "circuit-async", "routed-prediction"};
  if (!kinds.count(kind))
    throw ArgumentError("unknown gadget kind '" + kind +
                        "' (dominating-set, sat-nilpotency, circuit-predecessor, circuit-async, routed-prediction)");
  if (!params.is_object()) w.parse_fail("expected an object");
  json gen = {{"kind", kind}};
  json bundle = {{"kind", kind}};
  if (kind == "dominating-set") {
    const Graph g = jio::graph_from(jio::field(params, "graph", w), w.at("graph"));
    const std::size_t k = jio::as_index(jio::field(params, "k", w), w.at("k"));
    gen["graph"] = params["graph"];
    gen["k"] = k;
    DominatingGadget gad = dominating_set_gadget(g, k);
    gad.net.set_generator(gen.dump());
    bundle["network"] = jio::network_to(gad.net);
    bundle["spec"] = jio::spec_to(gad.spec, gad.net.alphabet());
    bundle["t"] = gad.t;
    bundle["rows"] = k + 2;
    bundle["columns"] = gad.columns;
    if (params.value("decide", false)) {
      const DominatingDecision dec = decide_dominating_gadget(gad);
      bundle["satisfiable"] = dec.satisfiable;
      bundle["selection"] = dec.selection;
      bundle["initial"] = dec.satisfiable ? jio::config_to(dec.initial, gad.net.alphabet()) : json(nullptr);
    }
    return bundle;
  }
  const Circuit c = jio::circuit_from(jio::field(params, "circuit", w), w.at("circuit"));
  gen["circuit"] = jio::circuit_to(c);
  Graph host;
  Bramble b;
  if (params.contains("host")) {
    gen["host"] = params["host"];
    if (params.contains("bramble")) gen["bramble"] = params["bramble"];
    host = jio::graph_from(params["host"], w.at("host"));
    if (params.contains("bramble")) {
      b = jio::bramble_from(params["bramble"], w.at("bramble"));
    } else if (params["host"].contains("grid")) {
      b = grid_bramble(static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(host.n())))));
    } else {
      w.at("bramble").parse_fail("missing (required for a non-grid host)");
    }
    const BrambleReport rep = validate_bramble(host, b);
    if (!rep.ok()) w.at("bramble").fail(rep.summary(3));
  } else {
    CircuitHost h = grid_host_for(c);
    host = std::move(h.graph);
    b = std::move(h.bramble);
  }
  const auto sat = satisfying_assignment(c);
  if (kind == "sat-nilpotency") {
    NilpotencyGadget gad = sat_nilpotency_gadget(c, host, b);
    gad.net.set_generator(gen.dump());
    bundle["network"] = jio::network_to(gad.net);
    bundle["routing"] = jio::routing_to(gad.routing);
    bundle["components"] = gad.components;
    bundle["bottom"] = gad.net.alphabet().name(gad.bottom);
    bundle["circuit_satisfiable"] = sat.has_value();
    bundle["expected_nilpotent"] = !sat.has_value();
    if (sat) {
      bundle["assignment"] = bits_to(*sat);
      bundle["fixed_point"] = jio::config_to(nilpotency_configuration(gad, *sat), gad.net.alphabet());
    }
  } else if (kind == "circuit-predecessor") {
    PredecessorGadget gad = circuit_predecessor_gadget(c, host, b);
    gad.g.net.set_generator(gen.dump());
    bundle["network"] = jio::network_to(gad.g.net);
    bundle["routing"] = jio::routing_to(gad.g.routing);
    bundle["configuration"] = jio::config_to(gad.target, gad.g.net.alphabet());
    bundle["t"] = 1;
    bundle["expected_predecessor"] = sat.has_value();
    if (sat) {
      bundle["assignment"] = bits_to(*sat);
      bundle["predecessor"] = jio::config_to(predecessor_configuration(gad, *sat), gad.g.net.alphabet());
    }
  } else if (kind == "circuit-async") {
    AsyncGadget gad = circuit_async_gadget(c, host, b);
    gad.g.net.set_generator(gen.dump());
    bundle["network"] = jio::network_to(gad.g.net);
    bundle["routing"] = jio::routing_to(gad.g.routing);
    bundle["c0"] = jio::config_to(gad.c0, gad.g.net.alphabet());
    bundle["c1"] = jio::config_to(gad.c1, gad.g.net.alphabet());
    bundle["pre_input_hosts"] = gad.pre_input_host;
    bundle["expected_reachable"] = sat.has_value();
    if (sat) {
      bundle["assignment"] = bits_to(*sat);
      bundle["schedule"] = schedule_to(async_schedule(gad, *sat));
    }
  } else {
    const std::vector<bool> inputs =
        bits_from(jio::field(params, "inputs", w), c.input_gates().size(), w.at("inputs"));
    const std::size_t output = params.contains("output") ? jio::as_index(params["output"], w.at("output")) : 0;
    RoutedPrediction p = routed_prediction_gadget(c, host, b, inputs, output);
    p.g.net.set_generator(gen.dump());
    const Alphabet& a = p.g.net.alphabet();
    bundle["network"] = jio::network_to(p.g.net);
    bundle["routing"] = jio::routing_to(p.g.routing);
    bundle["configuration"] = jio::config_to(p.y0, a);
    bundle["node"] = p.v;
    json ns = json::object();
    if (p.spec_v.initial) ns["initial"] = json::array();
    if (p.spec_v.initial)
      for (State s : *p.spec_v.initial) ns["initial"].push_back(a.name(s));
    if (p.spec_v.final) ns["final"] = json::array();
    if (p.spec_v.final)
      for (State s : *p.spec_v.final) ns["final"].push_back(a.name(s));
    bundle["node_spec"] = std::move(ns);
    bundle["t"] = p.t;
    bundle["expected_output"] = static_cast<bool>(c.evaluate(inputs)[c.output_gates().at(output)]);
  }
  return bundle;
}

}  // namespace

extern "C" {

const char* fs_version(void) { return "1.0.0"; }
const char* fs_last_error(void) { return g_last_error.c_str(); }
void fs_free_string(char* s) { std::free(s); }

void fs_options_default(fs_options* opts) {
  if (!opts) return;
  const OracleBudget b = oracle_budget_from_env();
  opts->jobs = 0;
  opts->bag_cap = static_cast<std::size_t>(env_u64("FANSPEC_BAG_CAP", SolverOptions{}.bag_cap));
  opts->work_budget = env_u64("FANSPEC_WORK_BUDGET", 0);
  opts->compress_horizon = 1;
  opts->faithful = 0;
  opts->engine = FS_ENGINE_SOLVER;
  opts->oracle_max_configs = b.max_configs;
  opts->oracle_max_nodes = b.max_nodes;
  opts->oracle_timeout_ms = b.timeout_ms;
}

fs_status fs_network_read(const char* text, const char* origin, fs_network** out) {
  return guarded([&] {
    need(text, "network text");
    need(out, "out");
    *out = nullptr;
    const std::string o = origin_or(origin, "network");
    auto* h = new fs_network{jio::network_from(jio::parse_text(text, o), Where(o))};
    *out = h;
  });
}

fs_status fs_network_write(const fs_network* net, char** text) {
  return guarded([&] {
    need(net, "network");
    need(text, "out");
    *text = give(jio::network_to(net->net));
  });
}

fs_status fs_network_info(const fs_network* net, char** text) {
  return guarded([&] {
    need(net, "network");
    need(text, "out");
    const Network& n = net->net;
    *text = give({{"n", n.n()},
                  {"states", n.alphabet().size()},
                  {"max_degree", n.graph().max_degree()},
                  {"height", n.alphabet().height()},
                  {"deterministic", n.deterministic()},
                  {"edges", n.graph().edges().size()}});
  });
}

fs_status fs_network_graph(const fs_network* net, char** text) {
  return guarded([&] {
    need(net, "network");
    need(text, "out");
    *text = give(jio::graph_to(net->net.graph()));
  });
}

void fs_network_free(fs_network* net) { delete net; }

fs_status fs_spec_read(const fs_network* net, const char* text, const char* origin, long long horizon,
                       fs_spec** out) {
  return guarded([&] {
    need(net, "network");
    need(text, "specification text");
    need(out, "out");
    *out = nullptr;
    const std::string o = origin_or(origin, "specification");
    std::optional<std::size_t> t;
    if (horizon >= 0) t = static_cast<std::size_t>(horizon);
    *out = new fs_spec{jio::spec_from(jio::parse_text(text, o), net->net, Where(o), t)};
  });
}

void fs_spec_free(fs_spec* spec) { delete spec; }

fs_status fs_decomposition_read(const char* text, const char* origin, fs_decomposition** out) {
  return guarded([&] {
    need(text, "decomposition text");
    need(out, "out");
    *out = nullptr;
    const std::string o = origin_or(origin, "decomposition");
    *out = new fs_decomposition{jio::decomposition_from(jio::parse_text(text, o), Where(o))};
  });
}

void fs_decomposition_free(fs_decomposition* d) { delete d; }

fs_status fs_check_spec(const fs_network* net, const fs_spec* spec, const fs_decomposition* d, const fs_options* opts,
                        char** result, int* answer) {
  return guarded([&] {
    need(net, "network");
    need(spec, "specification");
    need(result, "out");
    const fs_options o = resolve(opts);
    const Network& n = net->net;
    TreeDecomposition dec;
    if (d) {
      require_valid(n.graph(), d->d);
      dec = d->d;
    } else {
      dec = binarize(heuristic_decomposition(n.graph()));
    }
    json out;
    const bool yes = run_engines(
        o, out,
        [&](json& j) {
          const Verdict v = check_spec(n, spec->spec, dec, solver_options(o));
          j = jio::verdict_to(v, n.alphabet());
          return v.satisfiable;
        },
        [&](json& j) {
          const auto w = brute_spec_witness(n, spec->spec, oracle_budget(o));
          j["satisfiable"] = w.has_value();
          j["witness"] = orbit_or_null(w, n.alphabet());
          return w.has_value();
        });
    *result = give(out);
    if (answer) *answer = yes;
  });
}

fs_status fs_predict(const fs_network* net, const char* config_json, uint32_t node, const char* node_spec_json,
                     size_t t, const fs_options* opts, char** result, int* answer) {
  return guarded([&] {
    need(net, "network");
    need(result, "out");
    need(node_spec_json, "node specification");
    const fs_options o = resolve(opts);
    const Network& n = net->net;
    const Configuration c = config_text(n, config_json, "configuration");
    if (node >= n.n()) throw ValidationError("node " + std::to_string(node) + " is not in the network");
    const json ns = jio::parse_text(node_spec_json, "node specification");
    if (!ns.is_object()) Where("node specification").parse_fail("expected an object");
    json wrap = {{"t", t}, {"nodes", json::object()}, {"constraints", json::object()}};
    const std::string key = std::to_string(node);
    json cons = json::object();
    for (auto it = ns.begin(); it != ns.end(); ++it) {
      if (it.key() == "traces")
        wrap["nodes"][key] = it.value();
      else
        cons[it.key()] = it.value();
    }
    if (!cons.empty()) wrap["constraints"][key] = cons;
    const Specification sv = jio::spec_from(wrap, n, Where("node specification"), t);
    const NodeSpec spec_v = sv.find(node) ? *sv.find(node) : NodeSpec{};
    json out;
    const bool yes = run_engines(
        o, out,
        [&](json& j) {
          const Verdict v = solve_prediction(n, c, node, spec_v, t, solver_options(o));
          j = jio::verdict_to(v, n.alphabet());
          return v.satisfiable;
        },
        [&](json& j) {
          Specification full(t);
          for (Vertex u = 0; u < n.n(); ++u) full.set_initial(u, {c[u]});
          NodeSpec& target = full.node(node);
          const StateSet first = {c[node]};
          target = spec_v;
          if (target.initial) {
            StateSet keep;
            for (State s : *target.initial)
              if (s == c[node]) keep.push_back(s);
            target.initial = keep;
          } else {
            target.initial = first;
          }
          const auto w = brute_spec_witness(n, full, oracle_budget(o));
          j["satisfiable"] = w.has_value();
          j["witness"] = orbit_or_null(w, n.alphabet());
          return w.has_value();
        });
    out["node"] = node;
    *result = give(out);
    if (answer) *answer = yes;
  });
}

fs_status fs_predecessor(const fs_network* net, const char* config_json, size_t t, const fs_options* opts,
                         char** result, int* answer) {
  return guarded([&] {
    need(net, "network");
    need(result, "out");
    const fs_options o = resolve(opts);
    const Network& n = net->net;
    const Configuration c = config_text(n, config_json, "configuration");
    json out;
    const bool yes = run_engines(
        o, out,
        [&](json& j) {
          const PredecessorResult r = solve_predecessor(n, c, t, solver_options(o));
          j = jio::verdict_to(r.verdict, n.alphabet());
          j["predecessor"] = r.predecessor ? jio::config_to(*r.predecessor, n.alphabet()) : json(nullptr);
          return r.verdict.satisfiable;
        },
        [&](json& j) {
          const auto p = brute_predecessor(n, c, t, oracle_budget(o));
          j["satisfiable"] = p.has_value();
          j["predecessor"] = p ? jio::config_to(*p, n.alphabet()) : json(nullptr);
          return p.has_value();
        });
    out["t"] = t;
    *result = give(out);
    if (answer) *answer = yes;
  });
}

fs_status fs_nilpotency(const fs_network* net, const fs_options* opts, char** result, int* answer) {
  return guarded([&] {
    need(net, "network");
    need(result, "out");
    const fs_options o = resolve(opts);
    const Network& n = net->net;
    json out;
    const bool yes = run_engines(
        o, out,
        [&](json& j) {
          const NilpotencyResult r = solve_nilpotency(n, solver_options(o));
          j["nilpotent"] = r.nilpotent;
          j["horizon"] = r.horizon;
          j["fixed_point"] = r.fixed_point ? jio::config_to(*r.fixed_point, n.alphabet()) : json(nullptr);
          json fs = json::object();
          for (Vertex v = 0; v < r.final_states.size(); ++v) {
            json names = json::array();
            for (State s : r.final_states[v]) names.push_back(n.alphabet().name(s));
            fs[std::to_string(v)] = std::move(names);
          }
          j["final_states"] = std::move(fs);
          return r.nilpotent;
        },
        [&](json& j) {
          const bool r = brute_nilpotency(n, oracle_budget(o));
          j["nilpotent"] = r;
          return r;
        });
    *result = give(out);
    if (answer) *answer = yes;
  });
}

fs_status fs_async_reach(const fs_network* net, const char* c0_json, const char* c1_json, const fs_options* opts,
                         char** result, int* answer) {
  return guarded([&] {
    need(net, "network");
    need(result, "out");
    const fs_options o = resolve(opts);
    const Network& n = net->net;
    const Configuration c0 = config_text(n, c0_json, "c0");
    const Configuration c1 = config_text(n, c1_json, "c1");
    json out;
    const bool yes = run_engines(
        o, out,
        [&](json& j) {
          const AsyncReachResult r = solve_async_reachability(n, c0, c1, solver_options(o));
          j = jio::verdict_to(r.verdict, n.alphabet());
          j["schedule"] = r.verdict.satisfiable ? schedule_to(r.schedule) : json(nullptr);
          return r.verdict.satisfiable;
        },
        [&](json& j) {
          const auto path = brute_async_path(n, c0, c1, oracle_budget(o));
          j["satisfiable"] = path.has_value();
          if (path) {
            json p = json::array();
            for (const auto& c : *path) p.push_back(jio::config_to(c, n.alphabet()));
            j["path"] = std::move(p);
          } else {
            j["path"] = nullptr;
          }
          return path.has_value();
        });
    *result = give(out);
    if (answer) *answer = yes;
  });
}

fs_status fs_simulate(const fs_network* net, const char* config_json, size_t t, char** orbit_json) {
  return guarded([&] {
    need(net, "network");
    need(orbit_json, "out");
    const Configuration c = config_text(net->net, config_json, "configuration");
    const Orbit o = orbit(net->net, c, t);
    json j = jio::orbit_to(o, net->net.alphabet());
    j["final"] = jio::config_to(o.steps.back(), net->net.alphabet());
    *orbit_json = give(j);
  });
}

fs_status fs_verify_witness(const fs_network* net, const fs_spec* spec, const char* verdict_json, int* ok) {
  return guarded([&] {
    need(net, "network");
    need(spec, "specification");
    need(verdict_json, "verdict text");
    need(ok, "out");
    const json j = jio::parse_text(verdict_json, "verdict");
    const Where w("verdict");
    const json& wit = jio::field(j, "witness", w);
    if (wit.is_null()) throw ValidationError("verdict: the verdict carries no witness");
    const Orbit o = jio::orbit_from(wit, net->net, w.at("witness"));
    *ok = witness_ok(net->net, spec->spec, o);
  });
}

fs_status fs_decompose(const char* graph_json, fs_decompose_mode mode, char** out) {
  return guarded([&] {
    need(graph_json, "graph text");
    need(out, "out");
    const Graph g = jio::graph_from(jio::parse_text(graph_json, "graph"), Where("graph"));
    TreeDecomposition d = heuristic_decomposition(g);
    if (mode == FS_DECOMPOSE_BINARY)
      d = binarize(d);
    else if (mode == FS_DECOMPOSE_BALANCED)
      d = binarize_balance(d);
    else if (mode != FS_DECOMPOSE_HEURISTIC)
      throw ArgumentError("unknown decomposition mode");
    json j = jio::decomposition_to(d);
    j["width"] = d.width();
    if (d.root) j["depth"] = d.depth();
    *out = give(j);
  });
}

fs_status fs_decomposition_check(const char* graph_json, const char* decomposition_json, char** report, int* valid) {
  return guarded([&] {
    need(graph_json, "graph text");
    need(decomposition_json, "decomposition text");
    need(report, "out");
    const Graph g = jio::graph_from(jio::parse_text(graph_json, "graph"), Where("graph"));
    const TreeDecomposition d =
        jio::decomposition_from(jio::parse_text(decomposition_json, "decomposition"), Where("decomposition"));
    const DecompositionCheck chk = validate_decomposition(g, d);
    json issues = json::array();
    for (const auto& i : chk.issues) issues.push_back(i.message);
    json j = {{"valid", chk.ok()}, {"width", chk.width ? json(*chk.width) : json(nullptr)}};
    if (chk.ok() && d.root) {
      j["binary"] = d.is_binary();
      j["depth"] = d.depth();
    }
    j["issues"] = std::move(issues);
    *report = give(j);
    if (valid) *valid = chk.ok();
  });
}

fs_status fs_route(const char* graph_json, const char* bramble_json, const char* digraph_json, char** out) {
  return guarded([&] {
    need(graph_json, "graph text");
    need(bramble_json, "bramble text");
    need(digraph_json, "digraph text");
    need(out, "out");
    const Graph g = jio::graph_from(jio::parse_text(graph_json, "graph"), Where("graph"));
    const Bramble b = jio::bramble_from(jio::parse_text(bramble_json, "bramble"), Where("bramble"));
    const BrambleReport rep = validate_bramble(g, b);
    if (!rep.ok()) throw ValidationError("bramble: " + rep.summary(3));
    const json dj = jio::parse_text(digraph_json, "digraph");
    const Where w("digraph");
    if (!dj.is_array()) w.parse_fail("expected an array of [source, target] pairs");
    Digraph d;
    for (std::size_t i = 0; i < dj.size(); ++i) {
      if (!dj[i].is_array() || dj[i].size() != 2) w.idx(i).parse_fail("expected [source, target]");
      const std::size_t a = jio::as_index(dj[i][0], w.idx(i)), c = jio::as_index(dj[i][1], w.idx(i));
      if (a >= b.size() || c >= b.size()) w.idx(i).fail("vertex outside the bramble's element range");
      d.emplace_back(a, c);
    }
    const RoutedEmbedding r = route(g, b, b.size(), d);
    json j = jio::routing_to(r);
    j["digraph_degree"] = digraph_degree(b.size(), d);
    *out = give(j);
  });
}

fs_status fs_gadget(const char* kind, const char* params_json, char** out) {
  return guarded([&] {
    need(kind, "kind");
    need(params_json, "params text");
    need(out, "out");
    *out = give(gadget_bundle(kind, jio::parse_text(params_json, "params")));
  });
}

fs_status fs_random_instance(uint64_t seed, const char* params_json, char** out) {
  return guarded([&] {
    need(out, "out");
    const json p = params_json ? jio::parse_text(params_json, "params") : json::object();
    const Where w("params");
    auto get = [&](const char* key, std::size_t fallback) {
      return p.contains(key) ? jio::as_index(p[key], w.at(key)) : fallback;
    };
    const std::size_t n = get("n", 5), width = get("width", 2), q = get("states", 2), deg = get("max_degree", 3),
                      t = get("t", 3);
    if (n == 0 || q < 2 || q > 8) throw ArgumentError("need n >= 1 and 2 <= states <= 8");
    const bool det = p.value("deterministic", true);
    Rng rng(seed);
    const Graph g = random_partial_ktree(n, width, deg, 20, rng);
    const Alphabet a = random_alphabet(q, rng);
    const Network net = random_network(g, a, det, 50, rng);
    const Specification spec = random_spec(net, t, rng);
    *out = give({{"seed", seed}, {"network", jio::network_to(net)}, {"spec", jio::spec_to(spec, net.alphabet())}});
  });
}

}  // extern "C"
