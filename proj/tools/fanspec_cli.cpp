// Command-line front end. Talks to the library only through fanspec.h.
//
// Exit codes: 0 yes / success, 1 no, 2 usage, parse or validation error,
// 3 resource or budget exceeded, 4 solver and oracle disagree, 5 internal.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fanspec/fanspec.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kYes = 0, kNo = 1, kUsage = 2, kResource = 3, kDisagree = 4, kInternal = 5 };

struct Failure {
  int code;
  std::string message;
};

int exit_for(fs_status s) {
  switch (s) {
    case FS_OK: return kYes;
    case FS_ERR_PARSE:
    case FS_ERR_VALIDATION:
    case FS_ERR_ARGUMENT: return kUsage;
    case FS_ERR_RESOURCE:
    case FS_ERR_BUDGET: return kResource;
    case FS_ERR_DISAGREEMENT: return kDisagree;
    default: return kInternal;
  }
}

void check(fs_status s) {
  if (s != FS_OK) throw Failure{exit_for(s), fs_last_error()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, path + ": cannot open file"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { fs_free_string(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using NetHandle = Handle<fs_network, fs_network_free>;
using SpecHandle = Handle<fs_spec, fs_spec_free>;
using DecompHandle = Handle<fs_decomposition, fs_decomposition_free>;

struct Args {
  std::string net, spec, decomp, config, c0, c1, node_spec, graph, bramble, digraph, verdict, out, params, circuit,
      host, inputs, emit_dir, mode = "binary", check_decomp;
  std::optional<long long> t;
  std::size_t node = 0, k = 1, output = 0, jobs = 0;
  std::optional<std::size_t> bag_cap;
  std::uint64_t work_budget = 0, seed = 1;
  std::optional<std::uint64_t> oracle_max_configs, oracle_max_nodes, oracle_timeout_ms;
  bool oracle = false, no_compress = false, faithful = false, decide = false;
  std::size_t rand_n = 5, rand_width = 2, rand_states = 2, rand_degree = 3;
  bool nondeterministic = false;
};

fs_options options_from(const Args& a, fs_engine engine) {
  fs_options o;
  fs_options_default(&o);
  o.jobs = a.jobs;
  if (a.bag_cap) o.bag_cap = *a.bag_cap;
  if (a.work_budget) o.work_budget = a.work_budget;
  o.compress_horizon = a.no_compress ? 0 : 1;
  o.faithful = a.faithful ? 1 : 0;
  o.engine = engine;
  if (a.oracle_max_configs) o.oracle_max_configs = *a.oracle_max_configs;
  if (a.oracle_max_nodes) o.oracle_max_nodes = *a.oracle_max_nodes;
  if (a.oracle_timeout_ms) o.oracle_timeout_ms = *a.oracle_timeout_ms;
  return o;
}

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw Failure{kUsage, a.out + ": cannot write file"};
  f << text;
}

void load_net(const Args& a, NetHandle& net) {
  if (a.net.empty()) throw Failure{kUsage, "--net is required"};
  check(fs_network_read(slurp(a.net).c_str(), a.net.c_str(), &net.p));
}

std::string need_file(const std::string& path, const char* flag) {
  if (path.empty()) throw Failure{kUsage, std::string(flag) + " is required"};
  return slurp(path);
}

// Decision problems share this tail: print the JSON result, map the answer.
int decided(const Args& a, fs_status s, OwnedString& result, const int& answer) {
  check(s);
  emit(a, result.str());
  return answer ? kYes : kNo;
}

int run_problem(const std::string& problem, const Args& a, fs_engine engine) {
  NetHandle net;
  load_net(a, net);
  const fs_options o = options_from(a, engine);
  OwnedString result;
  int answer = 0;
  if (problem == "check-spec") {
    SpecHandle spec;
    check(fs_spec_read(net.p, need_file(a.spec, "--spec").c_str(), a.spec.c_str(), a.t.value_or(-1), &spec.p));
    DecompHandle d;
    if (!a.decomp.empty()) check(fs_decomposition_read(slurp(a.decomp).c_str(), a.decomp.c_str(), &d.p));
    return decided(a, fs_check_spec(net.p, spec.p, d.p, &o, &result.p, &answer), result, answer);
  }
  if (problem == "predict") {
    if (!a.t) throw Failure{kUsage, "--t is required"};
    const std::string ns = a.node_spec.empty() ? std::string("{}") : slurp(a.node_spec);
    return decided(a,
                   fs_predict(net.p, need_file(a.config, "--config").c_str(), static_cast<uint32_t>(a.node),
                              ns.c_str(), static_cast<size_t>(*a.t), &o, &result.p, &answer),
                   result, answer);
  }
  if (problem == "predecessor") {
    return decided(a,
                   fs_predecessor(net.p, need_file(a.config, "--config").c_str(),
                                  static_cast<size_t>(a.t.value_or(1)), &o, &result.p, &answer),
                   result, answer);
  }
  if (problem == "nilpotency") return decided(a, fs_nilpotency(net.p, &o, &result.p, &answer), result, answer);
  if (problem == "async-reach") {
    return decided(a,
                   fs_async_reach(net.p, need_file(a.c0, "--c0").c_str(), need_file(a.c1, "--c1").c_str(), &o,
                                  &result.p, &answer),
                   result, answer);
  }
  throw Failure{kUsage, "unknown problem '" + problem + "'"};
}

// Reads a JSON file for splicing into gadget parameters.
json json_file(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw Failure{kUsage, path + ": " + e.what()};
  }
}

int run_gadget(const std::string& kind, const Args& a) {
  json params = a.params.empty() ? json::object() : json_file(a.params);
  if (!a.graph.empty()) params["graph"] = json_file(a.graph);
  if (!a.circuit.empty()) params["circuit"] = json_file(a.circuit);
  if (!a.host.empty()) params["host"] = json_file(a.host);
  if (!a.bramble.empty()) params["bramble"] = json_file(a.bramble);
  if (kind == "dominating-set" && !params.contains("k")) params["k"] = a.k;
  if (a.decide) params["decide"] = true;
  if (!a.inputs.empty()) {
    json bits = json::array();
    for (char ch : a.inputs) {
      if (ch == '0' || ch == '1')
        bits.push_back(ch == '1');
      else if (ch != ',' && ch != ' ')
        throw Failure{kUsage, "--inputs takes a bit string such as 101"};
    }
    params["inputs"] = bits;
  }
  if (kind == "routed-prediction" && !params.contains("output")) params["output"] = a.output;
  OwnedString bundle;
  check(fs_gadget(kind.c_str(), params.dump().c_str(), &bundle.p));
  const std::string text = bundle.str();
  if (!a.emit_dir.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(a.emit_dir, ec);
    if (ec) throw Failure{kUsage, a.emit_dir + ": " + ec.message()};
    const json b = json::parse(text);
    for (const char* key : {"network", "spec", "configuration", "c0", "c1", "node_spec", "routing", "initial",
                            "predecessor", "fixed_point", "schedule"}) {
      if (!b.contains(key) || b[key].is_null()) continue;
      json doc = b[key];
      if (std::string(key) == "spec" && b.contains("t")) doc["t"] = b["t"];
      std::ofstream f(fs::path(a.emit_dir) / (std::string(key) + ".json"), std::ios::binary);
      if (!f) throw Failure{kUsage, a.emit_dir + ": cannot write " + key + ".json"};
      f << doc.dump(2) << "\n";
    }
  }
  emit(a, text);
  return kYes;
}

void add_budget_flags(CLI::App* sc, Args& a) {
  sc->add_option("--jobs", a.jobs, "Worker threads (0 = all cores)");
  sc->add_option("--bag-cap", a.bag_cap, "Partial traces kept per bag (env FANSPEC_BAG_CAP)");
  sc->add_option("--work-budget", a.work_budget, "Search steps before giving up (0 = unlimited)");
  sc->add_flag("--no-compress", a.no_compress, "Solve constraint-only specifications at their full horizon");
  sc->add_flag("--faithful", a.faithful, "Keep full bag tables (slow; for cross-checking)");
  sc->add_option("--oracle-max-configs", a.oracle_max_configs, "Oracle limit on |Q|^n (env FANSPEC_ORACLE_MAX_CONFIGS)");
  sc->add_option("--oracle-max-nodes", a.oracle_max_nodes, "Oracle limit on explored orbit nodes (env FANSPEC_ORACLE_MAX_NODES)");
  sc->add_option("--oracle-timeout-ms", a.oracle_timeout_ms, "Oracle wall-clock limit (env FANSPEC_ORACLE_TIMEOUT_MS)");
}

void add_problem_flags(CLI::App* sc, Args& a, const std::string& problem) {
  sc->add_option("--net", a.net, "Network file")->required()->check(CLI::ExistingFile);
  if (problem == "check-spec" || problem == "any") {
    sc->add_option("--spec", a.spec, "Specification file")->check(CLI::ExistingFile);
    sc->add_option("--decomp", a.decomp, "Tree decomposition file (default: min-fill)")->check(CLI::ExistingFile);
  }
  if (problem == "predict" || problem == "predecessor" || problem == "any")
    sc->add_option("--config", a.config, "Configuration file")->check(CLI::ExistingFile);
  if (problem == "predict" || problem == "any") {
    sc->add_option("--node", a.node, "Observed node");
    sc->add_option("--node-spec", a.node_spec, "Admissible traces of the observed node")->check(CLI::ExistingFile);
  }
  if (problem == "async-reach" || problem == "any") {
    sc->add_option("--c0", a.c0, "Start configuration file")->check(CLI::ExistingFile);
    sc->add_option("--c1", a.c1, "Target configuration file")->check(CLI::ExistingFile);
  }
  if (problem != "nilpotency" && problem != "async-reach")
    sc->add_option("--t", a.t, "Horizon (number of steps)")->check(CLI::NonNegativeNumber);
  if (problem != "any") sc->add_flag("--oracle", a.oracle, "Also run the brute-force oracle; exit 4 on disagreement");
  add_budget_flags(sc, a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Specification checking for freezing automata networks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(fs_version()));
  Args a;
  std::string oracle_kind, gadget_kind;

  auto* cs = app.add_subcommand("check-spec", "Does some orbit satisfy the specification at every node?");
  add_problem_flags(cs, a, "check-spec");
  auto* pr = app.add_subcommand("predict", "Does the orbit of a configuration, seen at one node, match its spec?");
  add_problem_flags(pr, a, "predict");
  auto* pd = app.add_subcommand("predecessor", "Is the configuration the image of some configuration after t steps?");
  add_problem_flags(pd, a, "predecessor");
  auto* ni = app.add_subcommand("nilpotency", "Do all orbits end in one common configuration?");
  add_problem_flags(ni, a, "nilpotency");
  auto* ar = app.add_subcommand("async-reach", "Can c1 be reached from c0 by asynchronous updates?");
  add_problem_flags(ar, a, "async-reach");

  auto* orc = app.add_subcommand("oracle", "Answer a problem by brute force only");
  orc->add_option("kind", oracle_kind, "check-spec | predict | predecessor | nilpotency | async-reach")
      ->required()
      ->check(CLI::IsMember({"check-spec", "predict", "predecessor", "nilpotency", "async-reach"}));
  add_problem_flags(orc, a, "any");

  auto* sim = app.add_subcommand("simulate", "Orbit of a deterministic network as per-node runs");
  sim->add_option("--net", a.net, "Network file")->required()->check(CLI::ExistingFile);
  sim->add_option("--config", a.config, "Start configuration file")->required()->check(CLI::ExistingFile);
  sim->add_option("--t", a.t, "Steps")->required()->check(CLI::NonNegativeNumber);

  auto* dec = app.add_subcommand("decompose", "Tree decomposition of a graph or network graph");
  dec->add_option("--graph", a.graph, "Graph file ({\"n\", \"edges\"})")->check(CLI::ExistingFile);
  dec->add_option("--net", a.net, "Use the graph of this network")->check(CLI::ExistingFile);
  dec->add_option("--mode", a.mode, "heuristic | binary | balanced")
      ->check(CLI::IsMember({"heuristic", "binary", "balanced"}));
  dec->add_option("--check", a.check_decomp, "Validate this decomposition instead of building one")
      ->check(CLI::ExistingFile);

  auto* rt = app.add_subcommand("route", "Route a digraph through a bramble");
  rt->add_option("--graph", a.graph, "Host graph file")->required()->check(CLI::ExistingFile);
  rt->add_option("--bramble", a.bramble, "Bramble file")->required()->check(CLI::ExistingFile);
  rt->add_option("--digraph", a.digraph, "Edge list [[a, b], ..] over bramble elements")
      ->required()
      ->check(CLI::ExistingFile);

  auto* gd = app.add_subcommand("gadget", "Build a reduction instance");
  gd->add_option("kind", gadget_kind,
                 "dominating-set | sat-nilpotency | circuit-predecessor | circuit-async | routed-prediction")
      ->required()
      ->check(CLI::IsMember(
          {"dominating-set", "sat-nilpotency", "circuit-predecessor", "circuit-async", "routed-prediction"}));
  gd->add_option("--params", a.params, "Parameter file (fields below override it)")->check(CLI::ExistingFile);
  gd->add_option("--graph", a.graph, "Input graph (dominating-set)")->check(CLI::ExistingFile);
  gd->add_option("--k", a.k, "Dominating set size")->check(CLI::PositiveNumber);
  gd->add_flag("--decide", a.decide, "Also decide the dominating-set instance by marking enumeration");
  gd->add_option("--circuit", a.circuit, "Circuit file")->check(CLI::ExistingFile);
  gd->add_option("--host", a.host, "Host graph (default: a grid sized to the circuit)")->check(CLI::ExistingFile);
  gd->add_option("--bramble", a.bramble, "Bramble of the host")->check(CLI::ExistingFile);
  gd->add_option("--inputs", a.inputs, "Input bits for routed-prediction, e.g. 101");
  gd->add_option("--output", a.output, "Output gate index for routed-prediction");
  gd->add_option("--emit-dir", a.emit_dir, "Also write network.json, spec.json, ... into this directory");

  auto* rnd = app.add_subcommand("random", "Seeded random network and specification");
  rnd->add_option("--seed", a.seed, "Random seed");
  rnd->add_option("--n", a.rand_n, "Nodes")->check(CLI::PositiveNumber);
  rnd->add_option("--width", a.rand_width, "Treewidth bound");
  rnd->add_option("--states", a.rand_states, "Alphabet size")->check(CLI::Range(2, 8));
  rnd->add_option("--max-degree", a.rand_degree, "Degree bound")->check(CLI::PositiveNumber);
  rnd->add_option("--t", a.t, "Horizon")->check(CLI::NonNegativeNumber);
  rnd->add_flag("--nondeterministic", a.nondeterministic, "Allow several successors per row");
  rnd->add_option("--emit-dir", a.emit_dir, "Also write network.json and spec.json into this directory");

  auto* ver = app.add_subcommand("verify", "Replay a verdict's witness against a network and specification");
  ver->add_option("--net", a.net, "Network file")->required()->check(CLI::ExistingFile);
  ver->add_option("--spec", a.spec, "Specification file")->required()->check(CLI::ExistingFile);
  ver->add_option("--verdict", a.verdict, "Verdict file with a witness")->required()->check(CLI::ExistingFile);
  ver->add_option("--t", a.t, "Horizon if the specification omits it")->check(CLI::NonNegativeNumber);

  app.add_option("--out", a.out, "Write the JSON result here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    for (const char* problem : {"check-spec", "predict", "predecessor", "nilpotency", "async-reach"})
      if (app.got_subcommand(problem)) return run_problem(problem, a, a.oracle ? FS_ENGINE_BOTH : FS_ENGINE_SOLVER);
    if (*orc) return run_problem(oracle_kind, a, FS_ENGINE_ORACLE);
    if (*sim) {
      NetHandle net;
      load_net(a, net);
      OwnedString orbit;
      check(fs_simulate(net.p, slurp(a.config).c_str(), static_cast<size_t>(*a.t), &orbit.p));
      emit(a, orbit.str());
      return kYes;
    }
    if (*dec) {
      std::string graph;
      if (!a.graph.empty()) {
        graph = slurp(a.graph);
      } else if (!a.net.empty()) {
        NetHandle net;
        load_net(a, net);
        OwnedString text;
        check(fs_network_graph(net.p, &text.p));
        graph = text.str();
      } else {
        throw Failure{kUsage, "decompose needs --graph or --net"};
      }
      OwnedString out;
      if (!a.check_decomp.empty()) {
        int valid = 0;
        check(fs_decomposition_check(graph.c_str(), slurp(a.check_decomp).c_str(), &out.p, &valid));
        emit(a, out.str());
        return valid ? kYes : kNo;
      }
      const fs_decompose_mode mode = a.mode == "heuristic" ? FS_DECOMPOSE_HEURISTIC
                                     : a.mode == "balanced" ? FS_DECOMPOSE_BALANCED
                                                            : FS_DECOMPOSE_BINARY;
      check(fs_decompose(graph.c_str(), mode, &out.p));
      emit(a, out.str());
      return kYes;
    }
    if (*rt) {
      OwnedString out;
      check(fs_route(slurp(a.graph).c_str(), slurp(a.bramble).c_str(), slurp(a.digraph).c_str(), &out.p));
      emit(a, out.str());
      return kYes;
    }
    if (*gd) return run_gadget(gadget_kind, a);
    if (*rnd) {
      const json params = {{"n", a.rand_n},           {"width", a.rand_width},
                           {"states", a.rand_states}, {"max_degree", a.rand_degree},
                           {"t", a.t.value_or(3)},    {"deterministic", !a.nondeterministic}};
      OwnedString out;
      check(fs_random_instance(a.seed, params.dump().c_str(), &out.p));
      if (!a.emit_dir.empty()) {
        std::filesystem::create_directories(a.emit_dir);
        const json b = json::parse(out.str());
        std::ofstream(std::filesystem::path(a.emit_dir) / "network.json") << b["network"].dump(2) << "\n";
        std::ofstream(std::filesystem::path(a.emit_dir) / "spec.json") << b["spec"].dump(2) << "\n";
      }
      emit(a, out.str());
      return kYes;
    }
    if (*ver) {
      NetHandle net;
      load_net(a, net);
      SpecHandle spec;
      check(fs_spec_read(net.p, slurp(a.spec).c_str(), a.spec.c_str(), a.t.value_or(-1), &spec.p));
      int ok = 0;
      check(fs_verify_witness(net.p, spec.p, slurp(a.verdict).c_str(), &ok));
      emit(a, json{{"witness_valid", ok != 0}}.dump(2) + "\n");
      return ok ? kYes : kNo;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
