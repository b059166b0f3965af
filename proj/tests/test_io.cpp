// File formats and the C interface.

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fanspec/fanspec.h"
#include "fanspec/io.hpp"
#include "fanspec/oracle.hpp"
#include "json.hpp"

using namespace fanspec;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FANSPEC_FIXTURES) + "/" + name);
  EXPECT_TRUE(in) << name;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

struct CStr {
  char* p = nullptr;
  ~CStr() { fs_free_string(p); }
  nlohmann::json json() const { return nlohmann::json::parse(p); }
};

}  // namespace

TEST(Io, ReadsP3Fixture) {
  const Network net = read_network(fixture("p3_or.json"), "p3_or.json");
  EXPECT_EQ(net.n(), 3u);
  EXPECT_TRUE(net.deterministic());
  const Network ref = standard_network(Graph::path(3), StandardRule::Or);
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(net.table(v).masks, ref.table(v).masks);
}

TEST(Io, ErrorsNameTheirLocation) {
  const std::string missing = error_of([] { read_network(fixture("bad_missing_row.json"), "bad.json"); });
  EXPECT_NE(missing.find("bad.json"), std::string::npos);
  EXPECT_NE(missing.find("vertex 1"), std::string::npos);
  EXPECT_NE(missing.find("{0: 1, 1: 1}"), std::string::npos);

  const Network net = read_network(fixture("p3_or.json"));
  const std::string unknown = error_of([&] { read_spec(fixture("bad_spec_unknown_node.json"), net, "s.json"); });
  EXPECT_NE(unknown.find("constraints.7"), std::string::npos);
  EXPECT_THROW(read_spec(fixture("bad_spec_unknown_node.json"), net), ValidationError);

  const std::string syntax = error_of([] { read_network(fixture("bad_syntax.json"), "syn.json"); });
  EXPECT_EQ(syntax.rfind("syn.json:4:1:", 0), 0u) << syntax;
  EXPECT_THROW(read_network(fixture("bad_syntax.json")), ParseError);

  EXPECT_THROW(read_configuration("[\"0\", \"2\", \"0\"]", net), ValidationError);
  EXPECT_THROW(read_configuration("[\"0\", \"1\"]", net), ValidationError);
  EXPECT_THROW(read_spec("{\"t\": 2, \"nodes\": {\"0\": [[[\"1\", 1], [\"0\", 2]]]}}", net), ValidationError);
  EXPECT_THROW(read_spec("{\"nodes\": {}}", net), ParseError);
}

TEST(Io, NetworkRoundTrips) {
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    const Graph g = random_partial_ktree(2 + draw(rng, 5), 2, 3, 30, rng);
    const Network net = random_network(g, random_alphabet(1 + draw(rng, 3), rng), coin(rng, 50), 50, rng);
    const std::string text = write_network(net);
    const Network back = read_network(text);
    ASSERT_EQ(back.n(), net.n());
    for (Vertex v = 0; v < net.n(); ++v) EXPECT_EQ(back.table(v).masks, net.table(v).masks);
    EXPECT_EQ(write_network(back), text);
    for (State x = 0; x < net.alphabet().size(); ++x)
      for (State y = 0; y < net.alphabet().size(); ++y) EXPECT_EQ(back.alphabet().leq(x, y), net.alphabet().leq(x, y));
  }
}

TEST(Io, SetRuleAndStandardForms) {
  const std::string text = R"({"alphabet": ["0", "1"], "order": [["0", "1"]], "n": 3, "edges": [[0, 1], [1, 2]],
    "set_rule": [{"state": "0", "set": ["0"], "out": "0"}, {"state": "0", "set": ["0", "1"], "out": "1"},
                 {"state": "1", "set": ["1"], "out": "1"}, {"state": "1", "set": ["0", "1"], "out": "1"}]})";
  const Network net = read_network(text);
  const Network ref = standard_network(Graph::path(3), StandardRule::Or);
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(net.table(v).masks, ref.table(v).masks);
  EXPECT_EQ(read_network(write_network(net)).set_rule()->table().size(), 4u);
  const Network thr = read_network(fixture("p3_threshold.json"));
  EXPECT_EQ(step_deterministic(thr, {1, 0, 1}), (Configuration{1, 1, 1}));
}

TEST(Io, SpecRoundTrip) {
  const Network net = read_network(fixture("p3_or.json"));
  const Specification s = read_spec(fixture("p3_traces_spec.json"), net);
  EXPECT_EQ(s.horizon(), 2u);
  const Specification back = read_spec(write_spec(s, net), net);
  EXPECT_EQ(write_spec(back, net), write_spec(s, net));
  EXPECT_TRUE(check_spec(net, back).satisfiable);
  EXPECT_FALSE(check_spec(net, read_spec(fixture("p3_unsat_spec.json"), net)).satisfiable);
}

TEST(Io, WitnessRoundTripOnFixtures) {
  const Network net = read_network(fixture("p3_or.json"));
  for (const char* name : {"endsone.json", "p3_traces_spec.json"}) {
    const Specification s = read_spec(fixture(name), net);
    const Verdict v = check_spec(net, s);
    ASSERT_TRUE(v.satisfiable) << name;
    const std::string text = write_verdict(v, net);
    EXPECT_EQ(text, write_verdict(check_spec(net, s), net));
    const auto o = read_verdict_witness(text, net);
    ASSERT_TRUE(o.has_value());
    EXPECT_TRUE(orbit_replays(net, *o));
    for (Vertex u = 0; u < net.n(); ++u) EXPECT_TRUE(s.admits_sequence(u, o->node_sequence(u)));
  }
  const Verdict no = check_spec(net, read_spec(fixture("p3_unsat_spec.json"), net));
  EXPECT_FALSE(read_verdict_witness(write_verdict(no, net), net).has_value());
  EXPECT_NE(write_verdict(no, net).find("\"witness\": null"), std::string::npos);
}

TEST(Io, DecompositionBrambleCircuit) {
  const TreeDecomposition d = read_decomposition(fixture("p3_decomposition.json"));
  EXPECT_TRUE(validate_decomposition(Graph::path(3), d).ok());
  EXPECT_EQ(write_decomposition(read_decomposition(write_decomposition(d))), write_decomposition(d));
  const Bramble b = read_bramble(fixture("grid3_bramble.json"));
  EXPECT_EQ(b.elements, grid_bramble(3).elements);
  EXPECT_TRUE(validate_bramble(read_graph(fixture("grid3.json")), b).ok());
  const Circuit c = read_circuit(fixture("circuit_or.json"));
  EXPECT_EQ(c.gates.size(), 4u);
  EXPECT_EQ(write_circuit(read_circuit(write_circuit(c))), write_circuit(c));
  EXPECT_THROW(read_circuit(R"({"gates": [{"type": "xor"}]})"), ParseError);
  EXPECT_THROW(read_circuit(R"({"gates": [{"type": "input"}, {"type": "or", "inputs": [0, 3]}]})"), ValidationError);
}

TEST(Io, GeneratorNetworksRebuild) {
  const std::string dom = R"({"generator": {"kind": "dominating-set", "graph": {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}, "k": 1}})";
  const Network a = read_network(dom);
  const DominatingGadget ref = dominating_set_gadget(Graph::complete(3), 1);
  EXPECT_EQ(a.n(), ref.net.n());
  EXPECT_EQ(write_network(a), write_network(read_network(write_network(a))));
  Rng rng(1);
  const Configuration c = random_configuration(a, rng);
  EXPECT_EQ(step_deterministic(a, c), step_deterministic(ref.net, c));

  const std::string nil = R"({"generator": {"kind": "sat-nilpotency", "circuit": )" + fixture("circuit_or.json") + "}}";
  const Network b = read_network(nil);
  const NilpotencyGadget g = sat_nilpotency_gadget(read_circuit(fixture("circuit_or.json")),
                                                   grid_host_for(read_circuit(fixture("circuit_or.json"))).graph,
                                                   grid_host_for(read_circuit(fixture("circuit_or.json"))).bramble);
  EXPECT_EQ(b.n(), g.net.n());
  EXPECT_EQ(b.alphabet().size(), g.net.alphabet().size());
  EXPECT_THROW(read_network(R"({"generator": {"kind": "nope"}})"), ParseError);
}

// ------------------------------------------------------------- C interface

TEST(CApi, CheckSpecAndEngines) {
  fs_network* net = nullptr;
  ASSERT_EQ(fs_network_read(fixture("p3_or.json").c_str(), "p3", &net), FS_OK);
  fs_spec* spec = nullptr;
  ASSERT_EQ(fs_spec_read(net, fixture("endsone.json").c_str(), "endsone", 2, &spec), FS_OK);
  fs_options o;
  fs_options_default(&o);
  for (fs_engine e : {FS_ENGINE_SOLVER, FS_ENGINE_ORACLE, FS_ENGINE_BOTH}) {
    o.engine = e;
    CStr out;
    int yes = -1;
    ASSERT_EQ(fs_check_spec(net, spec, nullptr, &o, &out.p, &yes), FS_OK) << fs_last_error();
    EXPECT_EQ(yes, 1);
    EXPECT_TRUE(out.json()["satisfiable"].get<bool>());
    EXPECT_FALSE(out.json()["witness"].is_null());
    int ok = 0;
    ASSERT_EQ(fs_verify_witness(net, spec, out.p, &ok), FS_OK);
    EXPECT_EQ(ok, 1);
  }
  fs_spec* wrong_t = nullptr;
  EXPECT_EQ(fs_spec_read(net, fixture("endsone.json").c_str(), "endsone", 3, &wrong_t), FS_ERR_VALIDATION);
  EXPECT_EQ(wrong_t, nullptr);
  fs_spec_free(spec);
  fs_network_free(net);
}

TEST(CApi, ErrorsAndNulls) {
  fs_network* net = nullptr;
  EXPECT_EQ(fs_network_read(fixture("bad_syntax.json").c_str(), "syn.json", &net), FS_ERR_PARSE);
  EXPECT_NE(std::string(fs_last_error()).find("syn.json:4:1"), std::string::npos);
  EXPECT_EQ(fs_network_read(fixture("bad_missing_row.json").c_str(), nullptr, &net), FS_ERR_VALIDATION);
  EXPECT_EQ(fs_network_read(nullptr, nullptr, &net), FS_ERR_ARGUMENT);
  CStr out;
  int yes = 0;
  EXPECT_EQ(fs_nilpotency(nullptr, nullptr, &out.p, &yes), FS_ERR_ARGUMENT);
  EXPECT_EQ(fs_gadget("nope", "{}", &out.p), FS_ERR_ARGUMENT);
  fs_options o;
  fs_options_default(&o);
  o.engine = FS_ENGINE_ORACLE;
  o.oracle_max_configs = 2;
  ASSERT_EQ(fs_network_read(fixture("p3_or.json").c_str(), nullptr, &net), FS_OK);
  EXPECT_EQ(fs_nilpotency(net, &o, &out.p, &yes), FS_ERR_BUDGET);
  fs_network_free(net);
}

TEST(CApi, Problems) {
  fs_network* net = nullptr;
  ASSERT_EQ(fs_network_read(fixture("p3_or.json").c_str(), nullptr, &net), FS_OK);
  fs_options o;
  fs_options_default(&o);
  o.engine = FS_ENGINE_BOTH;
  int yes = -1;
  {
    CStr out;
    ASSERT_EQ(fs_predict(net, "[\"1\",\"0\",\"0\"]", 2, "{\"final\": [\"1\"]}", 2, &o, &out.p, &yes), FS_OK)
        << fs_last_error();
    EXPECT_EQ(yes, 1);
  }
  {
    CStr out;
    ASSERT_EQ(fs_predict(net, "[\"1\",\"0\",\"0\"]", 2, "{\"final\": [\"1\"]}", 1, &o, &out.p, &yes), FS_OK);
    EXPECT_EQ(yes, 0);
  }
  {
    CStr out;
    ASSERT_EQ(fs_predecessor(net, "[\"1\",\"1\",\"1\"]", 1, &o, &out.p, &yes), FS_OK);
    EXPECT_EQ(yes, 1);
    EXPECT_EQ(out.json()["predecessor"].size(), 3u);
  }
  {
    CStr out;
    ASSERT_EQ(fs_nilpotency(net, &o, &out.p, &yes), FS_OK);
    EXPECT_EQ(yes, 0);
  }
  {
    CStr out;
    ASSERT_EQ(fs_async_reach(net, "[\"0\",\"1\",\"0\"]", "[\"1\",\"1\",\"1\"]", &o, &out.p, &yes), FS_OK);
    EXPECT_EQ(yes, 1);
  }
  {
    CStr out;
    ASSERT_EQ(fs_simulate(net, "[\"1\",\"0\",\"0\"]", 2, &out.p), FS_OK);
    EXPECT_EQ(out.json()["final"], nlohmann::json::parse("[\"1\",\"1\",\"1\"]"));
  }
  fs_network_free(net);
}

TEST(CApi, DecomposeRouteGadget) {
  CStr d;
  ASSERT_EQ(fs_decompose("{\"n\": 5, \"edges\": [[0,1],[1,2],[2,3],[3,4],[4,0]]}", FS_DECOMPOSE_BALANCED, &d.p), FS_OK);
  EXPECT_EQ(d.json()["width"], 2);
  CStr rep;
  int valid = 0;
  ASSERT_EQ(fs_decomposition_check("{\"n\": 3, \"edges\": [[0,1],[1,2]]}", fixture("p3_decomposition.json").c_str(),
                                   &rep.p, &valid),
            FS_OK);
  EXPECT_EQ(valid, 1);
  CStr r;
  ASSERT_EQ(fs_route(fixture("grid3.json").c_str(), fixture("grid3_bramble.json").c_str(),
                     fixture("digraph_path.json").c_str(), &r.p),
            FS_OK)
      << fs_last_error();
  EXPECT_EQ(r.json()["mu"], nlohmann::json::parse("[0, 4, 8]"));
  CStr g;
  ASSERT_EQ(fs_gadget("circuit-predecessor", ("{\"circuit\": " + fixture("circuit_or.json") + "}").c_str(), &g.p),
            FS_OK)
      << fs_last_error();
  const auto bundle = g.json();
  EXPECT_TRUE(bundle["expected_predecessor"].get<bool>());
  fs_network* net = nullptr;
  ASSERT_EQ(fs_network_read(bundle["network"].dump().c_str(), "bundle", &net), FS_OK) << fs_last_error();
  fs_options o;
  fs_options_default(&o);
  CStr out;
  int yes = 0;
  ASSERT_EQ(fs_predecessor(net, bundle["configuration"].dump().c_str(), 1, &o, &out.p, &yes), FS_OK)
      << fs_last_error();
  EXPECT_EQ(yes, 1);
  fs_network_free(net);
}

TEST(CApi, RandomInstanceIsSeeded) {
  CStr a, b;
  ASSERT_EQ(fs_random_instance(42, "{\"n\": 4}", &a.p), FS_OK);
  ASSERT_EQ(fs_random_instance(42, "{\"n\": 4}", &b.p), FS_OK);
  EXPECT_STREQ(a.p, b.p);
}
