#pragma once

// JSON-level readers and writers shared by the string API and the C API.
// Readers report the origin (usually a file name) and the field path of
// every problem.

#include <optional>
#include <string>

#include "fanspec/gadgets.hpp"
#include "fanspec/solver.hpp"
#include "fanspec/treedecomp.hpp"
#include "json.hpp"

namespace fanspec::jio {

using json = nlohmann::ordered_json;

class Where {
 public:
  explicit Where(std::string origin, std::string path = "") : origin_(std::move(origin)), path_(std::move(path)) {}
  Where at(const std::string& key) const { return Where(origin_, path_.empty() ? key : path_ + "." + key); }
  Where idx(std::size_t i) const { return Where(origin_, path_ + "[" + std::to_string(i) + "]"); }
  [[noreturn]] void parse_fail(const std::string& msg) const;
  [[noreturn]] void fail(const std::string& msg) const;  // semantic problem
  std::string describe() const;

 private:
  std::string origin_, path_;
};

// Indented JSON with short containers kept on one line; ends with a newline.
std::string pretty(const json& j, std::size_t width = 80);

// Parses text; syntax errors carry line and column.
json parse_text(const std::string& text, const std::string& origin);

const json& field(const json& j, const std::string& key, const Where& w);
std::size_t as_index(const json& j, const Where& w);
std::size_t node_key(const std::string& key, std::size_t n, const Where& w);

json graph_to(const Graph& g);
Graph graph_from(const json& j, const Where& w);

json state_to(State s, const Alphabet& a);
State state_from(const json& j, const Alphabet& a, const Where& w);
StateSet states_from(const json& j, const Alphabet& a, const Where& w);

json network_to(const Network& net);
Network network_from(const json& j, const Where& w);
Network network_from_generator(const json& g, const Where& w);

json config_to(const Configuration& c, const Alphabet& a);
Configuration config_from(const json& j, const Network& net, const Where& w);

json trace_to(const RleTrace& t, const Alphabet& a);
RleTrace trace_from(const json& j, const Alphabet& a, const Where& w);

json spec_to(const Specification& s, const Alphabet& a);
// `t` overrides a missing horizon and must agree with a present one.
Specification spec_from(const json& j, const Network& net, const Where& w, std::optional<std::size_t> t = {});

json decomposition_to(const TreeDecomposition& d);
TreeDecomposition decomposition_from(const json& j, const Where& w);

json bramble_to(const Bramble& b);
Bramble bramble_from(const json& j, const Where& w);

json circuit_to(const Circuit& c);
Circuit circuit_from(const json& j, const Where& w);

json routing_to(const RoutedEmbedding& r);

json orbit_to(const Orbit& o, const Alphabet& a);
Orbit orbit_from(const json& j, const Network& net, const Where& w);

json stats_to(const SolverStats& s);
// {"satisfiable", "witness", "stats"}; the witness is per-node runs or null.
json verdict_to(const Verdict& v, const Alphabet& a);

}  // namespace fanspec::jio
