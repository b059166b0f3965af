#pragma once

// JSON text formats. Readers take the text and an origin used in error
// messages ("file.json: field 'rules.2[0].out': ..."); syntax errors report
// line and column. Semantic problems raise ValidationError, malformed input
// ParseError.
//
//   network        {"alphabet": [names], "order": [[lo, hi], ..], "n": n,
//                   "edges": [[u, v], ..], and one of
//                   "rules": {"v": [{"input": {"u": state, ..}, "out": [state, ..]}, ..]},
//                   "set_rule": [{"state": s, "set": [..], "out": s'}, ..],
//                   "standard": "or" | {"rule": "threshold", "theta": 2}}
//                  or {"generator": {"kind": .., ..}} for constructed networks
//   configuration  [state, ..]
//   specification  {"t": t, "nodes": {"v": [[[state, len], ..], ..]},
//                   "constraints": {"v": {"initial": [..], "final": [..], "avoid": [..]}},
//                   "default": "any"}
//   decomposition  {"bags": [[v, ..], ..], "edges": [[i, j], ..], "root": i}
//   graph          {"n": n, "edges": [[u, v], ..]} or {"grid": m}
//   bramble        {"elements": [[v, ..], ..]}
//   circuit        {"gates": [{"type": "and", "inputs": [0, 1]}, ..]}
//   orbit          {"t": t, "nodes": {"v": [[state, len], ..]}}
//   verdict        {"satisfiable": b, "witness": orbit | null, "stats": {..}}
//
// States are written by name; readers also accept state indices.

#include <optional>
#include <string>

#include "fanspec/gadgets.hpp"
#include "fanspec/solver.hpp"
#include "fanspec/treedecomp.hpp"

namespace fanspec {

Network read_network(const std::string& text, const std::string& origin = "network");
std::string write_network(const Network& net);

Configuration read_configuration(const std::string& text, const Network& net, const std::string& origin = "configuration");
std::string write_configuration(const Configuration& c, const Network& net);

// `horizon` fills in a missing "t" and must match a present one.
Specification read_spec(const std::string& text, const Network& net, const std::string& origin = "specification",
                        std::optional<std::size_t> horizon = {});
std::string write_spec(const Specification& s, const Network& net);

TreeDecomposition read_decomposition(const std::string& text, const std::string& origin = "decomposition");
std::string write_decomposition(const TreeDecomposition& d);

Graph read_graph(const std::string& text, const std::string& origin = "graph");
std::string write_graph(const Graph& g);

Bramble read_bramble(const std::string& text, const std::string& origin = "bramble");
std::string write_bramble(const Bramble& b);

Circuit read_circuit(const std::string& text, const std::string& origin = "circuit");
std::string write_circuit(const Circuit& c);

std::string write_orbit(const Orbit& o, const Network& net);
Orbit read_orbit(const std::string& text, const Network& net, const std::string& origin = "orbit");

std::string write_verdict(const Verdict& v, const Network& net);
std::optional<Orbit> read_verdict_witness(const std::string& text, const Network& net,
                                          const std::string& origin = "verdict");

}  // namespace fanspec
