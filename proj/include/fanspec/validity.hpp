#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "fanspec/core.hpp"
#include "fanspec/traces.hpp"

namespace fanspec {

// Traces on N[center].
struct LocalTrace {
  Vertex center = 0;
  std::map<Vertex, RleTrace> traces;
  std::size_t horizon = 0;
};

// Traces on N[U], locally valid at every vertex of U.
struct PartialTrace {
  std::vector<Vertex> nodes;  // U, sorted
  std::map<Vertex, RleTrace> traces;
  std::size_t horizon = 0;
};

// Every step of the center's trace is an image of F_v on the previous
// cross-section and the center's trace is admitted by `spec`. Ill-formed
// input (wrong domain, lengths or order) is reported as false.
bool is_locally_valid(const Network& net, const Specification& spec, const LocalTrace& lt);
bool is_partially_valid(const Network& net, const Specification& spec, const PartialTrace& pt);

// Closed neighbourhood of a vertex set, sorted.
std::vector<Vertex> closed_neighborhood(const Graph& g, const std::vector<Vertex>& nodes);

// Calls `visit` for every partially valid trace on N[U] whose centers satisfy
// `spec`; neighbours outside U range over all non-decreasing traces. Order is
// lexicographic per vertex (label order) on the dense sequences. `visit`
// returns false to stop. Throws ResourceError when more than `cap` traces
// would be produced.
void enumerate_pvt(const Network& net, const Specification& spec, const std::vector<Vertex>& nodes,
                   std::size_t horizon, std::size_t cap, const std::function<bool(const PartialTrace&)>& visit);
std::vector<PartialTrace> enumerate_pvt(const Network& net, const Specification& spec,
                                        const std::vector<Vertex>& nodes, std::size_t horizon,
                                        std::size_t cap = 1'000'000);

}  // namespace fanspec
