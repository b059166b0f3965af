#pragma once

// Search over one bag of a decomposition: assign a trace to every variable of
// the bag so that each listed center is locally valid and each child link is
// matched by some child entry. Used by enumerate_pvt (no children, every
// variable in the key) and by the solver.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "fanspec/core.hpp"
#include "fanspec/traces.hpp"

namespace fanspec::detail {

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// All admissible traces of one node, sorted lexicographically as dense
// sequences, with a trie over those sequences.
struct Domain {
  std::size_t horizon = 0;
  std::vector<RleTrace> traces;
  std::vector<State> dense;  // (horizon + 1) states per trace
  // trie: node 0 is the root (depth -1); children of n are [begin[n], end[n])
  std::vector<std::uint32_t> begin, end;
  std::vector<State> label;
  std::vector<std::uint32_t> leaf;  // trace id at depth horizon, else kNone

  std::size_t size() const { return traces.size(); }
  const State* seq(std::uint32_t id) const { return dense.data() + static_cast<std::size_t>(id) * (horizon + 1); }
};

// Traces of v of length t + 1 admitted by `spec` (which must have horizon t);
// with apply_spec == false every non-decreasing sequence is admitted.
Domain build_domain(const Network& net, const Specification& spec, Vertex v, std::size_t t, bool apply_spec,
                    std::size_t cap);

struct ChildLink {
  const std::vector<Vertex>* vars = nullptr;  // child variables, sorted
  const std::vector<std::vector<std::uint32_t>>* values = nullptr;  // child entries
  std::vector<Vertex> link;  // variables that must agree, sorted
};

struct BagProblem {
  std::size_t bag = 0;
  std::vector<Vertex> vars;  // sorted
  std::vector<Vertex> centers;  // N[c] within vars
  std::vector<Vertex> key;  // sorted subset of vars; one completion per key
  std::vector<ChildLink> children;
};

struct BagResult {
  std::vector<std::vector<std::uint32_t>> values;  // aligned with BagProblem::vars, sorted by key
  std::vector<std::vector<std::uint32_t>> back;  // one child entry per child
  std::uint64_t work = 0;
};

struct SearchLimits {
  std::size_t cap = 1'000'000;
  std::uint64_t work_budget = 0;  // 0 = unlimited
  bool parallel = true;
};

// domains[v] must be set for every variable.
BagResult search_bag(const Network& net, const std::vector<const Domain*>& domains, const BagProblem& p,
                     const SearchLimits& limits);

}  // namespace fanspec::detail
