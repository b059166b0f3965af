#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanspec/core.hpp"

namespace fanspec {

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;  // each sorted
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::optional<std::size_t> root;

  std::size_t size() const { return bags.size(); }
  // max |X_w| - 1; -1 is reported as 0 for the empty decomposition
  std::size_t width() const;
  bool is_binary() const;  // needs a root
  std::size_t depth() const;  // needs a root
  std::vector<std::vector<std::size_t>> children() const;  // needs a root
  std::vector<std::size_t> parents() const;  // root maps to itself
};

struct DecompositionIssue {
  enum class Kind { NotATree, BadRoot, OutOfRange, VertexCoverage, EdgeCoverage, Connectivity };
  Kind kind;
  std::string message;
};

struct DecompositionCheck {
  std::optional<std::size_t> width;  // set iff valid
  std::vector<DecompositionIssue> issues;
  bool ok() const { return issues.empty(); }
};

DecompositionCheck validate_decomposition(const Graph& g, const TreeDecomposition& d);
// Throws ValidationError listing the violated axioms.
void require_valid(const Graph& g, const TreeDecomposition& d);

TreeDecomposition trivial_decomposition(const Graph& g);
// Min-fill elimination, ties to the smallest label. Redundant bags are merged
// into a neighbour; the bag of the last eliminated vertex is the root.
TreeDecomposition heuristic_decomposition(const Graph& g);
// Every bag gets at most two children by chaining copies; width unchanged.
TreeDecomposition binarize(const TreeDecomposition& d);
// Binary, width <= 3k + 2 and depth <= balance_depth_bound(d.size()).
TreeDecomposition binarize_balance(const TreeDecomposition& d);
std::size_t balance_depth_bound(std::size_t bags);
inline constexpr std::size_t kBalanceDepthFactor = 6;

// L_0 holds the deepest bags, L_M = {root}; a bag at depth k sits in L_{M-k}.
std::vector<std::vector<std::size_t>> levels(const TreeDecomposition& d);

}  // namespace fanspec
