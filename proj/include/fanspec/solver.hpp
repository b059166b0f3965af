#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fanspec/core.hpp"
#include "fanspec/traces.hpp"
#include "fanspec/treedecomp.hpp"

namespace fanspec {

enum class TableMode {
  // Each center is checked once, at the highest bag containing it, and a
  // table keeps one completion per assignment of the variables it shares
  // with its parent that its subtree constrains.
  Projected,
  // Every center of the bag is checked and tables hold all partially valid
  // traces of N[X_w]. Exponentially larger; kept for cross-checking.
  Faithful,
};

struct SolverOptions {
  std::size_t jobs = 0;  // 0 = all cores
  std::size_t bag_cap = 1'000'000;
  std::uint64_t work_budget = 0;  // search steps over all bags, 0 = unlimited
  bool compress_horizon = true;
  TableMode mode = TableMode::Projected;
  std::size_t max_domain = 1'000'000;  // traces per node
};

// Values are trace ids into DpSolution::domains.
struct DpEntry {
  std::vector<std::uint32_t> values;  // aligned with DpTable::vars
  std::vector<std::uint32_t> back;  // one entry index per child, aligned with DpTable::children
};

struct DpTable {
  std::size_t bag = 0;
  std::vector<Vertex> vars;  // N[X_w]
  std::vector<Vertex> key_vars;
  std::vector<Vertex> centers;  // vertices whose rule is checked here
  std::vector<std::size_t> children;
  std::vector<DpEntry> entries;  // sorted by key
};

struct LevelStat {
  std::size_t level = 0;
  std::size_t bags = 0;
  double millis = 0;
};

struct SolverStats {
  std::size_t bags = 0;
  std::size_t levels = 0;
  std::size_t max_table = 0;
  std::size_t max_domain = 0;
  std::size_t horizon = 0;  // horizon actually solved
  bool compressed = false;
  std::uint64_t work = 0;
  double millis = 0;
  std::vector<LevelStat> level_stats;
};

struct DpSolution {
  std::size_t horizon = 0;
  std::size_t root = 0;
  std::vector<std::vector<RleTrace>> domains;  // per node
  std::vector<DpTable> tables;  // per bag
  SolverStats stats;
  bool accepted() const { return !tables.empty() && !tables[root].entries.empty(); }
};

struct Verdict {
  bool satisfiable = false;
  std::optional<Orbit> witness;
  SolverStats stats;
};

// Runs the dynamic program at the specification's horizon. `d` must be a
// valid decomposition of the network graph; an unrooted one is rooted at 0.
DpSolution solve_tables(const Network& net, const Specification& spec, const TreeDecomposition& d,
                        const SolverOptions& opts = {});

// Reference join: for each child, the first entry agreeing with `values` on
// the child's key variables. nullopt if some child has none.
std::optional<std::vector<std::uint32_t>> join_children(const std::vector<Vertex>& vars,
                                                        const std::vector<std::uint32_t>& values,
                                                        const std::vector<const DpTable*>& children);

// Glues the root entry and its back-pointers into an orbit. Throws
// InternalError if the pieces disagree.
Orbit extract_witness(const DpSolution& sol, const Network& net, const TreeDecomposition& d);

Verdict check_spec(const Network& net, const Specification& spec, const TreeDecomposition& d,
                   const SolverOptions& opts = {});
// Uses a min-fill decomposition, binarized.
Verdict check_spec(const Network& net, const Specification& spec, const SolverOptions& opts = {});

// n * (height - 1) + 1: horizon a constraint-only specification can be
// shortened to without changing its answer.
std::size_t compressed_horizon(const Network& net);

}  // namespace fanspec
