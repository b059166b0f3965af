#pragma once

// Exhaustive reference implementations. Deliberately unoptimised: they walk
// every configuration or orbit and refuse work beyond their budget.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "fanspec/core.hpp"
#include "fanspec/traces.hpp"

namespace fanspec {

struct OracleBudget {
  std::uint64_t max_configs = std::uint64_t{1} << 22;  // |Q|^n
  std::uint64_t max_nodes = 200'000'000;  // explored orbit-tree nodes
  std::uint64_t timeout_ms = 120'000;
};

// Overrides from FANSPEC_ORACLE_MAX_CONFIGS, FANSPEC_ORACLE_MAX_NODES and
// FANSPEC_ORACLE_TIMEOUT_MS when set.
OracleBudget oracle_budget_from_env(OracleBudget base = {});

// |Q|^n, saturating.
std::uint64_t configuration_count(const Network& net);
// i-th configuration in lexicographic order (node 0 most significant).
Configuration configuration_at(const Network& net, std::uint64_t index);

// First orbit (lexicographic in x_0, then in successor order) satisfying the
// specification at every node.
std::optional<Orbit> brute_spec_witness(const Network& net, const Specification& spec,
                                        const OracleBudget& budget = {});
bool brute_check_spec(const Network& net, const Specification& spec, const OracleBudget& budget = {});

// Deterministic networks only.
bool brute_nilpotency(const Network& net, const OracleBudget& budget = {});
std::optional<Configuration> brute_predecessor(const Network& net, const Configuration& c, std::size_t t,
                                               const OracleBudget& budget = {});

// Reachability under the asynchronous lifting of a deterministic network.
// The path lists configurations from c0 to c1 (shortest, lexicographically
// first among shortest).
std::optional<std::vector<Configuration>> brute_async_path(const Network& net, const Configuration& c0,
                                                           const Configuration& c1,
                                                           const OracleBudget& budget = {});
bool brute_async_reach(const Network& net, const Configuration& c0, const Configuration& c1,
                       const OracleBudget& budget = {});

// Some vertex set of size at most k whose closed neighbourhoods cover V.
std::optional<std::vector<Vertex>> brute_dominating_witness(const Graph& g, std::size_t k,
                                                            const OracleBudget& budget = {});
bool brute_dominating_set(const Graph& g, std::size_t k, const OracleBudget& budget = {});

// All orbits of horizon t restricted to U (sorted), each as one trace per
// vertex of U in label order.
std::set<std::vector<RleTrace>> brute_restricted_orbits(const Network& net, const std::vector<Vertex>& nodes,
                                                        std::size_t t, const OracleBudget& budget = {});

}  // namespace fanspec
