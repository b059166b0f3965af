#pragma once

// Seeded random instances for tests, acceptance runs and the CLI. Draws use
// modulo reduction on mt19937_64 output so that a seed gives the same
// instance on every standard library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "fanspec/core.hpp"
#include "fanspec/traces.hpp"

namespace fanspec {

using Rng = std::mt19937_64;

inline std::size_t draw(Rng& rng, std::size_t bound) { return bound ? static_cast<std::size_t>(rng() % bound) : 0; }
inline bool coin(Rng& rng, unsigned percent) { return rng() % 100 < percent; }

// Connected graph of treewidth at most k: vertices are attached to cliques
// of an existing k-tree (respecting max_degree where possible), then each
// edge is dropped with probability drop_percent unless it disconnects.
Graph random_partial_ktree(std::size_t n, std::size_t k, std::size_t max_degree, unsigned drop_percent, Rng& rng);

// Connected graph with max degree bounded by max_degree (spanning tree plus
// extra edges).
Graph random_connected_graph(std::size_t n, std::size_t max_degree, unsigned extra_percent, Rng& rng);

// A chain, a "V", a "Λ" or an antichain-with-top on q states.
Alphabet random_alphabet(std::size_t q, Rng& rng);

// Freezing rules from random tables. stay_percent biases every row towards
// keeping the current state; nondeterministic rows add further states from
// the up-set.
Network random_network(const Graph& g, const Alphabet& a, bool deterministic, unsigned stay_percent, Rng& rng);

Configuration random_configuration(const Network& net, Rng& rng);
// A random orbit of the network from a random start.
Orbit random_orbit(const Network& net, std::size_t t, Rng& rng);
// Random non-decreasing sequence of length t + 1.
std::vector<State> random_monotone_sequence(const Alphabet& a, std::size_t t, Rng& rng);

// Mix of free nodes, state constraints and explicit trace sets. About half
// of the explicit sets include the trace of one random orbit, so many
// instances are satisfiable.
Specification random_spec(const Network& net, std::size_t t, Rng& rng);

// Graph with out-degree and in-degree at most max_degree on n vertices.
std::vector<std::pair<Vertex, Vertex>> random_digraph(std::size_t n, std::size_t max_degree, std::size_t edges,
                                                      Rng& rng);

// All connected graphs on n labelled vertices, one per isomorphism class
// (n <= 6).
std::vector<Graph> connected_graphs(std::size_t n);

}  // namespace fanspec
