#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fanspec/core.hpp"
#include "fanspec/solver.hpp"
#include "fanspec/traces.hpp"

namespace fanspec {

struct PredictionPayload {
  Configuration c;
  Vertex v = 0;
  NodeSpec spec_v;
  std::size_t t = 0;
};
struct PredecessorPayload {
  Configuration c;
  std::size_t t = 0;
};
struct NilpotencyPayload {};
struct AsyncReachPayload {
  Configuration c0, c1;
};

struct ProblemInstance {
  Network net;
  std::variant<PredictionPayload, PredecessorPayload, NilpotencyPayload, AsyncReachPayload> payload;
};

std::string problem_name(const ProblemInstance& p);

// Does the orbit of c, seen at v, lie in spec_v? spec_v must only admit
// traces starting at c_v.
Verdict solve_prediction(const Network& net, const Configuration& c, Vertex v, const NodeSpec& spec_v, std::size_t t,
                         const SolverOptions& opts = {});

struct PredecessorResult {
  Verdict verdict;
  std::optional<Configuration> predecessor;  // F^t(predecessor) == c
};
PredecessorResult solve_predecessor(const Network& net, const Configuration& c, std::size_t t,
                                    const SolverOptions& opts = {});

struct NilpotencyResult {
  bool nilpotent = false;
  std::size_t horizon = 0;  // t* = n|Q|(|Q|n + 1)
  std::vector<StateSet> final_states;  // R(s): states node s can hold at time t*
  std::optional<Configuration> fixed_point;  // the common limit when nilpotent
};
NilpotencyResult solve_nilpotency(const Network& net, const SolverOptions& opts = {});

struct AsyncReachResult {
  Verdict verdict;  // witness is an orbit of the asynchronous lifting, idle steps removed
  std::vector<std::vector<Vertex>> schedule;  // nodes updated at each step
};
AsyncReachResult solve_async_reachability(const Network& net, const Configuration& c0, const Configuration& c1,
                                          const SolverOptions& opts = {});

// Replays a schedule under the asynchronous lifting; false if some listed
// node does not change or the result differs from `c1`.
bool replay_schedule(const Network& net, const Configuration& c0, const std::vector<std::vector<Vertex>>& schedule,
                     const Configuration& c1);

}  // namespace fanspec
