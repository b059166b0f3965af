#include "fanspec/problems.hpp"

#include <algorithm>

#include <tbb/parallel_for.h>

namespace fanspec {

namespace {

void require_deterministic(const Network& net, const char* what) {
  if (!net.deterministic()) throw ArgumentError(std::string(what) + " needs a deterministic network");
}

// F^t(c), stopping early at a fixed point.
Configuration simulate(const Network& net, Configuration x, std::size_t t) {
  for (std::size_t s = 0; s < t; ++s) {
    Configuration y = step_deterministic(net, x);
    if (y == x) break;
    x = std::move(y);
  }
  return x;
}

std::size_t lambda(const Network& net) {
  const auto l = max_orbit_length(net.n(), net.alphabet().size(), net.n());
  return static_cast<std::size_t>(l);
}

}  // namespace

std::string problem_name(const ProblemInstance& p) {
  switch (p.payload.index()) {
    case 0: return "prediction";
    case 1: return "predecessor";
    case 2: return "nilpotency";
    default: return "async-reach";
  }
}

Verdict solve_prediction(const Network& net, const Configuration& c, Vertex v, const NodeSpec& spec_v, std::size_t t,
                         const SolverOptions& opts) {
  require_deterministic(net, "prediction");
  check_configuration(net, c);
  if (v >= net.n()) throw ArgumentError("prediction node " + std::to_string(v) + " is out of range");
  if (spec_v.initial && !std::binary_search(spec_v.initial->begin(), spec_v.initial->end(), c[v]))
    throw ArgumentError("the specification of node " + std::to_string(v) + " excludes its initial state");
  if (spec_v.traces)
    for (const auto& [key, tr] : *spec_v.traces)
      if (tr.first() != c[v])
        throw ArgumentError("trace " + key + " of node " + std::to_string(v) + " does not start at state " +
                            std::to_string(c[v]));
  Specification spec(t);
  for (Vertex u = 0; u < net.n(); ++u) {
    if (u == v) {
      spec.node(u) = spec_v;
      if (spec_v.traces)
        for (const auto& [key, tr] : *spec_v.traces)
          if (tr.length() != t + 1)
            throw ValidationError("trace " + key + " has length " + std::to_string(tr.length()) + ", expected " +
                                  std::to_string(t + 1));
    }
    spec.set_initial(u, {c[u]});
  }
  return check_spec(net, spec, opts);
}

PredecessorResult solve_predecessor(const Network& net, const Configuration& c, std::size_t t,
                                    const SolverOptions& opts) {
  require_deterministic(net, "predecessor");
  check_configuration(net, c);
  Specification spec(t);
  for (Vertex u = 0; u < net.n(); ++u) spec.set_final(u, {c[u]});
  PredecessorResult res;
  res.verdict = check_spec(net, spec, opts);
  if (res.verdict.satisfiable) {
    Configuration y = res.verdict.witness->steps.front();
    if (simulate(net, y, t) != c) throw InternalError("predecessor witness does not reach the target");
    res.predecessor = std::move(y);
  }
  return res;
}

NilpotencyResult solve_nilpotency(const Network& net, const SolverOptions& opts) {
  require_deterministic(net, "nilpotency");
  const std::size_t n = net.n(), q = net.alphabet().size();
  NilpotencyResult res;
  res.horizon = lambda(net);
  std::vector<char> sat(n * q, 0);
  std::vector<std::optional<Configuration>> limit(n * q);
  tbb::parallel_for(std::size_t{0}, n * q, [&](std::size_t i) {
    const auto s = static_cast<Vertex>(i / q);
    const auto q0 = static_cast<State>(i % q);
    Specification spec(res.horizon);
    spec.set_final(s, {q0});
    const Verdict v = check_spec(net, spec, opts);
    sat[i] = v.satisfiable;
    if (v.satisfiable) limit[i] = v.witness->steps.back();
  });
  res.final_states.resize(n);
  res.nilpotent = true;
  for (std::size_t i = 0; i < n * q; ++i)
    if (sat[i]) res.final_states[i / q].push_back(static_cast<State>(i % q));
  for (const auto& r : res.final_states)
    if (r.size() != 1) res.nilpotent = false;
  if (res.nilpotent && n > 0) {
    Configuration fp(n);
    for (Vertex s = 0; s < n; ++s) fp[s] = res.final_states[s].front();
    if (step_deterministic(net, fp) != fp) throw InternalError("nilpotency limit is not a fixed point");
    res.fixed_point = std::move(fp);
  }
  return res;
}

AsyncReachResult solve_async_reachability(const Network& net, const Configuration& c0, const Configuration& c1,
                                          const SolverOptions& opts) {
  require_deterministic(net, "asynchronous reachability");
  check_configuration(net, c0);
  check_configuration(net, c1);
  const Network lifted = async_lift(net);
  Specification spec(lambda(net));
  for (Vertex u = 0; u < net.n(); ++u) {
    spec.set_initial(u, {c0[u]});
    spec.set_final(u, {c1[u]});
  }
  AsyncReachResult res;
  res.verdict = check_spec(lifted, spec, opts);
  if (!res.verdict.satisfiable) return res;
  Orbit& o = *res.verdict.witness;
  Orbit compact;
  compact.steps.push_back(o.steps.front());
  for (std::size_t s = 1; s < o.steps.size(); ++s) {
    if (o.steps[s] == compact.steps.back()) continue;
    std::vector<Vertex> changed;
    for (Vertex v = 0; v < net.n(); ++v)
      if (o.steps[s][v] != compact.steps.back()[v]) changed.push_back(v);
    res.schedule.push_back(std::move(changed));
    compact.steps.push_back(o.steps[s]);
  }
  o = std::move(compact);
  if (!replay_schedule(net, c0, res.schedule, c1)) throw InternalError("asynchronous schedule does not replay");
  return res;
}

bool replay_schedule(const Network& net, const Configuration& c0, const std::vector<std::vector<Vertex>>& schedule,
                     const Configuration& c1) {
  Configuration x = c0;
  for (const auto& step : schedule) {
    const Configuration fx = step_deterministic(net, x);
    Configuration y = x;
    for (Vertex v : step) {
      if (v >= net.n() || fx[v] == x[v]) return false;
      y[v] = fx[v];
    }
    x = std::move(y);
  }
  return x == c1;
}

}  // namespace fanspec
