#include "fanspec/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <string>

namespace fanspec {

namespace {

class Guard {
 public:
  Guard(const OracleBudget& b, std::string what)
      : b_(b), what_(std::move(what)),
        deadline_(std::chrono::steady_clock::now() + std::chrono::milliseconds(b.timeout_ms)) {}

  void node() {
    if (++nodes_ > b_.max_nodes)
      throw BudgetError(what_ + ": more than " + std::to_string(b_.max_nodes) + " nodes explored");
    if ((nodes_ & 4095) == 0 && std::chrono::steady_clock::now() > deadline_)
      throw BudgetError(what_ + ": timeout after " + std::to_string(b_.timeout_ms) + " ms");
  }

  void configs(std::uint64_t count) const {
    if (count > b_.max_configs)
      throw BudgetError(what_ + ": " + std::to_string(count) + " configurations exceed the budget of " +
                        std::to_string(b_.max_configs));
  }

 private:
  const OracleBudget& b_;
  std::string what_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
};

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ArgumentError(std::string("environment variable ") + name + " is not a number: '" + s + "'");
  }
}

bool contains(const StateSet& s, State q) { return std::binary_search(s.begin(), s.end(), q); }

}  // namespace

OracleBudget oracle_budget_from_env(OracleBudget base) {
  base.max_configs = env_or("FANSPEC_ORACLE_MAX_CONFIGS", base.max_configs);
  base.max_nodes = env_or("FANSPEC_ORACLE_MAX_NODES", base.max_nodes);
  base.timeout_ms = env_or("FANSPEC_ORACLE_TIMEOUT_MS", base.timeout_ms);
  return base;
}

std::uint64_t configuration_count(const Network& net) {
  std::uint64_t total = 1;
  const std::uint64_t q = net.alphabet().size();
  for (std::size_t i = 0; i < net.n(); ++i) {
    if (q != 0 && total > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
    total *= q;
  }
  return total;
}

Configuration configuration_at(const Network& net, std::uint64_t index) {
  const std::uint64_t q = net.alphabet().size();
  Configuration c(net.n(), 0);
  for (std::size_t i = net.n(); i-- > 0;) {
    c[i] = static_cast<State>(index % q);
    index /= q;
  }
  return c;
}

// ---------------------------------------------------------------- SPEC

std::optional<Orbit> brute_spec_witness(const Network& net, const Specification& spec, const OracleBudget& budget) {
  spec.validate(net);
  Guard guard(budget, "brute_check_spec");
  const std::uint64_t total = configuration_count(net);
  guard.configs(total);
  const std::size_t n = net.n(), t = spec.horizon();

  // Explicit trace sets as sorted dense sequences; a prefix selects a range.
  std::vector<std::vector<std::vector<State>>> seqs(n);
  std::vector<bool> explicit_set(n, false);
  for (const auto& [v, ns] : spec.nodes()) {
    if (!ns.traces) continue;
    explicit_set[v] = true;
    for (const auto& [key, tr] : *ns.traces)
      if (spec.admits(v, tr)) seqs[v].push_back(tr.to_sequence());
    std::sort(seqs[v].begin(), seqs[v].end());
  }
  using Range = std::pair<std::size_t, std::size_t>;

  // false if node v cannot be in state q at time s given its range
  auto advance = [&](Vertex v, std::size_t s, State q, Range& r) {
    if (explicit_set[v]) {
      Range out{r.second, r.second};
      for (std::size_t i = r.first; i < r.second; ++i)
        if (seqs[v][i][s] == q) {
          if (out.first == r.second) out.first = i;
          out.second = i + 1;
        }
      r = out;
      return r.first < r.second;
    }
    const NodeSpec* ns = spec.find(v);
    if (!ns) return true;
    if (contains(ns->avoid, q)) return false;
    if (s == 0 && ns->initial && !contains(*ns->initial, q)) return false;
    if (s == t && ns->final && !contains(*ns->final, q)) return false;
    return true;
  };

  std::set<std::vector<std::uint64_t>> failed;
  std::vector<Configuration> path;
  std::function<bool(std::size_t, const Configuration&, const std::vector<Range>&)> dfs =
      [&](std::size_t s, const Configuration& x, const std::vector<Range>& ranges) -> bool {
    guard.node();
    if (s == t) return true;
    std::vector<std::uint64_t> key{s};
    key.insert(key.end(), x.begin(), x.end());
    for (const auto& r : ranges) {
      key.push_back(r.first);
      key.push_back(r.second);
    }
    if (failed.count(key)) return false;
    for (const auto& y : successors(net, x)) {
      std::vector<Range> next = ranges;
      bool ok = true;
      for (Vertex v = 0; v < n && ok; ++v) ok = advance(v, s + 1, y[v], next[v]);
      if (!ok) continue;
      path.push_back(y);
      if (dfs(s + 1, y, next)) return true;
      path.pop_back();
    }
    failed.insert(std::move(key));
    return false;
  };

  for (std::uint64_t idx = 0; idx < total; ++idx) {
    guard.node();
    const Configuration x0 = configuration_at(net, idx);
    std::vector<Range> ranges(n);
    bool ok = true;
    for (Vertex v = 0; v < n && ok; ++v) {
      ranges[v] = {0, seqs[v].size()};
      ok = advance(v, 0, x0[v], ranges[v]);
    }
    if (!ok) continue;
    path.assign(1, x0);
    if (dfs(0, x0, ranges)) {
      Orbit o{path};
      for (Vertex v = 0; v < n; ++v)
        if (!spec.admits_sequence(v, o.node_sequence(v)))
          throw InternalError("brute_check_spec produced an orbit outside the specification");
      return o;
    }
  }
  return std::nullopt;
}

bool brute_check_spec(const Network& net, const Specification& spec, const OracleBudget& budget) {
  return brute_spec_witness(net, spec, budget).has_value();
}

// ---------------------------------------------------------------- deterministic problems

namespace {

Configuration fixed_point(const Network& net, Configuration x, Guard& guard) {
  const std::size_t limit = net.n() * net.alphabet().size() + 1;
  for (std::size_t i = 0; i <= limit; ++i) {
    guard.node();
    Configuration y = step_deterministic(net, x);
    if (y == x) return x;
    x = std::move(y);
  }
  throw InternalError("orbit did not reach a fixed point; the network is not freezing");
}

void require_deterministic(const Network& net, const char* what) {
  if (!net.deterministic()) throw ArgumentError(std::string(what) + " needs a deterministic network");
}

}  // namespace

bool brute_nilpotency(const Network& net, const OracleBudget& budget) {
  require_deterministic(net, "brute_nilpotency");
  Guard guard(budget, "brute_nilpotency");
  const std::uint64_t total = configuration_count(net);
  guard.configs(total);
  std::optional<Configuration> common;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Configuration fp = fixed_point(net, configuration_at(net, idx), guard);
    if (!common) {
      common = std::move(fp);
    } else if (fp != *common) {
      return false;
    }
  }
  return true;
}

std::optional<Configuration> brute_predecessor(const Network& net, const Configuration& c, std::size_t t,
                                               const OracleBudget& budget) {
  require_deterministic(net, "brute_predecessor");
  check_configuration(net, c);
  Guard guard(budget, "brute_predecessor");
  const std::uint64_t total = configuration_count(net);
  guard.configs(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Configuration y = configuration_at(net, idx);
    Configuration x = y;
    for (std::size_t s = 0; s < t; ++s) {
      guard.node();
      Configuration next = step_deterministic(net, x);
      if (next == x) break;  // fixed from here on
      x = std::move(next);
    }
    if (x == c) return y;
  }
  return std::nullopt;
}

std::optional<std::vector<Configuration>> brute_async_path(const Network& net, const Configuration& c0,
                                                           const Configuration& c1, const OracleBudget& budget) {
  require_deterministic(net, "brute_async_reach");
  check_configuration(net, c0);
  check_configuration(net, c1);
  Guard guard(budget, "brute_async_reach");
  std::map<Configuration, Configuration> parent{{c0, c0}};
  std::deque<Configuration> queue{c0};
  while (!queue.empty()) {
    const Configuration x = queue.front();
    queue.pop_front();
    if (x == c1) {
      std::vector<Configuration> path{x};
      while (path.back() != c0) path.push_back(parent.at(path.back()));
      std::reverse(path.begin(), path.end());
      return path;
    }
    // nodes whose update would change them; any subset may fire
    const Configuration fx = step_deterministic(net, x);
    std::vector<Vertex> movable;
    for (Vertex v = 0; v < net.n(); ++v)
      if (fx[v] != x[v]) movable.push_back(v);
    if (movable.size() > 40) throw BudgetError("brute_async_reach: too many simultaneously active nodes");
    std::vector<Configuration> next;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << movable.size()); ++mask) {
      guard.node();
      Configuration y = x;
      for (std::size_t i = 0; i < movable.size(); ++i)
        if (mask >> i & 1) y[movable[i]] = fx[movable[i]];
      next.push_back(std::move(y));
    }
    std::sort(next.begin(), next.end());
    for (auto& y : next) {
      if (parent.count(y)) continue;
      parent.emplace(y, x);
      guard.configs(parent.size());
      queue.push_back(std::move(y));
    }
  }
  return std::nullopt;
}

bool brute_async_reach(const Network& net, const Configuration& c0, const Configuration& c1,
                       const OracleBudget& budget) {
  return brute_async_path(net, c0, c1, budget).has_value();
}

// ---------------------------------------------------------------- dominating set

std::optional<std::vector<Vertex>> brute_dominating_witness(const Graph& g, std::size_t k,
                                                            const OracleBudget& budget) {
  Guard guard(budget, "brute_dominating_set");
  const std::size_t n = g.n();
  if (n == 0) return std::vector<Vertex>{};
  // number of subsets of size <= k
  std::uint64_t count = 0, binom = 1;
  for (std::size_t j = 0; j <= std::min(k, n); ++j) {
    if (j) binom = binom * (n - j + 1) / j;
    count += binom;
  }
  guard.configs(count);
  for (std::size_t size = 1; size <= std::min(k, n); ++size) {
    std::vector<Vertex> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<Vertex>(i);
    while (true) {
      guard.node();
      std::vector<char> covered(n, 0);
      for (Vertex u : pick)
        for (Vertex w : g.closed_neighborhood(u)) covered[w] = 1;
      if (std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; })) return pick;
      // next combination
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

bool brute_dominating_set(const Graph& g, std::size_t k, const OracleBudget& budget) {
  return brute_dominating_witness(g, k, budget).has_value();
}

// ---------------------------------------------------------------- restricted orbits

std::set<std::vector<RleTrace>> brute_restricted_orbits(const Network& net, const std::vector<Vertex>& nodes,
                                                        std::size_t t, const OracleBudget& budget) {
  Guard guard(budget, "brute_restricted_orbits");
  const std::uint64_t total = configuration_count(net);
  guard.configs(total);
  std::vector<Vertex> u = nodes;
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  for (Vertex v : u)
    if (v >= net.n()) throw ArgumentError("vertex " + std::to_string(v) + " is not a node of the network");

  // (configuration, dense history of U flattened step by step)
  using Item = std::pair<Configuration, std::vector<State>>;
  auto restrict_to_u = [&](const Configuration& x, std::vector<State>& hist) {
    for (Vertex v : u) hist.push_back(x[v]);
  };
  std::set<Item> layer;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    guard.node();
    Configuration x = configuration_at(net, idx);
    std::vector<State> hist;
    restrict_to_u(x, hist);
    layer.emplace(std::move(x), std::move(hist));
  }
  for (std::size_t s = 0; s < t; ++s) {
    std::set<Item> next;
    for (const auto& [x, hist] : layer)
      for (auto& y : successors(net, x)) {
        guard.node();
        std::vector<State> h = hist;
        restrict_to_u(y, h);
        next.emplace(std::move(y), std::move(h));
        guard.configs(next.size());
      }
    layer = std::move(next);
  }
  std::set<std::vector<RleTrace>> out;
  for (const auto& [x, hist] : layer) {
    std::vector<RleTrace> traces;
    for (std::size_t i = 0; i < u.size(); ++i) {
      std::vector<State> seq(t + 1);
      for (std::size_t s = 0; s <= t; ++s) seq[s] = hist[s * u.size() + i];
      traces.push_back(RleTrace::from_sequence(seq));
    }
    out.insert(std::move(traces));
  }
  return out;
}

}  // namespace fanspec
