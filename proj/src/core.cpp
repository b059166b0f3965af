#include "fanspec/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace fanspec {

namespace {

constexpr std::size_t kMaxTableRows = std::size_t{1} << 20;

void normalize(StateSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

std::size_t table_rows(std::size_t q, std::size_t width) {
  std::size_t rows = 1;
  for (std::size_t i = 0; i < width; ++i) {
    if (rows > kMaxTableRows / std::max<std::size_t>(q, 1)) return kMaxTableRows + 1;
    rows *= q;
  }
  return rows;
}

void decode_row(std::size_t row, std::size_t q, std::size_t width, std::vector<State>& out) {
  out.assign(width, 0);
  for (std::size_t i = width; i-- > 0;) {
    out[i] = static_cast<State>(row % q);
    row /= q;
  }
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> names, const std::vector<std::pair<State, State>>& order)
    : names_(std::move(names)) {
  const std::size_t q = names_.size();
  for (State i = 0; i < q; ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw ValidationError("alphabet lists state '" + names_[i] + "' twice");
  }
  closure_.assign(q * q, 0);
  for (std::size_t i = 0; i < q; ++i) closure_[i * q + i] = 1;
  for (auto [lo, hi] : order) {
    if (lo >= q || hi >= q) throw ValidationError("order pair references a state outside the alphabet");
    closure_[lo * q + hi] = 1;
  }
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t i = 0; i < q; ++i)
      if (closure_[i * q + k])
        for (std::size_t j = 0; j < q; ++j)
          if (closure_[k * q + j]) closure_[i * q + j] = 1;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j)
      if (closure_[i * q + j] && closure_[j * q + i])
        throw ValidationError("order is not antisymmetric: '" + names_[i] + "' and '" + names_[j] +
                              "' are mutually below each other");
  // longest chain: process states by number of strict predecessors
  std::vector<std::size_t> below(q, 0), order_idx(q), best(q, 1);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if (i != j && closure_[j * q + i]) ++below[i];
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::sort(order_idx.begin(), order_idx.end(), [&](auto a, auto b) { return below[a] < below[b]; });
  height_ = q ? 1 : 0;
  for (auto i : order_idx) {
    for (std::size_t j = 0; j < q; ++j)
      if (j != i && closure_[j * q + i]) best[i] = std::max(best[i], best[j] + 1);
    height_ = std::max(height_, best[i]);
  }
}

Alphabet Alphabet::from_comparator(std::vector<std::string> names,
                                   std::function<bool(State, State)> leq, std::size_t height) {
  Alphabet a;
  a.names_ = std::move(names);
  for (State i = 0; i < a.names_.size(); ++i) {
    if (!a.index_.emplace(a.names_[i], i).second)
      throw ValidationError("alphabet lists state '" + a.names_[i] + "' twice");
  }
  a.cmp_ = std::move(leq);
  a.height_ = height;
  return a;
}

Alphabet Alphabet::chain(std::size_t q) {
  std::vector<std::string> names;
  std::vector<std::pair<State, State>> order;
  for (std::size_t i = 0; i < q; ++i) {
    names.push_back(std::to_string(i));
    if (i) order.emplace_back(static_cast<State>(i - 1), static_cast<State>(i));
  }
  return Alphabet(std::move(names), order);
}

std::optional<State> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

State Alphabet::at(const std::string& name) const {
  auto s = find(name);
  if (!s) throw ValidationError("unknown state '" + name + "'");
  return *s;
}

std::vector<std::pair<State, State>> Alphabet::covering_pairs() const {
  std::vector<std::pair<State, State>> out;
  const std::size_t q = size();
  if (closure_.empty()) return out;
  for (State a = 0; a < q; ++a)
    for (State b = 0; b < q; ++b) {
      if (!lt(a, b)) continue;
      bool covered = true;
      for (State c = 0; c < q && covered; ++c)
        if (lt(a, c) && lt(c, b)) covered = false;
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

// ---------------------------------------------------------------- Graph

Graph::Graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) : adj_(n), closed_(n) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") leaves 0.." +
                            std::to_string(n ? n - 1 : 0));
    if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (Vertex v = 0; v < n; ++v) {
    std::sort(adj_[v].begin(), adj_[v].end());
    max_degree_ = std::max(max_degree_, adj_[v].size());
    closed_[v] = adj_[v];
    closed_[v].insert(std::lower_bound(closed_[v].begin(), closed_[v].end(), v), v);
  }
}

Graph Graph::path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return Graph(n, e);
}

Graph Graph::cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph(n, e);
}

Graph Graph::complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph Graph::star(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

Graph Graph::grid(std::size_t rows, std::size_t cols) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, static_cast<Vertex>(v + cols));
    }
  return Graph(rows * cols, e);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj_.at(u);
  return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::connected() const {
  if (n() <= 1) return true;
  std::vector<char> seen(n(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : adj_[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n();
}

// ---------------------------------------------------------------- SetRule

void SetRule::add(State state, StateSet set, State out) {
  normalize(set);
  table_[{state, std::move(set)}] = out;
}

std::optional<State> SetRule::lookup(State state, std::span<const State> set) const {
  if (fn_) return fn_(state, set);
  auto it = table_.find({state, StateSet(set.begin(), set.end())});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

State SetRule::operator()(State state, std::span<const State> set) const {
  auto r = lookup(state, set);
  if (!r) throw ValidationError("set rule is undefined for this (state, set) pair");
  return *r;
}

// ---------------------------------------------------------------- Network

Network Network::from_tables(Graph g, Alphabet a, std::vector<RuleTable> tables) {
  if (tables.size() != g.n()) throw ValidationError("one rule table per vertex expected");
  if (a.size() > 64) throw ValidationError("explicit rule tables support at most 64 states");
  Network net;
  net.graph_ = std::move(g);
  net.alphabet_ = std::move(a);
  net.tables_ = std::move(tables);
  net.self_index_.resize(net.n());
  net.deterministic_ = true;
  for (Vertex v = 0; v < net.n(); ++v) {
    const auto& sc = net.graph_.closed_neighborhood(v);
    net.self_index_[v] = static_cast<std::size_t>(std::find(sc.begin(), sc.end(), v) - sc.begin());
    auto& t = net.tables_[v];
    std::size_t rows = net.row_count(v);
    if (t.masks.size() != rows) throw ValidationError("rule table of vertex " + std::to_string(v) + " has wrong size");
    if (t.defined.empty()) t.defined.assign(rows, 1);
    for (std::size_t r = 0; r < rows; ++r)
      if (t.defined[r] && std::popcount(t.masks[r]) != 1) net.deterministic_ = false;
  }
  return net;
}

Network Network::from_function(Graph g, Alphabet a, RuleFn fn, bool deterministic, bool materialize) {
  Network net;
  net.graph_ = std::move(g);
  net.alphabet_ = std::move(a);
  net.self_index_.resize(net.n());
  for (Vertex v = 0; v < net.n(); ++v) {
    const auto& sc = net.graph_.closed_neighborhood(v);
    net.self_index_[v] = static_cast<std::size_t>(std::find(sc.begin(), sc.end(), v) - sc.begin());
  }
  net.deterministic_ = deterministic;
  bool fits = net.alphabet_.size() <= 64;
  for (Vertex v = 0; fits && v < net.n(); ++v)
    if (table_rows(net.alphabet_.size(), net.graph_.closed_neighborhood(v).size()) > kMaxTableRows) fits = false;
  if (materialize && fits) {
    const std::size_t q = net.alphabet_.size();
    net.tables_.resize(net.n());
    std::vector<State> scope;
    StateSet out;
    for (Vertex v = 0; v < net.n(); ++v) {
      const std::size_t width = net.graph_.closed_neighborhood(v).size();
      const std::size_t rows = table_rows(q, width);
      auto& t = net.tables_[v];
      t.masks.assign(rows, 0);
      t.defined.assign(rows, 1);
      for (std::size_t r = 0; r < rows; ++r) {
        decode_row(r, q, width, scope);
        out.clear();
        fn(v, scope, out);
        for (State s : out) {
          if (s >= q) throw ValidationError("rule of vertex " + std::to_string(v) + " produced an unknown state");
          t.masks[r] |= std::uint64_t{1} << s;
        }
      }
    }
  } else {
    net.fn_ = std::move(fn);
  }
  return net;
}

std::size_t Network::row_count(Vertex v) const {
  return table_rows(alphabet_.size(), graph_.closed_neighborhood(v).size());
}

std::size_t Network::row_of_local(std::span<const State> scope) const {
  std::size_t row = 0;
  const std::size_t q = alphabet_.size();
  for (State s : scope) row = row * q + s;
  return row;
}

std::size_t Network::row_of(Vertex v, const Configuration& c) const {
  std::size_t row = 0;
  const std::size_t q = alphabet_.size();
  for (Vertex u : graph_.closed_neighborhood(v)) row = row * q + c[u];
  return row;
}

void Network::image_local(Vertex v, std::span<const State> scope, StateSet& out) const {
  out.clear();
  if (!tables_.empty()) {
    std::uint64_t m = tables_[v].masks[row_of_local(scope)];
    while (m) {
      out.push_back(static_cast<State>(std::countr_zero(m)));
      m &= m - 1;
    }
    return;
  }
  fn_(v, scope, out);
  normalize(out);
}

void Network::image(Vertex v, const Configuration& c, StateSet& out) const {
  if (!tables_.empty()) {
    out.clear();
    std::uint64_t m = tables_[v].masks[row_of(v, c)];
    while (m) {
      out.push_back(static_cast<State>(std::countr_zero(m)));
      m &= m - 1;
    }
    return;
  }
  const auto& sc = graph_.closed_neighborhood(v);
  State buf[64];
  std::vector<State> big;
  std::span<const State> scope;
  if (sc.size() <= 64) {
    for (std::size_t i = 0; i < sc.size(); ++i) buf[i] = c[sc[i]];
    scope = std::span<const State>(buf, sc.size());
  } else {
    for (Vertex u : sc) big.push_back(c[u]);
    scope = big;
  }
  out.clear();
  fn_(v, scope, out);
  normalize(out);
}

bool Network::admits(Vertex v, std::span<const State> scope, State next) const {
  if (!tables_.empty()) return (tables_[v].masks[row_of_local(scope)] >> next) & 1U;
  StateSet out;
  image_local(v, scope, out);
  return std::binary_search(out.begin(), out.end(), next);
}

State Network::apply(Vertex v, const Configuration& c) const {
  if (!tables_.empty()) {
    std::uint64_t m = tables_[v].masks[row_of(v, c)];
    if (m == 0) throw ValidationError("rule of vertex " + std::to_string(v) + " has an empty image");
    return static_cast<State>(std::countr_zero(m));
  }
  StateSet out;
  image(v, c, out);
  if (out.empty()) throw ValidationError("rule of vertex " + std::to_string(v) + " has an empty image");
  return out.front();
}

// ---------------------------------------------------------------- validation

std::string ValidationReport::summary(std::size_t max_lines) const {
  std::ostringstream os;
  if (issues.empty()) {
    os << "valid (" << rows_checked << " rows checked" << (exhaustive ? ", exhaustive" : ", sampled") << ")";
    return os.str();
  }
  os << issues.size() << " violation(s)";
  for (std::size_t i = 0; i < issues.size() && i < max_lines; ++i) os << "\n  " << issues[i].message;
  return os.str();
}

namespace {

std::string describe_input(const Network& net, Vertex v, const std::vector<State>& scope) {
  std::ostringstream os;
  const auto& sc = net.graph().closed_neighborhood(v);
  os << "{";
  for (std::size_t i = 0; i < sc.size(); ++i) {
    if (i) os << ", ";
    os << sc[i] << ": " << net.alphabet().name(scope[i]);
  }
  os << "}";
  return os.str();
}

}  // namespace

ValidationReport validate_network(const Network& net, std::size_t sample_rows, std::uint64_t seed) {
  ValidationReport rep;
  const Alphabet& a = net.alphabet();
  const std::size_t q = a.size();
  if (!net.graph().connected())
    rep.issues.push_back({ValidationIssue::Kind::Disconnected, 0, {}, 0, "interaction graph is disconnected"});
  std::mt19937_64 rng(seed);
  std::vector<State> scope;
  StateSet out;
  for (Vertex v = 0; v < net.n(); ++v) {
    const std::size_t width = net.graph().closed_neighborhood(v).size();
    const std::size_t self = net.self_index(v);
    const std::size_t rows = table_rows(q, width);
    const bool full = net.materialized() || rows <= sample_rows;
    const std::size_t count = full ? rows : sample_rows;
    if (!full) rep.exhaustive = false;
    for (std::size_t k = 0; k < count; ++k) {
      if (full) {
        decode_row(k, q, width, scope);
      } else {
        scope.resize(width);
        for (auto& s : scope) s = static_cast<State>(rng() % q);
      }
      ++rep.rows_checked;
      if (net.materialized() && !net.table(v).defined[k]) {
        rep.issues.push_back({ValidationIssue::Kind::MissingRow, v, scope, 0,
                              "vertex " + std::to_string(v) + ": rule table has no row for input " +
                                  describe_input(net, v, scope)});
        continue;
      }
      net.image_local(v, scope, out);
      if (out.empty()) {
        rep.issues.push_back({ValidationIssue::Kind::EmptyImage, v, scope, 0,
                              "vertex " + std::to_string(v) + ": empty image for input " +
                                  describe_input(net, v, scope)});
        continue;
      }
      if (net.deterministic() && out.size() > 1)
        rep.issues.push_back({ValidationIssue::Kind::Nondeterministic, v, scope, out[1],
                              "vertex " + std::to_string(v) + ": declared deterministic but image has " +
                                  std::to_string(out.size()) + " states"});
      for (State s : out) {
        if (s >= q) {
          rep.issues.push_back({ValidationIssue::Kind::OutOfAlphabet, v, scope, s,
                                "vertex " + std::to_string(v) + ": successor outside the alphabet"});
        } else if (!a.leq(scope[self], s)) {
          rep.issues.push_back({ValidationIssue::Kind::Monotonicity, v, scope, s,
                                "vertex " + std::to_string(v) + ": input " + describe_input(net, v, scope) +
                                    " may move to '" + a.name(s) + "' which is not above '" +
                                    a.name(scope[self]) + "'"});
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- semantics

void check_configuration(const Network& net, const Configuration& c) {
  if (c.size() != net.n())
    throw ValidationError("configuration has " + std::to_string(c.size()) + " entries, expected " +
                          std::to_string(net.n()));
  for (State s : c)
    if (s >= net.alphabet().size()) throw ValidationError("configuration holds a state outside the alphabet");
}

Configuration step_deterministic(const Network& net, const Configuration& c) {
  if (!net.deterministic()) throw ArgumentError("step_deterministic needs a deterministic network");
  check_configuration(net, c);
  Configuration next(c.size());
  for (Vertex v = 0; v < net.n(); ++v) next[v] = net.apply(v, c);
  return next;
}

std::vector<Configuration> successors(const Network& net, const Configuration& c, std::size_t cap) {
  check_configuration(net, c);
  std::vector<StateSet> images(net.n());
  double product = 1;
  for (Vertex v = 0; v < net.n(); ++v) {
    net.image(v, c, images[v]);
    product *= static_cast<double>(images[v].size());
  }
  if (product > static_cast<double>(cap))
    throw ResourceError("successor set would hold " + std::to_string(static_cast<long double>(product)) +
                        " configurations (cap " + std::to_string(cap) + ")");
  std::vector<Configuration> out;
  if (product == 0) return out;
  Configuration cur(net.n());
  std::vector<std::size_t> idx(net.n(), 0);
  while (true) {
    for (Vertex v = 0; v < net.n(); ++v) cur[v] = images[v][idx[v]];
    out.push_back(cur);
    std::size_t v = net.n();
    while (v > 0) {
      --v;
      if (++idx[v] < images[v].size()) break;
      idx[v] = 0;
      if (v == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
    if (net.n() == 0) return out;
  }
}

bool is_successor(const Network& net, const Configuration& x, const Configuration& y) {
  if (x.size() != net.n() || y.size() != net.n()) return false;
  StateSet img;
  for (Vertex v = 0; v < net.n(); ++v) {
    net.image(v, x, img);
    if (!std::binary_search(img.begin(), img.end(), y[v])) return false;
  }
  return true;
}

Network async_lift(const Network& net) {
  if (!net.deterministic()) throw ArgumentError("async_lift needs a deterministic network");
  Network lifted;
  if (net.materialized()) {
    std::vector<RuleTable> tables(net.n());
    const std::size_t q = net.alphabet().size();
    std::vector<State> scope;
    for (Vertex v = 0; v < net.n(); ++v) {
      tables[v] = net.table(v);
      const std::size_t width = net.graph().closed_neighborhood(v).size();
      for (std::size_t r = 0; r < tables[v].masks.size(); ++r) {
        decode_row(r, q, width, scope);
        tables[v].masks[r] |= std::uint64_t{1} << scope[net.self_index(v)];
      }
    }
    lifted = Network::from_tables(net.graph(), net.alphabet(), std::move(tables));
  } else {
    Network base = net;
    lifted = Network::from_function(
        net.graph(), net.alphabet(),
        [base](Vertex v, std::span<const State> scope, StateSet& out) {
          base.image_local(v, scope, out);
          out.push_back(scope[base.self_index(v)]);
        },
        false, false);
  }
  if (net.set_rule()) lifted.set_set_rule(*net.set_rule());
  return lifted;
}

Network expand_set_rule(const SetRule& rho, const Graph& g, const Alphabet& a) {
  const std::size_t q = a.size();
  if (q > 64) throw ValidationError("expand_set_rule builds explicit tables (at most 64 states)");
  std::vector<RuleTable> tables(g.n());
  std::vector<State> scope;
  StateSet set;
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto& sc = g.closed_neighborhood(v);
    const auto self = static_cast<std::size_t>(std::find(sc.begin(), sc.end(), v) - sc.begin());
    const std::size_t rows = table_rows(q, sc.size());
    if (rows > kMaxTableRows) throw ResourceError("rule table of vertex " + std::to_string(v) + " is too large");
    auto& t = tables[v];
    t.masks.assign(rows, 0);
    t.defined.assign(rows, 1);
    for (std::size_t r = 0; r < rows; ++r) {
      decode_row(r, q, sc.size(), scope);
      set = scope;
      normalize(set);
      auto out = rho.lookup(scope[self], set);
      if (!out) {
        std::string s;
        for (State x : set) s += (s.empty() ? "" : ",") + a.name(x);
        throw ValidationError("set rule has no entry for state '" + a.name(scope[self]) + "' with set {" + s + "}");
      }
      if (*out >= q) throw ValidationError("set rule produces a state outside the alphabet");
      if (!a.leq(scope[self], *out))
        throw ValidationError("set rule violates freezing: '" + a.name(scope[self]) + "' -> '" + a.name(*out) + "'");
      t.masks[r] = std::uint64_t{1} << *out;
    }
  }
  Network net = Network::from_tables(g, a, std::move(tables));
  net.set_set_rule(rho);
  return net;
}

std::vector<State> Orbit::node_sequence(Vertex v) const {
  std::vector<State> s;
  s.reserve(steps.size());
  for (const auto& c : steps) s.push_back(c.at(v));
  return s;
}

Orbit orbit(const Network& net, const Configuration& c, std::size_t t) {
  if (!net.deterministic()) throw ArgumentError("orbit needs a deterministic network");
  check_configuration(net, c);
  Orbit o;
  o.steps.reserve(t + 1);
  o.steps.push_back(c);
  for (std::size_t s = 0; s < t; ++s) o.steps.push_back(step_deterministic(net, o.steps.back()));
  return o;
}

std::uint64_t max_orbit_length(std::uint64_t u_count, std::uint64_t q_count, std::uint64_t n) {
  if (u_count == 0 || q_count == 0 || n == 0) throw ArgumentError("max_orbit_length arguments must be >= 1");
  return u_count * q_count * (q_count * n + 1);
}

bool orbit_is_monotone(const Network& net, const Orbit& o) {
  for (std::size_t s = 0; s + 1 < o.steps.size(); ++s)
    for (Vertex v = 0; v < net.n(); ++v)
      if (!net.alphabet().leq(o.steps[s][v], o.steps[s + 1][v])) return false;
  return true;
}

bool orbit_replays(const Network& net, const Orbit& o) {
  for (std::size_t s = 0; s + 1 < o.steps.size(); ++s)
    if (!is_successor(net, o.steps[s], o.steps[s + 1])) return false;
  return true;
}

Network standard_network(const Graph& g, StandardRule rule, unsigned theta) {
  return Network::from_function(
      g, Alphabet::chain(2),
      [&g, rule, theta](Vertex v, std::span<const State> scope, StateSet& out) {
        const auto& sc = g.closed_neighborhood(v);
        State self = 0;
        unsigned on = 0, others = 0;
        for (std::size_t i = 0; i < sc.size(); ++i) {
          if (sc[i] == v) {
            self = scope[i];
          } else {
            ++others;
            on += scope[i];
          }
        }
        State next = self;
        switch (rule) {
          case StandardRule::Or: next = (self || on) ? 1 : 0; break;
          case StandardRule::And: next = (self || (others > 0 && on == others)) ? 1 : 0; break;
          case StandardRule::Identity: break;
          case StandardRule::Threshold: next = (self || on >= theta) ? 1 : 0; break;
          case StandardRule::ConstantOne: next = 1; break;
        }
        out.push_back(next);
      },
      true, true);
}

}  // namespace fanspec
