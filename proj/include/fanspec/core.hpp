#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fanspec/errors.hpp"

namespace fanspec {

using Vertex = std::uint32_t;
using State = std::uint32_t;
using Configuration = std::vector<State>;
using StateSet = std::vector<State>;  // sorted, duplicate free

// Finite state set with a partial order. Small alphabets keep the full
// reflexive-transitive closure; product alphabets built by the gadgets pass a
// comparator instead.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<std::string> names, const std::vector<std::pair<State, State>>& order);
  static Alphabet from_comparator(std::vector<std::string> names,
                                  std::function<bool(State, State)> leq, std::size_t height);
  // "0" < "1" < ... < "q-1"
  static Alphabet chain(std::size_t q);

  std::size_t size() const { return names_.size(); }
  const std::string& name(State q) const { return names_.at(q); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<State> find(const std::string& name) const;
  State at(const std::string& name) const;

  bool leq(State a, State b) const {
    if (a == b) return true;
    if (!closure_.empty()) return closure_[static_cast<std::size_t>(a) * names_.size() + b] != 0;
    return cmp_ ? cmp_(a, b) : false;
  }
  bool lt(State a, State b) const { return a != b && leq(a, b); }
  // Number of states on a longest chain.
  std::size_t height() const { return height_; }
  bool has_closure() const { return !closure_.empty(); }
  // Hasse diagram (only for alphabets with an explicit closure).
  std::vector<std::pair<State, State>> covering_pairs() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, State> index_;
  std::vector<std::uint8_t> closure_;
  std::function<bool(State, State)> cmp_;
  std::size_t height_ = 0;
};

class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

  static Graph path(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph complete(std::size_t n);
  static Graph star(std::size_t leaves);
  // rows x cols grid, vertex (r, c) has label r * cols + c
  static Graph grid(std::size_t rows, std::size_t cols);

  std::size_t n() const { return adj_.size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  const std::vector<Vertex>& closed_neighborhood(Vertex v) const { return closed_.at(v); }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  std::size_t max_degree() const { return max_degree_; }
  bool has_edge(Vertex u, Vertex v) const;
  bool connected() const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::vector<Vertex>> closed_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::size_t max_degree_ = 0;
};

// A local rule sees the states of N[v] in increasing label order and appends
// its successor states to `out` (which it may leave unsorted).
using RuleFn = std::function<void(Vertex v, std::span<const State> scope, StateSet& out)>;

// rho(own state, set of states over N[v] including v) -> state
class SetRule {
 public:
  SetRule() = default;
  explicit SetRule(std::function<State(State, std::span<const State>)> fn) : fn_(std::move(fn)) {}

  void add(State state, StateSet set, State out);
  std::optional<State> lookup(State state, std::span<const State> set) const;
  State operator()(State state, std::span<const State> set) const;
  bool tabulated() const { return !fn_; }
  const std::map<std::pair<State, StateSet>, State>& table() const { return table_; }

 private:
  std::map<std::pair<State, StateSet>, State> table_;
  std::function<State(State, std::span<const State>)> fn_;
};

// Explicit table of F_v over Q^{N[v]}: one successor bitmask per row.
struct RuleTable {
  std::vector<std::uint64_t> masks;
  std::vector<std::uint8_t> defined;
};

class Network {
 public:
  Network() = default;

  // Rows enumerate N[v] in label order with the first vertex most significant.
  static Network from_tables(Graph g, Alphabet a, std::vector<RuleTable> tables);
  // Tables are filled from `fn` whenever they fit (|Q| <= 64, at most 2^20 rows).
  static Network from_function(Graph g, Alphabet a, RuleFn fn, bool deterministic,
                               bool materialize = true);

  const Graph& graph() const { return graph_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t n() const { return graph_.n(); }
  bool deterministic() const { return deterministic_; }
  bool materialized() const { return !tables_.empty(); }

  std::size_t self_index(Vertex v) const { return self_index_.at(v); }
  std::size_t row_count(Vertex v) const;
  std::size_t row_of(Vertex v, const Configuration& c) const;
  std::size_t row_of_local(std::span<const State> scope) const;
  const RuleTable& table(Vertex v) const { return tables_.at(v); }

  // F_v(c|N[v]); result sorted.
  void image(Vertex v, const Configuration& c, StateSet& out) const;
  void image_local(Vertex v, std::span<const State> scope, StateSet& out) const;
  bool admits(Vertex v, std::span<const State> scope, State next) const;
  State apply(Vertex v, const Configuration& c) const;  // deterministic only

  const std::optional<SetRule>& set_rule() const { return set_rule_; }
  void set_set_rule(SetRule rho) { set_rule_ = std::move(rho); }
  // Networks built by gadget constructors remember how to rebuild themselves.
  const std::string& generator() const { return generator_; }
  void set_generator(std::string g) { generator_ = std::move(g); }

 private:
  Graph graph_;
  Alphabet alphabet_;
  std::vector<RuleTable> tables_;
  RuleFn fn_;
  std::vector<std::size_t> self_index_;
  bool deterministic_ = true;
  std::optional<SetRule> set_rule_;
  std::string generator_;
};

struct ValidationIssue {
  enum class Kind { Disconnected, MissingRow, EmptyImage, Monotonicity, OutOfAlphabet, Nondeterministic };
  Kind kind;
  Vertex node = 0;
  Configuration input;  // states over N[node]
  State successor = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool exhaustive = true;  // false when some rule was only sampled
  std::size_t rows_checked = 0;
  bool ok() const { return issues.empty(); }
  std::string summary(std::size_t max_lines = 5) const;
};

ValidationReport validate_network(const Network& net, std::size_t sample_rows = 4096,
                                  std::uint64_t seed = 1);

Configuration step_deterministic(const Network& net, const Configuration& c);
std::vector<Configuration> successors(const Network& net, const Configuration& c,
                                      std::size_t cap = 1'000'000);
bool is_successor(const Network& net, const Configuration& x, const Configuration& y);
Network async_lift(const Network& net);
Network expand_set_rule(const SetRule& rho, const Graph& g, const Alphabet& a);

struct Orbit {
  std::vector<Configuration> steps;  // x_0 .. x_t
  std::size_t horizon() const { return steps.empty() ? 0 : steps.size() - 1; }
  std::vector<State> node_sequence(Vertex v) const;
};

Orbit orbit(const Network& net, const Configuration& c, std::size_t t);
// |U| * |Q| * (|Q| * n + 1)
std::uint64_t max_orbit_length(std::uint64_t u_count, std::uint64_t q_count, std::uint64_t n);

bool orbit_is_monotone(const Network& net, const Orbit& o);
bool orbit_replays(const Network& net, const Orbit& o);
void check_configuration(const Network& net, const Configuration& c);

enum class StandardRule { Or, And, Identity, Threshold, ConstantOne };
// Boolean freezing rules over the chain 0 < 1: OR over N[v]; AND turns v on
// once every neighbour is on; Threshold turns v on once at least `theta`
// neighbours are on; ConstantOne turns everything on.
Network standard_network(const Graph& g, StandardRule rule, unsigned theta = 1);

}  // namespace fanspec
