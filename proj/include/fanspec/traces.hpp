#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fanspec/core.hpp"

namespace fanspec {

struct Run {
  State state = 0;
  std::size_t length = 0;
  auto operator<=>(const Run&) const = default;
};

// Run-length form of one node's history x_0..x_t.
class RleTrace {
 public:
  RleTrace() = default;
  // Runs must have positive lengths and consecutive runs distinct states.
  explicit RleTrace(std::vector<Run> runs);
  static RleTrace from_sequence(std::span<const State> seq);
  static RleTrace constant(State q, std::size_t horizon) { return RleTrace({{q, horizon + 1}}); }

  const std::vector<Run>& runs() const { return runs_; }
  std::vector<State> to_sequence() const;
  std::size_t length() const { return length_; }
  std::size_t horizon() const { return length_ ? length_ - 1 : 0; }
  State at(std::size_t s) const;
  State first() const { return runs_.front().state; }
  State last() const { return runs_.back().state; }
  // times s > 0 with x_s != x_{s-1}
  std::vector<std::size_t> change_times() const;
  bool monotone(const Alphabet& a) const;

  auto operator<=>(const RleTrace&) const = default;

 private:
  std::vector<Run> runs_;
  std::size_t length_ = 0;
};

// "state:len,state:len,..." using state indices; injective on traces.
std::string canonical_key(const RleTrace& trace);
RleTrace trace_from_key(const std::string& key);

// Succinct form of a (U,t)-sequence: the rows of S at its change times.
struct SequenceEncoding {
  std::vector<Vertex> vertices;  // U, sorted
  std::size_t horizon = 0;
  std::vector<std::size_t> times;  // times[0] == 0, strictly increasing
  std::vector<std::vector<State>> states;  // one row per time, one column per vertex
  bool operator==(const SequenceEncoding&) const = default;
};

// columns[i] is the sequence of vertices[i]; all of length t + 1.
using DenseTable = std::vector<std::vector<State>>;

SequenceEncoding encode(const std::vector<Vertex>& vertices, const DenseTable& columns, std::size_t horizon,
                        const Alphabet& order);
SequenceEncoding encode_traces(const std::vector<Vertex>& vertices, const std::vector<RleTrace>& traces);
DenseTable decode(const SequenceEncoding& e);
SequenceEncoding restrict(const SequenceEncoding& e, const std::vector<Vertex>& subset);
RleTrace column_trace(const SequenceEncoding& e, Vertex v);

// Fixed-length layout with |Q|^|U| rows, padding times with t and repeating
// the last row. Kept only for interoperability with the padded word format.
struct PaddedEncoding {
  std::vector<std::size_t> times;
  std::vector<std::vector<State>> states;
};
PaddedEncoding pad(const SequenceEncoding& e, std::size_t alphabet_size);
SequenceEncoding unpad(const PaddedEncoding& p, const std::vector<Vertex>& vertices, std::size_t horizon);

// Admissible traces of one node. An explicit trace set (if any) is combined
// with optional first/last state sets and states that must never appear.
struct NodeSpec {
  std::optional<std::map<std::string, RleTrace>> traces;
  std::optional<StateSet> initial;
  std::optional<StateSet> final;
  StateSet avoid;

  bool has_traces() const { return traces.has_value(); }
  bool free() const { return !traces && !initial && !final && avoid.empty(); }
  bool admits_states(State first, State last) const;
};

class Specification {
 public:
  explicit Specification(std::size_t horizon = 0) : t_(horizon) {}

  std::size_t horizon() const { return t_; }
  const std::map<Vertex, NodeSpec>& nodes() const { return nodes_; }
  const NodeSpec* find(Vertex v) const;
  NodeSpec& node(Vertex v) { return nodes_[v]; }

  void add_trace(Vertex v, const RleTrace& trace);
  void forbid_all(Vertex v);  // explicit empty set
  void set_initial(Vertex v, StateSet states);
  void set_final(Vertex v, StateSet states);
  void set_avoid(Vertex v, StateSet states);

  bool admits(Vertex v, const RleTrace& trace) const;
  bool admits_sequence(Vertex v, std::span<const State> seq) const;
  // true when no node carries an explicit trace set
  bool constraint_only() const;
  // node ids, state ids, trace lengths and monotonicity against `net`
  void validate(const Network& net) const;

 private:
  std::size_t t_;
  std::map<Vertex, NodeSpec> nodes_;
};

// Per-node explicit trace sets from dense sequences (duplicates collapse).
Specification encode_spec(const std::map<Vertex, std::vector<std::vector<State>>>& traces, std::size_t horizon,
                          const Alphabet& order);

}  // namespace fanspec
