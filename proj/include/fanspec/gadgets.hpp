#pragma once

// Hardness constructions: bramble routing of circuits into host graphs, the
// circuit networks built on top of a routing, and the dominating-set grid.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanspec/core.hpp"
#include "fanspec/instances.hpp"
#include "fanspec/traces.hpp"

namespace fanspec {

// ---------------------------------------------------------------- brambles

struct Bramble {
  std::vector<std::vector<Vertex>> elements;  // each sorted
  std::size_t size() const { return elements.size(); }
};

struct BrambleIssue {
  enum class Kind { Empty, OutOfRange, Disconnected, Disjoint, Overloaded };
  Kind kind;
  std::size_t first = 0, second = 0;  // element indices
  Vertex vertex = 0;
  std::string message;
};

struct BrambleReport {
  std::vector<BrambleIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary(std::size_t max_lines = 5) const;
};

BrambleReport validate_bramble(const Graph& g, const Bramble& b);
// B_i = row i together with column i of the m x m grid (labels r * m + c).
Bramble grid_bramble(std::size_t m);

// ----------------------------------------------------------------- routing

struct SlotUse {
  enum class Kind { Gate, Path };
  Kind kind = Kind::Gate;
  std::size_t index = 0;     // gate id, or edge id for a path visit
  std::size_t position = 0;  // position on the path (path visits only)
  bool operator==(const SlotUse&) const = default;
};

struct RoutedEmbedding {
  std::vector<Vertex> mu;                  // digraph vertex -> host vertex
  std::vector<std::vector<Vertex>> paths;  // one per digraph edge, mu(src) .. mu(dst)
  std::vector<std::size_t> load;           // paths touching each host vertex
  // Components used at each host vertex: the digraph vertices placed there
  // (by id), then interior path visits (by edge, then position).
  std::vector<std::vector<SlotUse>> slots;
  std::size_t components() const;
  // slot index of digraph vertex `a` at mu(a); of interior visit `pos` on edge `e`
  std::size_t gate_slot(std::size_t a) const;
  std::size_t path_slot(std::size_t e, std::size_t pos) const;
};

using Digraph = std::vector<std::pair<std::size_t, std::size_t>>;

// Element i of `b` hosts digraph vertex i. Paths run inside B_src to the
// smallest shared vertex, then inside B_dst; BFS paths take the smallest label
// on ties and repeated vertices are shortcut.
RoutedEmbedding route(const Graph& g, const Bramble& b, std::size_t vertex_count, const Digraph& d);
// Maximum of in- and out-degree.
std::size_t digraph_degree(std::size_t vertex_count, const Digraph& d);

// Greedy colouring of the square of g in label order; colours start at 0.
std::vector<std::uint32_t> square_coloring(const Graph& g);
bool is_square_coloring(const Graph& g, const std::vector<std::uint32_t>& color);

// ---------------------------------------------------------------- circuits

enum class GateType { Input, Identity, Not, And, Or, Output, PreInput };
std::string gate_type_name(GateType t);
GateType gate_type_from_name(const std::string& name);

struct Gate {
  GateType type = GateType::Input;
  std::vector<std::size_t> inputs;
};

struct Circuit {
  std::vector<Gate> gates;

  std::vector<std::size_t> input_gates() const;
  std::vector<std::size_t> output_gates() const;
  // Wires as (source, target), in gate order then input order.
  Digraph wires() const;
  // Value of every gate on the given input bits (in input gate order).
  std::vector<bool> evaluate(const std::vector<bool>& inputs) const;
  // Longest wire count from an input to any gate.
  std::size_t depth() const;
};

// Arity per type, acyclic (inputs must precede their readers), fan-in and
// fan-out at most 2, at least one output. `monotone` forbids NOT gates;
// `alternating` requires AND and OR gates to read only inputs or gates of
// the other kind.
void validate_circuit(const Circuit& c, bool monotone = false, bool alternating = false);

// Input gates, then gates over {NOT, AND, OR}, then a single output reading
// the last gate. Fan-out never exceeds 2.
Circuit random_sat_circuit(std::size_t inputs, std::size_t inner_gates, Rng& rng);
// Monotone alternating circuit with at most `max_gates` gates including
// inputs and outputs.
Circuit random_monotone_circuit(std::size_t inputs, std::size_t max_gates, Rng& rng);
// Satisfiable by brute force over all assignments.
std::optional<std::vector<bool>> satisfying_assignment(const Circuit& c);

// A circuit routed into a host with a bramble of at least gates() elements.
struct CircuitHost {
  Graph graph;
  Bramble bramble;
};
// The m x m grid with its diagonal-cross bramble, m = max(2, gate count).
CircuitHost grid_host_for(const Circuit& c);

// ------------------------------------------------- hardwired nilpotency rule

struct NilpotencyGadget {
  Network net;
  Circuit circuit;
  RoutedEmbedding routing;
  std::size_t components = 0;  // Boolean components per node
  State bottom = 0;            // the error state, 2^components
};

NilpotencyGadget sat_nilpotency_gadget(const Circuit& c, const Graph& host, const Bramble& b);
// The configuration that writes the circuit's computation on `inputs`; spare
// components are 0.
Configuration nilpotency_configuration(const NilpotencyGadget& gadget, const std::vector<bool>& inputs);

// ------------------------------------------------------ set-defined gadgets

// Descriptor of one used component: what it computes and which channels it
// talks to. Channels are components * colour + slot.
struct SlotDescriptor {
  GateType type = GateType::Identity;
  std::vector<std::uint32_t> inputs;   // channels read
  std::vector<std::uint32_t> readers;  // channels that read this one
  bool operator==(const SlotDescriptor&) const = default;
};

struct Profile {
  std::uint32_t color = 0;
  std::vector<SlotDescriptor> slots;
  bool operator==(const Profile&) const = default;
};

// States are (profile, symbol per used slot); unused components are off and
// not stored. Symbols index `symbol_names`.
class SlotCodec {
 public:
  SlotCodec() = default;
  SlotCodec(std::vector<Profile> profiles, std::vector<std::string> symbol_names, std::size_t components);

  std::size_t state_count() const { return total_; }
  std::size_t symbols() const { return names_.size(); }
  std::size_t components() const { return components_; }
  const std::vector<Profile>& profiles() const { return profiles_; }
  const std::vector<std::string>& symbol_names() const { return names_; }

  State encode(std::size_t profile, const std::vector<std::uint32_t>& symbols) const;
  std::size_t profile_of(State s) const;
  std::vector<std::uint32_t> decode(State s) const;
  std::uint32_t symbol(State s, std::size_t slot) const;
  std::string name(State s) const;
  std::uint32_t channel(std::size_t profile, std::size_t slot) const {
    return static_cast<std::uint32_t>(components_ * profiles_[profile].color + slot);
  }

 private:
  std::vector<Profile> profiles_;
  std::vector<std::string> names_;
  std::size_t components_ = 0;
  std::vector<std::size_t> base_;
  std::size_t total_ = 0;
};

struct SetGadget {
  Network net;  // set-defined, deterministic
  Circuit circuit;
  RoutedEmbedding routing;
  std::vector<std::uint32_t> color;
  SlotCodec codec;
  std::vector<std::size_t> profile_of;  // per host vertex
  // Configuration with every used component at `symbol`.
  Configuration uniform(std::uint32_t symbol) const;
};

// Symbols 0, 1, ok, off. Target: every used component ok.
struct PredecessorGadget {
  SetGadget g;
  Configuration target;
};
PredecessorGadget circuit_predecessor_gadget(const Circuit& c, const Graph& host, const Bramble& b);
// The one-step predecessor writing the computation on `inputs`.
Configuration predecessor_configuration(const PredecessorGadget& gadget, const std::vector<bool>& inputs);

// Symbols ?, 0, 1, ok, off. Each input gets a pre-input component on a
// neighbouring node; whether the pre-input moves before the input decides
// the input bit.
struct AsyncGadget {
  SetGadget g;
  Configuration c0, c1;
  std::vector<Vertex> pre_input_host;  // per input gate
};
AsyncGadget circuit_async_gadget(const Circuit& c, const Graph& host, const Bramble& b);
// Schedule reaching c1 when the circuit accepts `inputs`: first every node
// except the hosts of true inputs, then synchronous steps to the fixed point.
// Steps list only nodes that change.
std::vector<std::vector<Vertex>> async_schedule(const AsyncGadget& gadget, const std::vector<bool>& inputs);

// Symbols wait, 0, 1, off. y0 holds the input bits; `spec_v` accepts the
// traces of v whose output component is 1 at time t.
struct RoutedPrediction {
  SetGadget g;
  Configuration y0;
  Vertex v = 0;
  std::size_t output_slot = 0;
  NodeSpec spec_v;
  std::size_t t = 0;
};
RoutedPrediction routed_prediction_gadget(const Circuit& c, const Graph& host, const Bramble& b,
                                          const std::vector<bool>& inputs, std::size_t output);
// Output bit at time t, or nullopt when still waiting.
std::optional<bool> routed_prediction_output(const RoutedPrediction& p, const Configuration& at_t);

// --------------------------------------------------------- dominating set

// (k+2) x n^2 grid, cyclic along rows. Row j (1-based) holds vertices
// (j-1) n^2 .. j n^2 - 1. Rows 1..k select, row k+1 witnesses domination,
// row k+2 holds closed neighbourhoods of the input graph block by block.
struct DominatingGadget {
  Network net;
  Specification spec;
  std::size_t t = 0;
  std::size_t graph_n = 0, k = 0, columns = 0;
  std::vector<std::vector<Vertex>> neighborhoods;  // closed, per input vertex
  Vertex cell(std::size_t row, std::size_t column) const { return static_cast<Vertex>((row - 1) * columns + column); }
};

DominatingGadget dominating_set_gadget(const Graph& g, std::size_t k);

// Component bits of a gadget state.
struct DomCell {
  bool mark = false, lt = false, err = false, down = false;
  bool r_in = false, l_in = false, r_own = false, l_own = false;
};
State dom_encode(const DomCell& c);
DomCell dom_decode(State s);

// Initial configuration from free markings: `marks[r]` lists the marked
// columns of row r + 1 for r < k + 1. The ordering layer is derived from the
// marks so that it is consistent whenever every block has one mark.
Configuration dominating_marking(const DominatingGadget& gadget, const std::vector<std::vector<std::size_t>>& marks);
// Runs the network for t steps and checks the specification.
bool dominating_run_accepted(const DominatingGadget& gadget, const Configuration& initial);

struct DominatingDecision {
  bool satisfiable = false;
  std::vector<Vertex> selection;  // one input vertex per selection row
  Configuration initial;
};
// Tries every selection of one vertex per selection row; the witness row
// marks, per block, the smallest selected vertex of that block's closed
// neighbourhood.
DominatingDecision decide_dominating_gadget(const DominatingGadget& gadget);

}  // namespace fanspec
