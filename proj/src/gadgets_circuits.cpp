#include <algorithm>
#include <numeric>

#include "fanspec/gadgets.hpp"

namespace fanspec {

namespace {

std::size_t arity(GateType t) {
  switch (t) {
    case GateType::Input:
    case GateType::PreInput: return 0;
    case GateType::And:
    case GateType::Or: return 2;
    default: return 1;
  }
}

bool apply_gate(GateType t, const std::vector<bool>& in) {
  switch (t) {
    case GateType::Not: return !in[0];
    case GateType::And: return in[0] && in[1];
    case GateType::Or: return in[0] || in[1];
    default: return in.empty() ? false : in[0];
  }
}

// Where a component reads from and who reads it, in host coordinates.
struct Port {
  Vertex host = 0;
  std::size_t slot = 0;
};
struct SlotWiring {
  GateType type = GateType::Identity;  // path visits copy their predecessor
  std::size_t gate = SIZE_MAX;         // gate id for gate slots
  std::size_t wire = SIZE_MAX;         // edge id for path slots
  std::vector<Port> sources, readers;
};

using Wiring = std::vector<std::vector<SlotWiring>>;

Wiring wire_up(const Circuit& c, const RoutedEmbedding& r) {
  const Digraph wires = c.wires();
  // position of each wire in the gate's input list order
  std::vector<std::vector<std::size_t>> wire_of_input(c.gates.size());
  for (std::size_t e = 0; e < wires.size(); ++e) wire_of_input[wires[e].second].push_back(e);

  auto start_port = [&](std::size_t e) { return Port{r.mu[wires[e].first], r.gate_slot(wires[e].first)}; };
  // component just before position `pos` on wire e
  auto before = [&](std::size_t e, std::size_t pos) {
    if (pos <= 1) return start_port(e);
    return Port{r.paths[e][pos - 1], r.path_slot(e, pos - 1)};
  };
  // component just after position `pos` on wire e
  auto after = [&](std::size_t e, std::size_t pos) {
    const std::size_t last = r.paths[e].size() - 1;
    if (pos + 1 >= last) return Port{r.mu[wires[e].second], r.gate_slot(wires[e].second)};
    return Port{r.paths[e][pos + 1], r.path_slot(e, pos + 1)};
  };

  Wiring w(r.slots.size());
  for (Vertex v = 0; v < r.slots.size(); ++v) {
    for (const SlotUse& use : r.slots[v]) {
      SlotWiring s;
      if (use.kind == SlotUse::Kind::Gate) {
        s.type = c.gates[use.index].type;
        s.gate = use.index;
        for (std::size_t e : wire_of_input[use.index]) {
          const std::size_t last = r.paths[e].size() - 1;
          s.sources.push_back(last == 0 ? start_port(e) : before(e, last));
        }
        for (std::size_t e = 0; e < wires.size(); ++e)
          if (wires[e].first == use.index) s.readers.push_back(after(e, 0));
      } else {
        s.wire = use.index;
        s.sources.push_back(before(use.index, use.position));
        s.readers.push_back(after(use.index, use.position));
      }
      w[v].push_back(std::move(s));
    }
  }
  return w;
}

std::size_t scope_position(const Graph& g, Vertex v, Vertex u) {
  const auto& nb = g.closed_neighborhood(v);
  auto it = std::lower_bound(nb.begin(), nb.end(), u);
  if (it == nb.end() || *it != u) throw InternalError("component source outside the neighbourhood");
  return static_cast<std::size_t>(it - nb.begin());
}

// Per-component Boolean value of the computation on `inputs`.
std::vector<std::vector<bool>> slot_values(const Circuit& c, const RoutedEmbedding& r, const std::vector<bool>& inputs) {
  const auto values = c.evaluate(inputs);
  const Digraph wires = c.wires();
  std::vector<std::vector<bool>> out(r.slots.size());
  for (std::size_t v = 0; v < r.slots.size(); ++v)
    for (const SlotUse& use : r.slots[v])
      out[v].push_back(use.kind == SlotUse::Kind::Gate ? values[use.index] : values[wires[use.index].first]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- circuits

std::string gate_type_name(GateType t) {
  switch (t) {
    case GateType::Input: return "input";
    case GateType::Identity: return "identity";
    case GateType::Not: return "not";
    case GateType::And: return "and";
    case GateType::Or: return "or";
    case GateType::Output: return "output";
    case GateType::PreInput: return "pre-input";
  }
  return "?";
}

GateType gate_type_from_name(const std::string& name) {
  for (GateType t : {GateType::Input, GateType::Identity, GateType::Not, GateType::And, GateType::Or,
                     GateType::Output, GateType::PreInput})
    if (gate_type_name(t) == name) return t;
  throw ParseError("unknown gate type '" + name + "'");
}

std::vector<std::size_t> Circuit::input_gates() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].type == GateType::Input) out.push_back(i);
  return out;
}

std::vector<std::size_t> Circuit::output_gates() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].type == GateType::Output) out.push_back(i);
  return out;
}

Digraph Circuit::wires() const {
  Digraph d;
  for (std::size_t g = 0; g < gates.size(); ++g)
    for (std::size_t src : gates[g].inputs) d.emplace_back(src, g);
  return d;
}

std::vector<bool> Circuit::evaluate(const std::vector<bool>& inputs) const {
  std::vector<bool> val(gates.size(), false);
  std::size_t next = 0;
  for (std::size_t g = 0; g < gates.size(); ++g) {
    if (gates[g].type == GateType::Input) {
      if (next >= inputs.size()) throw ArgumentError("too few input bits for the circuit");
      val[g] = inputs[next++];
    } else if (gates[g].type != GateType::PreInput) {
      std::vector<bool> in;
      for (std::size_t s : gates[g].inputs) in.push_back(val[s]);
      val[g] = apply_gate(gates[g].type, in);
    }
  }
  if (next != inputs.size()) throw ArgumentError("too many input bits for the circuit");
  return val;
}

std::size_t Circuit::depth() const {
  std::vector<std::size_t> d(gates.size(), 0);
  std::size_t best = 0;
  for (std::size_t g = 0; g < gates.size(); ++g) {
    for (std::size_t s : gates[g].inputs) d[g] = std::max(d[g], d[s] + 1);
    best = std::max(best, d[g]);
  }
  return best;
}

void validate_circuit(const Circuit& c, bool monotone, bool alternating) {
  std::vector<std::size_t> fanout(c.gates.size(), 0);
  bool has_output = false;
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    const std::string where = "gate " + std::to_string(g) + " (" + gate_type_name(gate.type) + ")";
    if (gate.type == GateType::PreInput) throw ValidationError(where + ": pre-input gates are internal");
    if (gate.inputs.size() != arity(gate.type))
      throw ValidationError(where + " has " + std::to_string(gate.inputs.size()) + " inputs, expected " +
                            std::to_string(arity(gate.type)));
    if (monotone && gate.type == GateType::Not) throw ValidationError(where + ": NOT in a monotone circuit");
    for (std::size_t k = 0; k < gate.inputs.size(); ++k) {
      const std::size_t s = gate.inputs[k];
      if (s >= g) throw ValidationError(where + " reads gate " + std::to_string(s) + ", which does not precede it");
      if (c.gates[s].type == GateType::Output) throw ValidationError(where + " reads an output gate");
      if (k && gate.inputs[0] == s) throw ValidationError(where + " reads gate " + std::to_string(s) + " twice");
      if (++fanout[s] > 2) throw ValidationError("gate " + std::to_string(s) + " has fan-out above 2");
      if (alternating && (gate.type == GateType::And || gate.type == GateType::Or)) {
        const GateType st = c.gates[s].type;
        if (st == gate.type) throw ValidationError(where + " reads a gate of the same kind");
      }
    }
    has_output |= gate.type == GateType::Output;
  }
  if (!has_output) throw ValidationError("circuit has no output gate");
}

Circuit random_sat_circuit(std::size_t inputs, std::size_t inner_gates, Rng& rng) {
  if (inputs == 0) throw ArgumentError("a circuit needs at least one input");
  Circuit c;
  std::vector<std::size_t> fanout;
  for (std::size_t i = 0; i < inputs; ++i) {
    c.gates.push_back({GateType::Input, {}});
    fanout.push_back(0);
  }
  auto pick = [&](std::size_t avoid) -> std::optional<std::size_t> {
    std::vector<std::size_t> fresh, open;
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
      if (g == avoid || fanout[g] >= 2) continue;
      (fanout[g] == 0 ? fresh : open).push_back(g);
    }
    if (!fresh.empty() && (open.empty() || coin(rng, 75))) return fresh[draw(rng, fresh.size())];
    if (!open.empty()) return open[draw(rng, open.size())];
    return std::nullopt;
  };
  for (std::size_t k = 0; k < inner_gates; ++k) {
    const unsigned roll = static_cast<unsigned>(draw(rng, 100));
    GateType t = roll < 25 ? GateType::Not : roll < 62 ? GateType::And : GateType::Or;
    auto a = pick(SIZE_MAX);
    if (!a) break;
    Gate gate{t, {*a}};
    if (arity(t) == 2) {
      auto b = pick(*a);
      if (!b) {
        gate.type = GateType::Not;
      } else {
        gate.inputs.push_back(*b);
      }
    }
    for (std::size_t s : gate.inputs) ++fanout[s];
    c.gates.push_back(std::move(gate));
    fanout.push_back(0);
  }
  c.gates.push_back({GateType::Output, {c.gates.size() - 1}});
  return c;
}

Circuit random_monotone_circuit(std::size_t inputs, std::size_t max_gates, Rng& rng) {
  if (inputs == 0 || max_gates < inputs + 1) throw ArgumentError("monotone circuit needs room for its inputs and output");
  Circuit c;
  std::vector<std::size_t> fanout;
  for (std::size_t i = 0; i < inputs; ++i) {
    c.gates.push_back({GateType::Input, {}});
    fanout.push_back(0);
  }
  GateType kind = coin(rng, 50) ? GateType::And : GateType::Or;
  while (c.gates.size() + 1 < max_gates) {
    const GateType other = kind == GateType::And ? GateType::Or : GateType::And;
    std::vector<std::size_t> cand;
    for (std::size_t g = 0; g < c.gates.size(); ++g)
      if (fanout[g] < 2 && (c.gates[g].type == GateType::Input || c.gates[g].type == other)) cand.push_back(g);
    if (cand.size() < 2) break;
    // prefer the newest gate so that depth grows
    std::size_t a = cand.back();
    if (coin(rng, 40)) a = cand[draw(rng, cand.size())];
    cand.erase(std::find(cand.begin(), cand.end(), a));
    const std::size_t b = cand[draw(rng, cand.size())];
    ++fanout[a];
    ++fanout[b];
    c.gates.push_back({kind, {std::min(a, b), std::max(a, b)}});
    fanout.push_back(0);
    kind = other;
  }
  c.gates.push_back({GateType::Output, {c.gates.size() - 1}});
  return c;
}

std::optional<std::vector<bool>> satisfying_assignment(const Circuit& c) {
  const std::size_t n = c.input_gates().size();
  if (n > 24) throw BudgetError("satisfiability by enumeration is limited to 24 inputs");
  const auto outs = c.output_gates();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<bool> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
    const auto val = c.evaluate(x);
    if (std::all_of(outs.begin(), outs.end(), [&](std::size_t o) { return val[o]; })) return x;
  }
  return std::nullopt;
}

CircuitHost grid_host_for(const Circuit& c) {
  const std::size_t m = std::max<std::size_t>(2, c.gates.size());
  return {Graph::grid(m, m), grid_bramble(m)};
}

// ------------------------------------------------- hardwired nilpotency rule

NilpotencyGadget sat_nilpotency_gadget(const Circuit& c, const Graph& host, const Bramble& b) {
  validate_circuit(c);
  NilpotencyGadget gad;
  gad.circuit = c;
  gad.routing = route(host, b, c.gates.size(), c.wires());
  const std::size_t comps = std::max<std::size_t>(1, gad.routing.components());
  if (comps > 16) throw ResourceError("nilpotency gadget needs " + std::to_string(comps) + " components per node");
  gad.components = comps;
  const State bottom = static_cast<State>(std::size_t{1} << comps);
  gad.bottom = bottom;

  std::vector<std::string> names;
  for (State s = 0; s < bottom; ++s) {
    std::string name;
    for (std::size_t i = 0; i < comps; ++i) name.push_back((s >> i) & 1 ? '1' : '0');
    names.push_back(std::move(name));
  }
  names.push_back("bot");
  Alphabet a = Alphabet::from_comparator(
      std::move(names), [bottom](State x, State y) { return x == y || y == bottom; }, 2);

  struct Check {
    GateType type;
    std::size_t slot;
    std::vector<std::pair<std::size_t, std::size_t>> sources;  // (scope position, slot)
  };
  const Wiring wiring = wire_up(c, gad.routing);
  std::vector<std::vector<Check>> checks(host.n());
  for (Vertex v = 0; v < host.n(); ++v)
    for (std::size_t s = 0; s < wiring[v].size(); ++s) {
      Check ch{wiring[v][s].type, s, {}};
      for (const Port& p : wiring[v][s].sources) ch.sources.emplace_back(scope_position(host, v, p.host), p.slot);
      checks[v].push_back(std::move(ch));
    }
  std::vector<std::size_t> self(host.n());
  for (Vertex v = 0; v < host.n(); ++v) self[v] = scope_position(host, v, v);

  RuleFn fn = [checks, self, bottom](Vertex v, std::span<const State> scope, StateSet& out) {
    for (State s : scope)
      if (s == bottom) {
        out.push_back(bottom);
        return;
      }
    const State own = scope[self[v]];
    std::vector<bool> in;
    for (const Check& ch : checks[v]) {
      in.clear();
      for (auto [pos, slot] : ch.sources) in.push_back((scope[pos] >> slot) & 1);
      const bool x = (own >> ch.slot) & 1;
      bool ok = true;
      if (ch.type != GateType::Input) ok = x == apply_gate(ch.type, in);
      if (ch.type == GateType::Output) ok = ok && x;
      if (!ok) {
        out.push_back(bottom);
        return;
      }
    }
    out.push_back(own);
  };
  gad.net = Network::from_function(host, std::move(a), std::move(fn), true, false);
  gad.net.set_generator("sat-nilpotency");
  return gad;
}

Configuration nilpotency_configuration(const NilpotencyGadget& gadget, const std::vector<bool>& inputs) {
  const auto vals = slot_values(gadget.circuit, gadget.routing, inputs);
  Configuration c(gadget.net.n(), 0);
  for (Vertex v = 0; v < c.size(); ++v)
    for (std::size_t s = 0; s < vals[v].size(); ++s)
      if (vals[v][s]) c[v] |= State{1} << s;
  return c;
}

// ------------------------------------------------------ set-defined gadgets

SlotCodec::SlotCodec(std::vector<Profile> profiles, std::vector<std::string> symbol_names, std::size_t components)
    : profiles_(std::move(profiles)), names_(std::move(symbol_names)), components_(components) {
  const std::size_t q = names_.size();
  for (const Profile& p : profiles_) {
    base_.push_back(total_);
    std::size_t count = 1;
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
      count *= q;
      if (count > (std::size_t{1} << 22)) throw ResourceError("set-defined gadget alphabet is too large");
    }
    total_ += count;
    if (total_ > (std::size_t{1} << 22)) throw ResourceError("set-defined gadget alphabet is too large");
  }
}

State SlotCodec::encode(std::size_t profile, const std::vector<std::uint32_t>& symbols) const {
  std::size_t idx = 0;
  for (std::size_t i = symbols.size(); i-- > 0;) idx = idx * names_.size() + symbols[i];
  return static_cast<State>(base_.at(profile) + idx);
}

std::size_t SlotCodec::profile_of(State s) const {
  auto it = std::upper_bound(base_.begin(), base_.end(), static_cast<std::size_t>(s));
  return static_cast<std::size_t>(it - base_.begin()) - 1;
}

std::vector<std::uint32_t> SlotCodec::decode(State s) const {
  const std::size_t p = profile_of(s);
  std::size_t idx = s - base_[p];
  std::vector<std::uint32_t> out(profiles_[p].slots.size());
  for (auto& sym : out) {
    sym = static_cast<std::uint32_t>(idx % names_.size());
    idx /= names_.size();
  }
  return out;
}

std::uint32_t SlotCodec::symbol(State s, std::size_t slot) const {
  const std::size_t p = profile_of(s);
  std::size_t idx = s - base_[p];
  for (std::size_t i = 0; i < slot; ++i) idx /= names_.size();
  return static_cast<std::uint32_t>(idx % names_.size());
}

std::string SlotCodec::name(State s) const {
  std::string out = "p" + std::to_string(profile_of(s)) + ":";
  const auto syms = decode(s);
  for (std::size_t i = 0; i < syms.size(); ++i) out += (i ? "," : "") + names_[syms[i]];
  return out;
}

Configuration SetGadget::uniform(std::uint32_t symbol) const {
  Configuration c(net.n());
  for (Vertex v = 0; v < c.size(); ++v)
    c[v] = codec.encode(profile_of[v], std::vector<std::uint32_t>(codec.profiles()[profile_of[v]].slots.size(), symbol));
  return c;
}

namespace {

// Symbol read on a channel: defined when exactly one state of the set holds
// that channel in a state other than off.
class ChannelReader {
 public:
  ChannelReader(const SlotCodec& codec, std::span<const State> set, std::uint32_t off) {
    for (State s : set) {
      const std::size_t p = codec.profile_of(s);
      const auto syms = codec.decode(s);
      for (std::size_t i = 0; i < syms.size(); ++i)
        if (syms[i] != off) seen_.emplace_back(codec.channel(p, i), syms[i]);
    }
    std::sort(seen_.begin(), seen_.end());
  }
  std::optional<std::uint32_t> read(std::uint32_t ch) const {
    auto lo = std::lower_bound(seen_.begin(), seen_.end(), std::make_pair(ch, std::uint32_t{0}));
    if (lo == seen_.end() || lo->first != ch) return std::nullopt;
    auto next = lo + 1;
    if (next != seen_.end() && next->first == ch) return std::nullopt;
    return lo->second;
  }

 private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seen_;
};

using SlotStep = std::function<std::uint32_t(const SlotDescriptor&, std::uint32_t, const ChannelReader&)>;

struct SetFamily {
  std::vector<std::string> symbols;
  std::vector<std::vector<char>> leq;  // leq[a][b]
  std::size_t chain = 0;               // states on a longest per-component chain
  std::uint32_t off = 0;
  SlotStep step;
  std::string generator;
};

SetGadget build_set_gadget(const Circuit& c, const Graph& host, const RoutedEmbedding& routing, const SetFamily& fam) {
  SetGadget g;
  g.circuit = c;
  g.routing = routing;
  g.color = square_coloring(host);
  const std::size_t comps = std::max<std::size_t>(1, routing.components());
  const Wiring wiring = wire_up(c, routing);

  auto channel_of = [&](const Port& p) { return static_cast<std::uint32_t>(comps * g.color[p.host] + p.slot); };
  std::vector<Profile> profiles;
  g.profile_of.resize(host.n());
  for (Vertex v = 0; v < host.n(); ++v) {
    Profile p;
    p.color = g.color[v];
    for (const SlotWiring& s : wiring[v]) {
      SlotDescriptor d;
      d.type = s.type;
      for (const Port& src : s.sources) d.inputs.push_back(channel_of(src));
      for (const Port& r : s.readers) d.readers.push_back(channel_of(r));
      p.slots.push_back(std::move(d));
    }
    auto it = std::find(profiles.begin(), profiles.end(), p);
    g.profile_of[v] = static_cast<std::size_t>(it - profiles.begin());
    if (it == profiles.end()) profiles.push_back(std::move(p));
  }
  g.codec = SlotCodec(std::move(profiles), fam.symbols, comps);

  const SlotCodec codec = g.codec;
  std::size_t height = 1;
  std::vector<std::string> names(codec.state_count());
  for (State s = 0; s < names.size(); ++s) names[s] = codec.name(s);
  for (const Profile& p : codec.profiles()) height = std::max(height, p.slots.size() * (fam.chain - 1) + 1);
  const auto leq = fam.leq;
  Alphabet a = Alphabet::from_comparator(
      std::move(names),
      [codec, leq](State x, State y) {
        if (codec.profile_of(x) != codec.profile_of(y)) return false;
        const auto sx = codec.decode(x), sy = codec.decode(y);
        for (std::size_t i = 0; i < sx.size(); ++i)
          if (!leq[sx[i]][sy[i]]) return false;
        return true;
      },
      height);

  const SlotStep step = fam.step;
  const std::uint32_t off = fam.off;
  auto rho = [codec, step, off](State own, std::span<const State> set) {
    const ChannelReader reader(codec, set, off);
    const std::size_t p = codec.profile_of(own);
    auto syms = codec.decode(own);
    for (std::size_t i = 0; i < syms.size(); ++i) syms[i] = step(codec.profiles()[p].slots[i], syms[i], reader);
    return codec.encode(p, syms);
  };
  std::vector<std::size_t> self(host.n());
  for (Vertex v = 0; v < host.n(); ++v) self[v] = scope_position(host, v, v);
  RuleFn fn = [rho, self](Vertex v, std::span<const State> scope, StateSet& out) {
    std::vector<State> set(scope.begin(), scope.end());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    out.push_back(rho(scope[self[v]], set));
  };
  g.net = Network::from_function(host, std::move(a), std::move(fn), true, false);
  g.net.set_set_rule(SetRule(rho));
  g.net.set_generator(fam.generator);
  return g;
}

std::vector<std::vector<char>> order_from(std::size_t q, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& lt) {
  std::vector<std::vector<char>> leq(q, std::vector<char>(q, 0));
  for (std::size_t i = 0; i < q; ++i) leq[i][i] = 1;
  for (auto [a, b] : lt) leq[a][b] = 1;
  return leq;
}

// Boolean inputs of a descriptor, or nullopt when one is undefined. Symbols
// b0 and b1 stand for 0 and 1.
std::optional<std::vector<bool>> read_bits(const SlotDescriptor& d, const ChannelReader& r, std::uint32_t b0,
                                           std::uint32_t b1) {
  std::vector<bool> in;
  for (std::uint32_t ch : d.inputs) {
    auto s = r.read(ch);
    if (!s || (*s != b0 && *s != b1)) return std::nullopt;
    in.push_back(*s == b1);
  }
  return in;
}

void validate_for_embedding(const Circuit& c) { validate_circuit(c); }

}  // namespace

PredecessorGadget circuit_predecessor_gadget(const Circuit& c, const Graph& host, const Bramble& b) {
  validate_for_embedding(c);
  enum : std::uint32_t { Zero, One, Ok, Off };
  SetFamily fam;
  fam.symbols = {"0", "1", "ok", "off"};
  fam.leq = order_from(4, {{Zero, Ok}, {One, Ok}, {Zero, Off}, {One, Off}, {Ok, Off}});
  fam.chain = 3;
  fam.off = Off;
  fam.generator = "circuit-predecessor";
  fam.step = [](const SlotDescriptor& d, std::uint32_t sym, const ChannelReader& r) -> std::uint32_t {
    if (sym == Ok || sym == Off) return Off;
    const auto in = read_bits(d, r, Zero, One);
    if (!in) return Off;
    const bool x = sym == One;
    bool ok = d.type == GateType::Input || x == apply_gate(d.type, *in);
    if (d.type == GateType::Output) ok = ok && x;
    return ok ? Ok : Off;
  };
  PredecessorGadget gad;
  gad.g = build_set_gadget(c, host, route(host, b, c.gates.size(), c.wires()), fam);
  gad.target = gad.g.uniform(Ok);
  return gad;
}

Configuration predecessor_configuration(const PredecessorGadget& gadget, const std::vector<bool>& inputs) {
  const auto vals = slot_values(gadget.g.circuit, gadget.g.routing, inputs);
  Configuration c(gadget.g.net.n());
  for (Vertex v = 0; v < c.size(); ++v) {
    std::vector<std::uint32_t> syms;
    for (bool x : vals[v]) syms.push_back(x ? 1 : 0);
    c[v] = gadget.g.codec.encode(gadget.g.profile_of[v], syms);
  }
  return c;
}

AsyncGadget circuit_async_gadget(const Circuit& c, const Graph& host, const Bramble& b) {
  validate_for_embedding(c);
  RoutedEmbedding r = route(host, b, c.gates.size(), c.wires());
  const auto inputs = c.input_gates();
  std::vector<char> hosts_input(host.n(), 0);
  for (std::size_t i : inputs) hosts_input[r.mu[i]] = 1;

  // Each input gate reads a fresh pre-input gate on a neighbouring node.
  Circuit aug = c;
  AsyncGadget gad;
  for (std::size_t i : inputs) {
    const Vertex at = r.mu[i];
    std::optional<Vertex> pick;
    for (Vertex u : host.neighbors(at))
      if (!hosts_input[u]) {
        pick = u;
        break;
      }
    if (!pick) throw ArgumentError("input gate " + std::to_string(i) + " has no neighbour free of input gates");
    const std::size_t pre = aug.gates.size();
    aug.gates.push_back({GateType::PreInput, {}});
    aug.gates[i].inputs = {pre};
    r.mu.push_back(*pick);
    r.slots[*pick].push_back({SlotUse::Kind::Gate, pre, 0});
    gad.pre_input_host.push_back(*pick);
  }
  // The wire list of the augmented circuit orders edges by target gate, so
  // rebuild paths in that order.
  const Digraph old_wires = c.wires();
  const Digraph new_wires = aug.wires();
  std::vector<std::vector<Vertex>> paths;
  for (auto [src, dst] : new_wires) {
    if (aug.gates[src].type == GateType::PreInput) {
      paths.push_back({r.mu[src], r.mu[dst]});
      continue;
    }
    const auto it = std::find(old_wires.begin(), old_wires.end(), std::make_pair(src, dst));
    paths.push_back(r.paths[static_cast<std::size_t>(it - old_wires.begin())]);
  }
  // Remap path slots to the new edge ids.
  for (auto& vs : r.slots)
    for (SlotUse& use : vs)
      if (use.kind == SlotUse::Kind::Path) {
        const auto e = old_wires[use.index];
        use.index = static_cast<std::size_t>(std::find(new_wires.begin(), new_wires.end(), e) - new_wires.begin());
      }
  r.paths = std::move(paths);
  r.load.assign(host.n(), 0);
  for (const auto& p : r.paths)
    for (Vertex v : p) ++r.load[v];

  enum : std::uint32_t { Wait, Zero, One, Ok, Off };
  SetFamily fam;
  fam.symbols = {"?", "0", "1", "ok", "off"};
  fam.leq = order_from(5, {{Wait, Zero}, {Wait, One}, {Wait, Ok}, {Wait, Off}, {Zero, Ok}, {One, Ok}, {Zero, Off},
                           {One, Off}, {Ok, Off}});
  fam.chain = 4;
  fam.off = Off;
  fam.generator = "circuit-async";
  fam.step = [](const SlotDescriptor& d, std::uint32_t sym, const ChannelReader& r) -> std::uint32_t {
    switch (sym) {
      case Wait: {
        if (d.type == GateType::PreInput) return Ok;
        if (d.type == GateType::Input) {
          const auto s = r.read(d.inputs.at(0));
          if (s == Wait) return Zero;
          if (s == Ok) return One;
          return Wait;
        }
        const auto in = read_bits(d, r, Zero, One);
        if (!in) return Wait;
        return apply_gate(d.type, *in) ? One : Zero;
      }
      case Zero:
      case One: {
        if (d.type == GateType::Output) return sym == One ? Ok : Off;
        for (std::uint32_t ch : d.readers) {
          const auto s = r.read(ch);
          if (!s || *s == Wait) return sym;
        }
        return Ok;
      }
      default: return sym;
    }
  };
  gad.g = build_set_gadget(aug, host, r, fam);
  gad.c0 = gad.g.uniform(Wait);
  gad.c1 = gad.g.uniform(Ok);
  return gad;
}

std::vector<std::vector<Vertex>> async_schedule(const AsyncGadget& gadget, const std::vector<bool>& inputs) {
  const Network& net = gadget.g.net;
  const auto in_gates = gadget.g.circuit.input_gates();
  if (inputs.size() != in_gates.size()) throw ArgumentError("wrong number of input bits");
  std::vector<char> hold(net.n(), 0);
  for (std::size_t i = 0; i < in_gates.size(); ++i)
    if (inputs[i]) hold[gadget.g.routing.mu[in_gates[i]]] = 1;
  std::vector<std::vector<Vertex>> schedule;
  Configuration x = gadget.c0;
  bool first = true;
  const std::size_t limit = net.n() * net.alphabet().height() + 2;
  for (std::size_t step = 0; step < limit; ++step) {
    const Configuration fx = step_deterministic(net, x);
    std::vector<Vertex> changed;
    for (Vertex v = 0; v < net.n(); ++v)
      if ((!first || !hold[v]) && fx[v] != x[v]) {
        changed.push_back(v);
        x[v] = fx[v];
      }
    if (changed.empty() && !first) break;
    if (!changed.empty()) schedule.push_back(std::move(changed));
    first = false;
  }
  return schedule;
}

RoutedPrediction routed_prediction_gadget(const Circuit& c, const Graph& host, const Bramble& b,
                                          const std::vector<bool>& inputs, std::size_t output) {
  validate_circuit(c, true, true);
  const auto outs = c.output_gates();
  if (output >= outs.size()) throw ArgumentError("output index " + std::to_string(output) + " is out of range");
  const auto in_gates = c.input_gates();
  if (inputs.size() != in_gates.size()) throw ArgumentError("wrong number of input bits");

  enum : std::uint32_t { Wait, Zero, One, Off };
  SetFamily fam;
  fam.symbols = {"wait", "0", "1", "off"};
  fam.leq = order_from(4, {{Wait, Zero}, {Wait, One}, {Zero, One}});
  fam.chain = 3;
  fam.off = Off;
  fam.generator = "routed-prediction";
  fam.step = [](const SlotDescriptor& d, std::uint32_t sym, const ChannelReader& r) -> std::uint32_t {
    if (sym != Wait || d.type == GateType::Input) return sym;
    std::size_t zeros = 0, ones = 0;
    for (std::uint32_t ch : d.inputs) {
      const auto s = r.read(ch);
      zeros += s == Zero;
      ones += s == One;
    }
    const std::size_t n = d.inputs.size();
    switch (d.type) {
      case GateType::And: return zeros ? Zero : ones == n ? One : Wait;
      case GateType::Or: return ones ? One : zeros == n ? Zero : Wait;
      case GateType::Not: return zeros ? One : ones ? Zero : Wait;
      default: return zeros ? Zero : ones ? One : Wait;
    }
  };
  RoutedPrediction p;
  p.g = build_set_gadget(c, host, route(host, b, c.gates.size(), c.wires()), fam);

  p.y0.resize(host.n());
  for (Vertex v = 0; v < host.n(); ++v) {
    std::vector<std::uint32_t> syms;
    for (const SlotUse& use : p.g.routing.slots[v]) {
      std::uint32_t s = Wait;
      if (use.kind == SlotUse::Kind::Gate && c.gates[use.index].type == GateType::Input) {
        const auto k = static_cast<std::size_t>(std::find(in_gates.begin(), in_gates.end(), use.index) - in_gates.begin());
        s = inputs[k] ? One : Zero;
      }
      syms.push_back(s);
    }
    p.y0[v] = p.g.codec.encode(p.g.profile_of[v], syms);
  }
  std::size_t longest = 0;
  for (const auto& path : p.g.routing.paths) longest = std::max(longest, path.size() - 1);
  p.t = std::max<std::size_t>(longest, 1) * c.depth();
  p.v = p.g.routing.mu[outs[output]];
  p.output_slot = p.g.routing.gate_slot(outs[output]);

  const std::size_t prof = p.g.profile_of[p.v];
  const std::size_t u = p.g.codec.profiles()[prof].slots.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < u; ++i) count *= 4;
  StateSet accept;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> syms(u);
    std::size_t rest = idx;
    for (auto& s : syms) {
      s = static_cast<std::uint32_t>(rest % 4);
      rest /= 4;
    }
    if (syms[p.output_slot] == One) accept.push_back(p.g.codec.encode(prof, syms));
  }
  std::sort(accept.begin(), accept.end());
  p.spec_v.initial = StateSet{p.y0[p.v]};
  p.spec_v.final = std::move(accept);
  return p;
}

std::optional<bool> routed_prediction_output(const RoutedPrediction& p, const Configuration& at_t) {
  const std::uint32_t s = p.g.codec.symbol(at_t.at(p.v), p.output_slot);
  if (s == 1) return false;
  if (s == 2) return true;
  return std::nullopt;
}

}  // namespace fanspec
