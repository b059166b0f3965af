#include "fanspec/traces.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace fanspec {

RleTrace::RleTrace(std::vector<Run> runs) : runs_(std::move(runs)) {
  if (runs_.empty()) throw ValidationError("a trace needs at least one run");
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].length == 0) throw ValidationError("trace run lengths must be positive");
    if (i && runs_[i].state == runs_[i - 1].state)
      throw ValidationError("consecutive trace runs must hold different states");
    length_ += runs_[i].length;
  }
}

RleTrace RleTrace::from_sequence(std::span<const State> seq) {
  if (seq.empty()) throw ValidationError("empty state sequence");
  std::vector<Run> runs;
  for (State q : seq) {
    if (!runs.empty() && runs.back().state == q) {
      ++runs.back().length;
    } else {
      runs.push_back({q, 1});
    }
  }
  return RleTrace(std::move(runs));
}

std::vector<State> RleTrace::to_sequence() const {
  std::vector<State> out;
  out.reserve(length_);
  for (const auto& r : runs_) out.insert(out.end(), r.length, r.state);
  return out;
}

State RleTrace::at(std::size_t s) const {
  for (const auto& r : runs_) {
    if (s < r.length) return r.state;
    s -= r.length;
  }
  throw ArgumentError("trace index beyond horizon");
}

std::vector<std::size_t> RleTrace::change_times() const {
  std::vector<std::size_t> out;
  std::size_t s = 0;
  for (std::size_t i = 0; i + 1 < runs_.size(); ++i) {
    s += runs_[i].length;
    out.push_back(s);
  }
  return out;
}

bool RleTrace::monotone(const Alphabet& a) const {
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].state >= a.size()) return false;
    if (i && !a.leq(runs_[i - 1].state, runs_[i].state)) return false;
  }
  return true;
}

std::string canonical_key(const RleTrace& trace) {
  std::string key;
  for (const auto& r : trace.runs()) {
    if (!key.empty()) key += ',';
    key += std::to_string(r.state);
    key += ':';
    key += std::to_string(r.length);
  }
  return key;
}

RleTrace trace_from_key(const std::string& key) {
  std::vector<Run> runs;
  std::size_t i = 0;
  auto number = [&](std::size_t& out) {
    const char* begin = key.data() + i;
    auto [ptr, ec] = std::from_chars(begin, key.data() + key.size(), out);
    if (ec != std::errc() || ptr == begin) throw ParseError("malformed trace key '" + key + "'");
    i = static_cast<std::size_t>(ptr - key.data());
  };
  while (i < key.size()) {
    std::size_t q, len;
    number(q);
    if (i >= key.size() || key[i] != ':') throw ParseError("malformed trace key '" + key + "'");
    ++i;
    number(len);
    runs.push_back({static_cast<State>(q), len});
    if (i < key.size()) {
      if (key[i] != ',') throw ParseError("malformed trace key '" + key + "'");
      ++i;
    }
  }
  return RleTrace(std::move(runs));
}

// ---------------------------------------------------------------- encodings

SequenceEncoding encode(const std::vector<Vertex>& vertices, const DenseTable& columns, std::size_t horizon,
                        const Alphabet& order) {
  if (columns.size() != vertices.size()) throw ArgumentError("one column per vertex expected");
  if (!std::is_sorted(vertices.begin(), vertices.end()) ||
      std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw ArgumentError("vertex list must be sorted and duplicate free");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].size() != horizon + 1)
      throw ValidationError("sequence of vertex " + std::to_string(vertices[i]) + " has length " +
                            std::to_string(columns[i].size()) + ", expected " + std::to_string(horizon + 1));
    for (std::size_t s = 0; s < columns[i].size(); ++s) {
      if (columns[i][s] >= order.size()) throw ValidationError("sequence holds a state outside the alphabet");
      if (s && !order.leq(columns[i][s - 1], columns[i][s]))
        throw ValidationError("sequence of vertex " + std::to_string(vertices[i]) + " decreases at time " +
                              std::to_string(s));
    }
  }
  SequenceEncoding e;
  e.vertices = vertices;
  e.horizon = horizon;
  std::vector<State> row(vertices.size());
  for (std::size_t s = 0; s <= horizon; ++s) {
    bool changed = s == 0;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (!changed && columns[i][s] != row[i]) changed = true;
      row[i] = columns[i][s];
    }
    if (changed) {
      e.times.push_back(s);
      e.states.push_back(row);
    }
  }
  return e;
}

SequenceEncoding encode_traces(const std::vector<Vertex>& vertices, const std::vector<RleTrace>& traces) {
  if (traces.size() != vertices.size()) throw ArgumentError("one trace per vertex expected");
  SequenceEncoding e;
  e.vertices = vertices;
  if (traces.empty()) {
    e.times.push_back(0);
    e.states.emplace_back();
    return e;
  }
  e.horizon = traces[0].horizon();
  std::vector<std::size_t> times{0};
  for (const auto& tr : traces) {
    if (tr.horizon() != e.horizon) throw ValidationError("traces of one encoding must share the horizon");
    auto ct = tr.change_times();
    times.insert(times.end(), ct.begin(), ct.end());
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  e.times = times;
  e.states.assign(times.size(), std::vector<State>(traces.size()));
  for (std::size_t i = 0; i < traces.size(); ++i) {
    std::size_t row = 0, start = 0;
    for (const auto& r : traces[i].runs()) {
      const std::size_t end = start + r.length;
      while (row < times.size() && times[row] < end) e.states[row++][i] = r.state;
      start = end;
    }
  }
  return e;
}

DenseTable decode(const SequenceEncoding& e) {
  DenseTable out(e.vertices.size(), std::vector<State>(e.horizon + 1));
  for (std::size_t r = 0; r < e.times.size(); ++r) {
    const std::size_t end = r + 1 < e.times.size() ? e.times[r + 1] : e.horizon + 1;
    for (std::size_t i = 0; i < e.vertices.size(); ++i)
      std::fill(out[i].begin() + static_cast<std::ptrdiff_t>(e.times[r]),
                out[i].begin() + static_cast<std::ptrdiff_t>(end), e.states[r][i]);
  }
  return out;
}

SequenceEncoding restrict(const SequenceEncoding& e, const std::vector<Vertex>& subset) {
  std::vector<Vertex> z = subset;
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  std::vector<std::size_t> cols;
  for (Vertex v : z) {
    auto it = std::lower_bound(e.vertices.begin(), e.vertices.end(), v);
    if (it == e.vertices.end() || *it != v)
      throw ArgumentError("vertex " + std::to_string(v) + " is not part of the encoding");
    cols.push_back(static_cast<std::size_t>(it - e.vertices.begin()));
  }
  SequenceEncoding out;
  out.vertices = z;
  out.horizon = e.horizon;
  std::vector<State> row(cols.size());
  for (std::size_t r = 0; r < e.times.size(); ++r) {
    bool changed = r == 0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      State q = e.states[r][cols[i]];
      if (!changed && q != row[i]) changed = true;
      row[i] = q;
    }
    if (changed) {
      out.times.push_back(e.times[r]);
      out.states.push_back(row);
    }
  }
  return out;
}

RleTrace column_trace(const SequenceEncoding& e, Vertex v) {
  auto it = std::lower_bound(e.vertices.begin(), e.vertices.end(), v);
  if (it == e.vertices.end() || *it != v) throw ArgumentError("vertex is not part of the encoding");
  const auto col = static_cast<std::size_t>(it - e.vertices.begin());
  std::vector<Run> runs;
  for (std::size_t r = 0; r < e.times.size(); ++r) {
    const std::size_t end = r + 1 < e.times.size() ? e.times[r + 1] : e.horizon + 1;
    const State q = e.states[r][col];
    if (!runs.empty() && runs.back().state == q) {
      runs.back().length += end - e.times[r];
    } else {
      runs.push_back({q, end - e.times[r]});
    }
  }
  return RleTrace(std::move(runs));
}

PaddedEncoding pad(const SequenceEncoding& e, std::size_t alphabet_size) {
  std::size_t rows = 1;
  for (std::size_t i = 0; i < e.vertices.size(); ++i) {
    rows *= alphabet_size;
    if (rows > (std::size_t{1} << 24)) throw ResourceError("padded encoding would exceed 2^24 rows");
  }
  if (e.times.size() > rows) throw ArgumentError("encoding has more rows than |Q|^|U|");
  PaddedEncoding p;
  p.times = e.times;
  p.states = e.states;
  p.times.resize(rows, e.horizon);
  p.states.resize(rows, e.states.back());
  return p;
}

SequenceEncoding unpad(const PaddedEncoding& p, const std::vector<Vertex>& vertices, std::size_t horizon) {
  SequenceEncoding e;
  e.vertices = vertices;
  e.horizon = horizon;
  for (std::size_t r = 0; r < p.times.size(); ++r) {
    // padding rows repeat the last state row; real rows always differ
    if (r && (p.times[r] <= p.times[r - 1] || p.states[r] == p.states[r - 1])) break;
    e.times.push_back(p.times[r]);
    e.states.push_back(p.states[r]);
  }
  return e;
}

// ---------------------------------------------------------------- specifications

bool NodeSpec::admits_states(State first, State last) const {
  if (initial && !std::binary_search(initial->begin(), initial->end(), first)) return false;
  if (final && !std::binary_search(final->begin(), final->end(), last)) return false;
  return true;
}

const NodeSpec* Specification::find(Vertex v) const {
  auto it = nodes_.find(v);
  return it == nodes_.end() ? nullptr : &it->second;
}

void Specification::add_trace(Vertex v, const RleTrace& trace) {
  if (trace.length() != t_ + 1)
    throw ValidationError("trace for node " + std::to_string(v) + " has length " + std::to_string(trace.length()) +
                          ", expected " + std::to_string(t_ + 1));
  auto& ns = nodes_[v];
  if (!ns.traces) ns.traces.emplace();
  ns.traces->emplace(canonical_key(trace), trace);
}

void Specification::forbid_all(Vertex v) {
  auto& ns = nodes_[v];
  ns.traces.emplace();
}

namespace {
StateSet sorted_set(StateSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}
}  // namespace

void Specification::set_initial(Vertex v, StateSet states) { nodes_[v].initial = sorted_set(std::move(states)); }
void Specification::set_final(Vertex v, StateSet states) { nodes_[v].final = sorted_set(std::move(states)); }
void Specification::set_avoid(Vertex v, StateSet states) { nodes_[v].avoid = sorted_set(std::move(states)); }

bool Specification::admits(Vertex v, const RleTrace& trace) const {
  if (trace.length() != t_ + 1) return false;
  const NodeSpec* ns = find(v);
  if (!ns) return true;
  if (ns->traces && !ns->traces->count(canonical_key(trace))) return false;
  if (!ns->admits_states(trace.first(), trace.last())) return false;
  for (const auto& r : trace.runs())
    if (std::binary_search(ns->avoid.begin(), ns->avoid.end(), r.state)) return false;
  return true;
}

bool Specification::admits_sequence(Vertex v, std::span<const State> seq) const {
  if (seq.size() != t_ + 1) return false;
  return admits(v, RleTrace::from_sequence(seq));
}

bool Specification::constraint_only() const {
  return std::none_of(nodes_.begin(), nodes_.end(), [](const auto& kv) { return kv.second.has_traces(); });
}

void Specification::validate(const Network& net) const {
  const auto q = net.alphabet().size();
  auto check_states = [&](Vertex v, const StateSet& s, const char* what) {
    for (State x : s)
      if (x >= q)
        throw ValidationError("specification of node " + std::to_string(v) + ": " + what +
                              " state outside the alphabet");
  };
  for (const auto& [v, ns] : nodes_) {
    if (v >= net.n())
      throw ValidationError("specification references unknown node " + std::to_string(v) + " (network has " +
                            std::to_string(net.n()) + " nodes)");
    if (ns.initial) check_states(v, *ns.initial, "initial");
    if (ns.final) check_states(v, *ns.final, "final");
    check_states(v, ns.avoid, "avoided");
    if (ns.traces)
      for (const auto& [key, tr] : *ns.traces) {
        if (tr.length() != t_ + 1)
          throw ValidationError("specification of node " + std::to_string(v) + ": trace " + key + " has length " +
                                std::to_string(tr.length()) + ", expected " + std::to_string(t_ + 1));
        if (!tr.monotone(net.alphabet()))
          throw ValidationError("specification of node " + std::to_string(v) + ": trace " + key +
                                " is not non-decreasing");
      }
  }
}

Specification encode_spec(const std::map<Vertex, std::vector<std::vector<State>>>& traces, std::size_t horizon,
                          const Alphabet& order) {
  Specification spec(horizon);
  for (const auto& [v, seqs] : traces) {
    spec.forbid_all(v);
    for (const auto& seq : seqs) {
      if (seq.size() != horizon + 1)
        throw ValidationError("sequence for node " + std::to_string(v) + " has length " +
                              std::to_string(seq.size()) + ", expected " + std::to_string(horizon + 1));
      auto tr = RleTrace::from_sequence(seq);
      if (!tr.monotone(order))
        throw ValidationError("sequence for node " + std::to_string(v) + " is not non-decreasing");
      spec.add_trace(v, tr);
    }
  }
  return spec;
}

}  // namespace fanspec
