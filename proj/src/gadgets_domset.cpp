// Dominating-set grid. Every cell carries eight bits, all frozen once set:
//
//   mark, lt    free initial layer; `lt` spells >*<+ in each block of a
//               selection or witness row so that a block has one mark
//   err         raised by any failed test; the specification forbids it
//   down        witness signal falling from a witness mark through the
//               selection rows until it meets a mark
//   r_in, l_in  the pair of signals that checks this block
//   r_own, l_own signals launched by this block's mark for its neighbours
//
// The mark at m_b in a selection row launches a right signal checked in
// block b+1 and a left signal checked in block b-1. In block b the right
// signal of m_{b-1} and the left signal of m_{b+1} stop where they meet,
// which lies inside block b; the meeting cell must be m_b. On the cycle of
// n blocks this forces equal gaps, hence the same offset in every block.

#include <algorithm>

#include "fanspec/gadgets.hpp"

namespace fanspec {

namespace {

constexpr State kMark = 1, kLt = 2, kErr = 4, kDown = 8, kRin = 16, kLin = 32, kRown = 64, kLown = 128;
constexpr std::size_t kNone = SIZE_MAX;

struct CellInfo {
  std::size_t row = 0, offset = 0;
  std::size_t self = 0, left = kNone, right = kNone, up = kNone, down = kNone;
};

bool bit(State s, State b) { return (s & b) != 0; }

}  // namespace

State dom_encode(const DomCell& c) {
  return (c.mark ? kMark : 0) | (c.lt ? kLt : 0) | (c.err ? kErr : 0) | (c.down ? kDown : 0) | (c.r_in ? kRin : 0) |
         (c.l_in ? kLin : 0) | (c.r_own ? kRown : 0) | (c.l_own ? kLown : 0);
}

DomCell dom_decode(State s) {
  return {bit(s, kMark), bit(s, kLt),  bit(s, kErr),  bit(s, kDown),
          bit(s, kRin),  bit(s, kLin), bit(s, kRown), bit(s, kLown)};
}

DominatingGadget dominating_set_gadget(const Graph& g, std::size_t k) {
  if (k == 0) throw ArgumentError("dominating-set gadget needs k >= 1");
  if (g.n() == 0) throw ArgumentError("dominating-set gadget needs a non-empty graph");
  const std::size_t n = g.n(), cols = n * n, rows = k + 2;
  DominatingGadget gad;
  gad.graph_n = n;
  gad.k = k;
  gad.columns = cols;
  gad.t = std::max(2 * n, k) + 2;
  for (Vertex v = 0; v < n; ++v) gad.neighborhoods.push_back(g.closed_neighborhood(v));

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t j = 1; j <= rows; ++j)
    for (std::size_t x = 0; x < cols; ++x) {
      if (cols >= 3) edges.emplace_back(gad.cell(j, x), gad.cell(j, (x + 1) % cols));
      if (j < rows) edges.emplace_back(gad.cell(j, x), gad.cell(j + 1, x));
    }
  Graph grid(rows * cols, std::move(edges));

  std::vector<CellInfo> info(grid.n());
  for (std::size_t j = 1; j <= rows; ++j)
    for (std::size_t x = 0; x < cols; ++x) {
      const Vertex v = gad.cell(j, x);
      const auto& nb = grid.closed_neighborhood(v);
      auto pos = [&](Vertex u) { return static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), u) - nb.begin()); };
      CellInfo& c = info[v];
      c.row = j;
      c.offset = x % n;
      c.self = pos(v);
      if (cols >= 3) {
        c.left = pos(gad.cell(j, (x + cols - 1) % cols));
        c.right = pos(gad.cell(j, (x + 1) % cols));
      }
      if (j < rows) c.up = pos(gad.cell(j + 1, x));
      if (j > 1) c.down = pos(gad.cell(j - 1, x));
    }

  std::vector<std::string> names;
  for (State s = 0; s < 256; ++s) {
    std::string name{bit(s, kMark) ? '1' : '0', bit(s, kLt) ? '<' : '>', ':'};
    for (State b : {kErr, kDown, kRin, kLin, kRown, kLown}) name.push_back(bit(s, b) ? '1' : '0');
    names.push_back(std::move(name));
  }
  Alphabet a = Alphabet::from_comparator(
      std::move(names), [](State x, State y) { return (x & 3) == (y & 3) && (x & ~y & 0xFC) == 0; }, 7);

  RuleFn fn = [info, n, k](Vertex v, std::span<const State> scope, StateSet& out) {
    const CellInfo& c = info[v];
    const State s = scope[c.self];
    if (c.row == k + 2) {
      out.push_back(s);
      return;
    }
    const bool first = c.offset == 0, last = c.offset + 1 == n;
    const State L = first ? 0 : scope[c.left];
    const State R = last ? 0 : scope[c.right];
    const State U = scope[c.up];
    State next = s;
    // one mark per block, read off the >*<+ layer
    bool fail = (!last && bit(s, kLt) && !bit(R, kLt)) || (last && !bit(s, kLt)) ||
                (bit(s, kMark) != (bit(s, kLt) && (first || !bit(L, kLt))));
    if (c.row == k + 1) {
      fail = fail || (bit(s, kMark) && !bit(U, kMark));
      if (bit(s, kMark)) next |= kDown;
    } else {
      if (bit(U, kDown) && (c.row == k || !bit(U, kMark))) next |= kDown;
      if (c.row == 1 && bit(s, kDown) && !bit(s, kMark)) fail = true;
      if (n >= 2) {
        const State Lw = scope[c.left], Rw = scope[c.right];  // across block borders too
        if (bit(s, kMark) || (!first && bit(L, kRown))) next |= kRown;
        if (bit(s, kMark) || (!last && bit(R, kLown))) next |= kLown;
        const bool r_src = first ? bit(Lw, kRown) : (bit(L, kRin) && !bit(L, kLin));
        const bool l_src = last ? bit(Rw, kLown) : (bit(R, kLin) && !bit(R, kRin));
        if (!bit(s, kLin) && r_src) next |= kRin;
        if (!bit(s, kRin) && l_src) next |= kLin;
        if (bit(s, kRin) && bit(s, kLin) && !bit(s, kMark)) fail = true;
        if (!last && bit(s, kRin) && !bit(s, kLin) && bit(R, kLin) && !bit(R, kRin)) fail = true;
      }
    }
    if (fail) next |= kErr;
    out.push_back(next);
  };
  gad.net = Network::from_function(std::move(grid), std::move(a), std::move(fn), true, false);
  gad.net.set_generator("dominating-set");

  gad.spec = Specification(gad.t);
  StateSet errors;
  for (State s = 0; s < 256; ++s)
    if (bit(s, kErr)) errors.push_back(s);
  for (std::size_t j = 1; j <= rows; ++j)
    for (std::size_t x = 0; x < cols; ++x) {
      const Vertex v = gad.cell(j, x);
      if (j == rows) {
        const auto& nb = gad.neighborhoods[x / n];
        const bool marked = std::binary_search(nb.begin(), nb.end(), static_cast<Vertex>(x % n));
        gad.spec.set_initial(v, {marked ? kMark : 0});
      } else {
        gad.spec.set_initial(v, {0, kMark, kLt, kMark | kLt});
      }
      gad.spec.set_avoid(v, errors);
    }
  return gad;
}

Configuration dominating_marking(const DominatingGadget& gadget, const std::vector<std::vector<std::size_t>>& marks) {
  const std::size_t n = gadget.graph_n, cols = gadget.columns;
  if (marks.size() != gadget.k + 1) throw ArgumentError("expected one mark list per selection row and the witness row");
  Configuration c(gadget.net.n(), 0);
  for (std::size_t r = 0; r < marks.size(); ++r) {
    std::vector<char> marked(cols, 0);
    for (std::size_t x : marks[r]) {
      if (x >= cols) throw ArgumentError("marked column " + std::to_string(x) + " is out of range");
      marked[x] = 1;
    }
    for (std::size_t b = 0; b < n; ++b) {
      bool seen = false;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t x = b * n + i;
        seen = seen || marked[x];
        c[gadget.cell(r + 1, x)] = (marked[x] ? kMark : 0) | (seen ? kLt : 0);
      }
    }
  }
  for (std::size_t x = 0; x < cols; ++x) {
    const auto& nb = gadget.neighborhoods[x / n];
    if (std::binary_search(nb.begin(), nb.end(), static_cast<Vertex>(x % n))) c[gadget.cell(gadget.k + 2, x)] = kMark;
  }
  return c;
}

bool dominating_run_accepted(const DominatingGadget& gadget, const Configuration& initial) {
  const Orbit o = orbit(gadget.net, initial, gadget.t);
  for (Vertex v = 0; v < gadget.net.n(); ++v)
    if (!gadget.spec.admits_sequence(v, o.node_sequence(v))) return false;
  return true;
}

DominatingDecision decide_dominating_gadget(const DominatingGadget& gadget) {
  const std::size_t n = gadget.graph_n, k = gadget.k;
  std::vector<std::size_t> pick(k, 0);
  DominatingDecision res;
  while (true) {
    std::vector<std::vector<std::size_t>> marks(k + 1);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t b = 0; b < n; ++b) marks[r].push_back(b * n + pick[r]);
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t witness = 0;
      for (Vertex u : gadget.neighborhoods[b])
        if (std::find(pick.begin(), pick.end(), u) != pick.end()) {
          witness = u;
          break;
        }
      marks[k].push_back(b * n + witness);
    }
    Configuration init = dominating_marking(gadget, marks);
    if (dominating_run_accepted(gadget, init)) {
      res.satisfiable = true;
      res.selection.assign(pick.begin(), pick.end());
      res.initial = std::move(init);
      return res;
    }
    std::size_t i = 0;
    while (i < k && ++pick[i] == n) pick[i++] = 0;
    if (i == k) return res;
  }
}

}  // namespace fanspec
