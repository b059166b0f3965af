#include <algorithm>
#include <deque>
#include <sstream>

#include "fanspec/gadgets.hpp"

namespace fanspec {

namespace {

bool induces_connected(const Graph& g, const std::vector<Vertex>& set) {
  if (set.empty()) return false;
  std::vector<char> in(g.n(), 0), seen(g.n(), 0);
  for (Vertex v : set) in[v] = 1;
  std::deque<Vertex> queue{set.front()};
  seen[set.front()] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : g.neighbors(v))
      if (in[u] && !seen[u]) {
        seen[u] = 1;
        ++reached;
        queue.push_back(u);
      }
  }
  return reached == set.size();
}

// Shortest path inside `allowed`; neighbours are scanned in label order so
// the first parent found is the smallest label.
std::vector<Vertex> bfs_path(const Graph& g, const std::vector<char>& allowed, Vertex from, Vertex to) {
  std::vector<std::int64_t> parent(g.n(), -1);
  std::deque<Vertex> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (Vertex u : g.neighbors(v))
      if (allowed[u] && parent[u] < 0) {
        parent[u] = v;
        queue.push_back(u);
      }
  }
  if (parent[to] < 0) throw ArgumentError("no path inside a bramble element");
  std::vector<Vertex> path{to};
  while (path.back() != from) path.push_back(static_cast<Vertex>(parent[path.back()]));
  std::reverse(path.begin(), path.end());
  return path;
}

// Drops the cycle between two visits of the same vertex.
std::vector<Vertex> shortcut(const std::vector<Vertex>& walk) {
  std::vector<Vertex> out;
  for (Vertex v : walk) {
    auto it = std::find(out.begin(), out.end(), v);
    if (it != out.end())
      out.erase(it + 1, out.end());
    else
      out.push_back(v);
  }
  return out;
}

}  // namespace

std::string BrambleReport::summary(std::size_t max_lines) const {
  if (issues.empty()) return "valid bramble";
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size() && i < max_lines; ++i) os << (i ? "\n" : "") << issues[i].message;
  if (issues.size() > max_lines) os << "\n(" << issues.size() - max_lines << " more)";
  return os.str();
}

BrambleReport validate_bramble(const Graph& g, const Bramble& b) {
  BrambleReport rep;
  auto add = [&](BrambleIssue::Kind k, std::size_t i, std::size_t j, Vertex v, std::string msg) {
    rep.issues.push_back({k, i, j, v, std::move(msg)});
  };
  std::vector<std::size_t> count(g.n(), 0);
  std::vector<char> usable(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& e = b.elements[i];
    if (e.empty()) {
      add(BrambleIssue::Kind::Empty, i, i, 0, "element " + std::to_string(i) + " is empty");
      usable[i] = 0;
      continue;
    }
    bool in_range = true;
    for (Vertex v : e)
      if (v >= g.n()) {
        add(BrambleIssue::Kind::OutOfRange, i, i, v,
            "element " + std::to_string(i) + " names vertex " + std::to_string(v) + " outside the graph");
        in_range = false;
      }
    if (!in_range) {
      usable[i] = 0;
      continue;
    }
    for (Vertex v : e) ++count[v];
    if (!induces_connected(g, e))
      add(BrambleIssue::Kind::Disconnected, i, i, e.front(),
          "element " + std::to_string(i) + " does not induce a connected subgraph");
  }
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (!usable[i] || !usable[j]) continue;
      const auto& x = b.elements[i];
      const auto& y = b.elements[j];
      std::vector<Vertex> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
      if (common.empty())
        add(BrambleIssue::Kind::Disjoint, i, j, 0,
            "elements " + std::to_string(i) + " and " + std::to_string(j) + " do not intersect");
    }
  for (Vertex v = 0; v < g.n(); ++v)
    if (count[v] > 2)
      add(BrambleIssue::Kind::Overloaded, 0, 0, v,
          "vertex " + std::to_string(v) + " lies in " + std::to_string(count[v]) + " elements");
  return rep;
}

Bramble grid_bramble(std::size_t m) {
  if (m < 2) throw ArgumentError("grid bramble needs m >= 2");
  Bramble b;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Vertex> e;
    for (std::size_t c = 0; c < m; ++c) e.push_back(static_cast<Vertex>(i * m + c));
    for (std::size_t r = 0; r < m; ++r)
      if (r != i) e.push_back(static_cast<Vertex>(r * m + i));
    std::sort(e.begin(), e.end());
    b.elements.push_back(std::move(e));
  }
  return b;
}

std::size_t RoutedEmbedding::components() const {
  std::size_t c = 0;
  for (const auto& s : slots) c = std::max(c, s.size());
  return c;
}

std::size_t RoutedEmbedding::gate_slot(std::size_t a) const {
  const auto& s = slots.at(mu.at(a));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].kind == SlotUse::Kind::Gate && s[i].index == a) return i;
  throw InternalError("gate without a slot");
}

std::size_t RoutedEmbedding::path_slot(std::size_t e, std::size_t pos) const {
  const auto& s = slots.at(paths.at(e).at(pos));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].kind == SlotUse::Kind::Path && s[i].index == e && s[i].position == pos) return i;
  throw InternalError("path visit without a slot");
}

std::size_t digraph_degree(std::size_t vertex_count, const Digraph& d) {
  std::vector<std::size_t> in(vertex_count, 0), out(vertex_count, 0);
  std::size_t deg = 0;
  for (auto [a, b] : d) {
    deg = std::max({deg, ++out.at(a), ++in.at(b)});
  }
  return deg;
}

RoutedEmbedding route(const Graph& g, const Bramble& b, std::size_t vertex_count, const Digraph& d) {
  if (vertex_count > b.size())
    throw ArgumentError("digraph has " + std::to_string(vertex_count) + " vertices but the bramble only " +
                        std::to_string(b.size()) + " elements");
  const auto rep = validate_bramble(g, b);
  if (!rep.ok()) throw ArgumentError("invalid bramble: " + rep.summary(1));
  for (auto [x, y] : d)
    if (x >= vertex_count || y >= vertex_count || x == y)
      throw ArgumentError("digraph edge (" + std::to_string(x) + ", " + std::to_string(y) + ") is invalid");

  std::vector<std::size_t> count(g.n(), 0);
  for (const auto& e : b.elements)
    for (Vertex v : e) ++count[v];

  RoutedEmbedding r;
  r.mu.resize(vertex_count);
  for (std::size_t a = 0; a < vertex_count; ++a) {
    const auto& e = b.elements[a];
    r.mu[a] = *std::min_element(e.begin(), e.end(), [&](Vertex x, Vertex y) {
      return count[x] != count[y] ? count[x] < count[y] : x < y;
    });
  }
  std::vector<char> allowed(g.n(), 0);
  for (auto [x, y] : d) {
    const auto& bx = b.elements[x];
    const auto& by = b.elements[y];
    std::vector<Vertex> common;
    std::set_intersection(bx.begin(), bx.end(), by.begin(), by.end(), std::back_inserter(common));
    const Vertex shared = common.front();
    std::fill(allowed.begin(), allowed.end(), 0);
    for (Vertex v : bx) allowed[v] = 1;
    auto walk = bfs_path(g, allowed, r.mu[x], shared);
    std::fill(allowed.begin(), allowed.end(), 0);
    for (Vertex v : by) allowed[v] = 1;
    auto second = bfs_path(g, allowed, shared, r.mu[y]);
    walk.insert(walk.end(), second.begin() + 1, second.end());
    r.paths.push_back(shortcut(walk));
  }
  r.load.assign(g.n(), 0);
  for (const auto& p : r.paths)
    for (Vertex v : p) ++r.load[v];
  r.slots.assign(g.n(), {});
  for (std::size_t a = 0; a < vertex_count; ++a) r.slots[r.mu[a]].push_back({SlotUse::Kind::Gate, a, 0});
  for (std::size_t e = 0; e < r.paths.size(); ++e)
    for (std::size_t pos = 1; pos + 1 < r.paths[e].size(); ++pos)
      r.slots[r.paths[e][pos]].push_back({SlotUse::Kind::Path, e, pos});
  return r;
}

std::vector<std::uint32_t> square_coloring(const Graph& g) {
  const std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> color(g.n(), none);
  std::vector<char> used;
  for (Vertex v = 0; v < g.n(); ++v) {
    used.assign(g.n() + 1, 0);
    for (Vertex u : g.neighbors(v)) {
      if (color[u] != none) used[color[u]] = 1;
      for (Vertex w : g.neighbors(u))
        if (w != v && color[w] != none) used[color[w]] = 1;
    }
    std::uint32_t c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

bool is_square_coloring(const Graph& g, const std::vector<std::uint32_t>& color) {
  if (color.size() != g.n()) return false;
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex u : g.neighbors(v)) {
      if (color[u] == color[v]) return false;
      for (Vertex w : g.neighbors(u))
        if (w != v && color[w] == color[v]) return false;
    }
  return true;
}

}  // namespace fanspec
