#include "fanspec/treedecomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

namespace fanspec {

namespace {

std::vector<std::vector<std::size_t>> tree_adjacency(const TreeDecomposition& d) {
  std::vector<std::vector<std::size_t>> adj(d.size());
  for (auto [a, b] : d.edges) {
    adj.at(a).push_back(b);
    adj.at(b).push_back(a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::size_t require_root(const TreeDecomposition& d) {
  if (!d.root) throw ArgumentError("tree decomposition has no root");
  if (*d.root >= d.size()) throw ArgumentError("tree decomposition root is out of range");
  return *d.root;
}

bool subset_of(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::size_t TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w ? w - 1 : 0;
}

std::vector<std::size_t> TreeDecomposition::parents() const {
  const std::size_t r = require_root(*this);
  auto adj = tree_adjacency(*this);
  std::vector<std::size_t> parent(size(), size());
  parent[r] = r;
  std::vector<std::size_t> stack{r};
  while (!stack.empty()) {
    auto w = stack.back();
    stack.pop_back();
    for (auto u : adj[w])
      if (parent[u] == size()) {
        parent[u] = w;
        stack.push_back(u);
      }
  }
  for (std::size_t w = 0; w < size(); ++w)
    if (parent[w] == size()) throw ValidationError("tree decomposition is not connected");
  return parent;
}

std::vector<std::vector<std::size_t>> TreeDecomposition::children() const {
  auto parent = parents();
  std::vector<std::vector<std::size_t>> ch(size());
  for (std::size_t w = 0; w < size(); ++w)
    if (parent[w] != w) ch[parent[w]].push_back(w);
  return ch;
}

bool TreeDecomposition::is_binary() const {
  for (const auto& c : children())
    if (c.size() > 2) return false;
  return true;
}

std::size_t TreeDecomposition::depth() const {
  auto lv = levels(*this);
  return lv.empty() ? 0 : lv.size() - 1;
}

DecompositionCheck validate_decomposition(const Graph& g, const TreeDecomposition& d) {
  using K = DecompositionIssue::Kind;
  DecompositionCheck out;
  const std::size_t B = d.size();
  auto issue = [&](K k, std::string m) { out.issues.push_back({k, std::move(m)}); };

  if (B == 0) {
    if (g.n() > 0) issue(K::VertexCoverage, "decomposition has no bags");
    return out;
  }
  bool shape_ok = true;
  for (auto [a, b] : d.edges)
    if (a >= B || b >= B || a == b) {
      issue(K::NotATree, "tree edge (" + std::to_string(a) + "," + std::to_string(b) + ") is invalid");
      shape_ok = false;
    }
  if (shape_ok) {
    if (d.edges.size() != B - 1) {
      issue(K::NotATree, "decomposition tree has " + std::to_string(d.edges.size()) + " edges for " +
                             std::to_string(B) + " bags");
    } else {
      auto adj = tree_adjacency(d);
      std::vector<char> seen(B, 0);
      std::vector<std::size_t> stack{0};
      seen[0] = 1;
      std::size_t count = 1;
      while (!stack.empty()) {
        auto w = stack.back();
        stack.pop_back();
        for (auto u : adj[w])
          if (!seen[u]) {
            seen[u] = 1;
            ++count;
            stack.push_back(u);
          }
      }
      if (count != B) issue(K::NotATree, "decomposition tree is disconnected");
    }
  }
  if (d.root && *d.root >= B) issue(K::BadRoot, "root " + std::to_string(*d.root) + " is not a bag");

  std::vector<std::vector<std::size_t>> holders(g.n());
  for (std::size_t w = 0; w < B; ++w)
    for (Vertex v : d.bags[w]) {
      if (v >= g.n()) {
        issue(K::OutOfRange, "bag " + std::to_string(w) + " holds unknown vertex " + std::to_string(v));
        continue;
      }
      holders[v].push_back(w);
    }
  for (Vertex v = 0; v < g.n(); ++v)
    if (holders[v].empty()) issue(K::VertexCoverage, "vertex " + std::to_string(v) + " is in no bag");
  for (auto [u, v] : g.edges()) {
    bool found = false;
    for (auto w : holders[u])
      if (std::binary_search(d.bags[w].begin(), d.bags[w].end(), v)) {
        found = true;
        break;
      }
    if (!found)
      issue(K::EdgeCoverage, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is in no bag");
  }
  if (out.issues.empty() || std::none_of(out.issues.begin(), out.issues.end(),
                                         [](const auto& i) { return i.kind == K::NotATree; })) {
    auto adj = tree_adjacency(d);
    std::vector<char> in(B, 0), seen(B, 0);
    for (Vertex v = 0; v < g.n(); ++v) {
      if (holders[v].empty()) continue;
      for (auto w : holders[v]) in[w] = 1;
      std::vector<std::size_t> stack{holders[v][0]};
      seen[holders[v][0]] = 1;
      std::size_t count = 1;
      while (!stack.empty()) {
        auto w = stack.back();
        stack.pop_back();
        for (auto u : adj[w])
          if (in[u] && !seen[u]) {
            seen[u] = 1;
            ++count;
            stack.push_back(u);
          }
      }
      if (count != holders[v].size())
        issue(K::Connectivity, "bags holding vertex " + std::to_string(v) + " are not connected");
      for (auto w : holders[v]) in[w] = seen[w] = 0;
    }
  }
  if (out.issues.empty()) out.width = d.width();
  return out;
}

void require_valid(const Graph& g, const TreeDecomposition& d) {
  auto check = validate_decomposition(g, d);
  if (check.ok()) return;
  std::string msg = "invalid tree decomposition:";
  for (std::size_t i = 0; i < check.issues.size() && i < 5; ++i) msg += "\n  " + check.issues[i].message;
  throw ValidationError(msg);
}

TreeDecomposition trivial_decomposition(const Graph& g) {
  TreeDecomposition d;
  d.bags.emplace_back(g.n());
  std::iota(d.bags[0].begin(), d.bags[0].end(), Vertex{0});
  d.root = 0;
  return d;
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
  const std::size_t n = g.n();
  if (n == 0) return trivial_decomposition(g);
  std::vector<std::set<Vertex>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> gone(n, 0);
  std::vector<std::size_t> pos(n);
  std::vector<Vertex> order;
  std::vector<std::vector<Vertex>> elim_bags;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best_fill = SIZE_MAX;
    Vertex best = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (gone[v]) continue;
      std::size_t fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end() && fill < best_fill; ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
        if (fill == 0) break;
      }
    }
    std::vector<Vertex> bag(adj[best].begin(), adj[best].end());
    bag.insert(std::lower_bound(bag.begin(), bag.end(), best), best);
    for (auto a = adj[best].begin(); a != adj[best].end(); ++a)
      for (auto b = std::next(a); b != adj[best].end(); ++b) {
        adj[*a].insert(*b);
        adj[*b].insert(*a);
      }
    for (Vertex u : adj[best]) adj[u].erase(best);
    adj[best].clear();
    gone[best] = 1;
    pos[best] = step;
    order.push_back(best);
    elim_bags.push_back(std::move(bag));
  }
  // elimination tree: bag i hangs below the bag of its earliest-eliminated later neighbour
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = n;
    for (Vertex u : elim_bags[i])
      if (u != order[i] && (p == n || pos[u] < p)) p = pos[u];
    parent[i] = p == n ? (i + 1 < n ? n - 1 : i) : p;
  }
  // contract edges where one bag contains the other
  std::vector<std::size_t> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&](std::size_t x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  std::vector<std::vector<Vertex>> bags = elim_bags;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t a = find(i), b = find(parent[i]);
      if (a == b) continue;
      if (subset_of(bags[a], bags[b])) {
        rep[a] = b;
        changed = true;
      } else if (subset_of(bags[b], bags[a])) {
        rep[b] = a;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> index(n, SIZE_MAX);
  TreeDecomposition d;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = find(i);
    if (index[r] == SIZE_MAX) {
      index[r] = d.bags.size();
      d.bags.push_back(bags[r]);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    auto a = index[find(i)], b = index[find(parent[i])];
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  d.edges.assign(edges.begin(), edges.end());
  d.root = index[find(n - 1)];
  return d;
}

TreeDecomposition binarize(const TreeDecomposition& d) {
  if (d.size() == 0) return d;
  TreeDecomposition src = d;
  if (!src.root) src.root = 0;
  auto ch = src.children();
  TreeDecomposition out;
  out.bags = src.bags;
  out.root = src.root;
  for (std::size_t w = 0; w < src.size(); ++w) {
    const auto& c = ch[w];
    if (c.size() <= 2) {
      for (auto u : c) out.edges.emplace_back(w, u);
      continue;
    }
    std::size_t cur = w;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const bool last_two = i + 2 == c.size();
      out.edges.emplace_back(cur, c[i]);
      if (last_two) {
        out.edges.emplace_back(cur, c[i + 1]);
        break;
      }
      std::size_t copy = out.bags.size();
      out.bags.push_back(src.bags[w]);
      out.edges.emplace_back(cur, copy);
      cur = copy;
    }
  }
  return out;
}

std::size_t balance_depth_bound(std::size_t bags) {
  if (bags <= 1) return 0;
  return static_cast<std::size_t>(std::floor(kBalanceDepthFactor * std::log2(static_cast<double>(bags)))) +
         kBalanceDepthFactor;
}

namespace {

// Recursive splitting of the (max-degree-3) decomposition tree. Every piece
// keeps at most two boundary edges towards the rest of the tree.
class Balancer {
 public:
  explicit Balancer(const TreeDecomposition& b) : src_(b), adj_(tree_adjacency(b)), stamp_(b.size(), 0) {}

  TreeDecomposition run() {
    std::vector<std::size_t> all(src_.size());
    std::iota(all.begin(), all.end(), 0);
    auto root = build(all, {});
    out_.root = root;
    return std::move(out_);
  }

 private:
  using Boundary = std::vector<std::pair<std::size_t, std::size_t>>;  // (inside, outside)

  std::size_t new_bag(std::vector<Vertex> bag) {
    out_.bags.push_back(std::move(bag));
    return out_.bags.size() - 1;
  }

  void mark(const std::vector<std::size_t>& s) {
    ++cur_;
    for (auto w : s) stamp_[w] = cur_;
  }

  std::size_t centroid(const std::vector<std::size_t>& s) {
    // sizes of subtrees hanging below each node when rooted at s[0]
    std::vector<std::size_t> order;
    std::unordered_map<std::size_t, std::size_t> parent, sub;
    order.push_back(s[0]);
    parent[s[0]] = s[0];
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto u : adj_[order[i]])
        if (stamp_[u] == cur_ && !parent.count(u)) {
          parent[u] = order[i];
          order.push_back(u);
        }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      sub[*it] += 1;
      if (parent[*it] != *it) sub[parent[*it]] += sub[*it];
    }
    const std::size_t total = s.size();
    std::size_t best = s[0], best_val = SIZE_MAX;
    for (auto w : order) {
      std::size_t worst = total - sub[w];
      for (auto u : adj_[w])
        if (stamp_[u] == cur_ && parent[u] == w && u != w) worst = std::max(worst, sub[u]);
      if (worst < best_val || (worst == best_val && w < best)) {
        best_val = worst;
        best = w;
      }
    }
    return best;
  }

  std::vector<std::size_t> bfs_parents(std::size_t from, std::unordered_map<std::size_t, std::size_t>& par) {
    std::vector<std::size_t> order{from};
    par[from] = from;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto u : adj_[order[i]])
        if (stamp_[u] == cur_ && !par.count(u)) {
          par[u] = order[i];
          order.push_back(u);
        }
    return order;
  }

  std::size_t build(const std::vector<std::size_t>& s, const Boundary& boundary) {
    mark(s);
    std::size_t c;
    if (boundary.size() <= 1) {
      c = centroid(s);
    } else {
      const std::size_t z = centroid(s);
      std::unordered_map<std::size_t, std::size_t> par;
      bfs_parents(boundary[0].first, par);
      std::set<std::size_t> on_path;
      for (std::size_t x = boundary[1].first;; x = par[x]) {
        on_path.insert(x);
        if (par[x] == x) break;
      }
      std::unordered_map<std::size_t, std::size_t> par_z;
      auto order = bfs_parents(z, par_z);
      c = z;
      for (auto w : order)
        if (on_path.count(w)) {
          c = w;
          break;
        }
    }
    std::vector<Vertex> bag = src_.bags[c];
    for (auto [in, o] : boundary) {
      std::vector<Vertex> sep;
      std::set_intersection(src_.bags[in].begin(), src_.bags[in].end(), src_.bags[o].begin(),
                            src_.bags[o].end(), std::back_inserter(sep));
      std::vector<Vertex> merged;
      std::set_union(bag.begin(), bag.end(), sep.begin(), sep.end(), std::back_inserter(merged));
      bag.swap(merged);
    }
    // components of s minus c
    const auto my_stamp = cur_;
    std::vector<std::vector<std::size_t>> comps;
    std::unordered_map<std::size_t, std::size_t> comp_of;
    for (auto start : adj_[c]) {
      if (stamp_[start] != my_stamp || comp_of.count(start)) continue;
      comps.emplace_back();
      std::vector<std::size_t> stack{start};
      comp_of[start] = comps.size() - 1;
      while (!stack.empty()) {
        auto w = stack.back();
        stack.pop_back();
        comps.back().push_back(w);
        for (auto u : adj_[w])
          if (u != c && stamp_[u] == my_stamp && !comp_of.count(u)) {
            comp_of[u] = comps.size() - 1;
            stack.push_back(u);
          }
      }
    }
    std::vector<Boundary> sub_boundary(comps.size());
    for (auto u : adj_[c])
      if (comp_of.count(u)) sub_boundary[comp_of[u]].emplace_back(u, c);
    for (auto [in, o] : boundary)
      if (in != c) sub_boundary[comp_of.at(in)].emplace_back(in, o);

    const std::size_t me = new_bag(bag);
    std::vector<std::size_t> kids;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::sort(comps[i].begin(), comps[i].end());
      kids.push_back(build(comps[i], sub_boundary[i]));
    }
    if (kids.size() <= 2) {
      for (auto k : kids) out_.edges.emplace_back(me, k);
    } else {
      const std::size_t group = new_bag(out_.bags[me]);
      out_.edges.emplace_back(me, kids[0]);
      out_.edges.emplace_back(me, group);
      for (std::size_t i = 1; i < kids.size(); ++i) out_.edges.emplace_back(group, kids[i]);
    }
    return me;
  }

  const TreeDecomposition& src_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> stamp_;
  std::size_t cur_ = 0;
  TreeDecomposition out_;
};

}  // namespace

TreeDecomposition binarize_balance(const TreeDecomposition& d) {
  TreeDecomposition b = binarize(d);
  if (b.size() <= 1) {
    if (b.size() == 1) b.root = 0;
    return b;
  }
  for (const auto& kids : b.children())
    if (kids.size() > 3) throw InternalError("binarize left a bag with more than two children");
  return Balancer(b).run();
}

std::vector<std::vector<std::size_t>> levels(const TreeDecomposition& d) {
  const std::size_t r = require_root(d);
  auto adj = tree_adjacency(d);
  std::vector<std::size_t> depth(d.size(), SIZE_MAX);
  depth[r] = 0;
  std::vector<std::size_t> queue{r};
  std::size_t max_depth = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto w = queue[i];
    max_depth = std::max(max_depth, depth[w]);
    for (auto u : adj[w])
      if (depth[u] == SIZE_MAX) {
        depth[u] = depth[w] + 1;
        queue.push_back(u);
      }
  }
  if (queue.size() != d.size()) throw ValidationError("tree decomposition is not connected");
  std::vector<std::vector<std::size_t>> out(max_depth + 1);
  for (std::size_t w = 0; w < d.size(); ++w) out[max_depth - depth[w]].push_back(w);
  return out;
}

}  // namespace fanspec
