#include "fanspec/instances.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace fanspec {

namespace {

std::vector<Vertex> permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[draw(rng, i)]);
  return p;
}

Graph relabel(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges, Rng& rng) {
  const auto p = permutation(n, rng);
  std::vector<std::pair<Vertex, Vertex>> out;
  for (auto [a, b] : edges) out.emplace_back(p[a], p[b]);
  return Graph(n, std::move(out));
}

bool connected_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::size_t comps = n;
  for (auto [a, b] : edges) {
    const Vertex ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb, --comps;
  }
  return comps <= 1;
}

}  // namespace

Graph random_partial_ktree(std::size_t n, std::size_t k, std::size_t max_degree, unsigned drop_percent, Rng& rng) {
  if (n == 0) return Graph(0, {});
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::size_t> deg(n, 0);
  auto add = [&](Vertex a, Vertex b) {
    edges.emplace_back(a, b);
    ++deg[a];
    ++deg[b];
  };
  const std::size_t base = std::min(n, k + 1);
  std::vector<std::vector<Vertex>> cliques;  // cliques of size <= k that new vertices may attach to
  for (Vertex a = 0; a < base; ++a)
    for (Vertex b = a + 1; b < base; ++b) add(a, b);
  {
    // every k-subset of the base clique
    std::vector<Vertex> all(base);
    std::iota(all.begin(), all.end(), 0);
    if (base <= k) {
      cliques.push_back(all);
    } else {
      for (std::size_t skip = 0; skip < base; ++skip) {
        std::vector<Vertex> c;
        for (Vertex x : all)
          if (x != skip) c.push_back(x);
        cliques.push_back(c);
      }
    }
  }
  for (Vertex v = static_cast<Vertex>(base); v < n; ++v) {
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < cliques.size(); ++i)
      if (std::all_of(cliques[i].begin(), cliques[i].end(), [&](Vertex x) { return deg[x] < max_degree; }))
        ok.push_back(i);
    std::vector<Vertex> attach;
    if (!ok.empty()) {
      attach = cliques[ok[draw(rng, ok.size())]];
    } else {
      std::vector<Vertex> free;
      for (Vertex x = 0; x < v; ++x)
        if (deg[x] < max_degree) free.push_back(x);
      if (free.empty()) throw ArgumentError("cannot grow a connected graph under the degree bound");
      attach = {free[draw(rng, free.size())]};
    }
    for (Vertex x : attach) add(x, v);
    // cliques containing v: v plus every (|attach|-1)-subset of attach
    if (attach.size() < k) {
      auto c = attach;
      c.push_back(v);
      cliques.push_back(c);
    } else {
      for (std::size_t skip = 0; skip < attach.size(); ++skip) {
        std::vector<Vertex> c;
        for (std::size_t i = 0; i < attach.size(); ++i)
          if (i != skip) c.push_back(attach[i]);
        c.push_back(v);
        cliques.push_back(c);
      }
    }
  }
  // random edge deletions that keep the graph connected
  for (std::size_t i = edges.size(); i-- > 0;) {
    if (!coin(rng, drop_percent)) continue;
    auto trial = edges;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (connected_edges(n, trial)) edges = std::move(trial);
  }
  return relabel(n, edges, rng);
}

Graph random_connected_graph(std::size_t n, std::size_t max_degree, unsigned extra_percent, Rng& rng) {
  if (n == 0) return Graph(0, {});
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::size_t> deg(n, 0);
  std::set<std::pair<Vertex, Vertex>> present;
  auto add = [&](Vertex a, Vertex b) {
    edges.emplace_back(a, b);
    present.emplace(std::min(a, b), std::max(a, b));
    ++deg[a];
    ++deg[b];
  };
  for (Vertex v = 1; v < n; ++v) {
    std::vector<Vertex> free;
    for (Vertex x = 0; x < v; ++x)
      if (deg[x] < max_degree) free.push_back(x);
    if (free.empty()) throw ArgumentError("cannot grow a connected graph under the degree bound");
    add(free[draw(rng, free.size())], v);
  }
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (!present.count({a, b}) && deg[a] < max_degree && deg[b] < max_degree && coin(rng, extra_percent))
        add(a, b);
  return relabel(n, edges, rng);
}

Alphabet random_alphabet(std::size_t q, Rng& rng) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < q; ++i) names.push_back(std::to_string(i));
  if (q <= 1) return Alphabet::chain(q);
  const std::size_t kind = draw(rng, 10);
  if (kind < 6) return Alphabet::chain(q);
  std::vector<std::pair<State, State>> order;
  if (q == 2) return Alphabet(names, kind < 9 ? std::vector<std::pair<State, State>>{{0, 1}} : order);
  switch (kind) {
    case 6:  // V: 0 below every other state
      for (State i = 1; i < q; ++i) order.emplace_back(0, i);
      break;
    case 7:  // Λ: q-1 above every other state
      for (State i = 0; i + 1 < q; ++i) order.emplace_back(i, static_cast<State>(q - 1));
      break;
    case 8:  // chain on the first two states, the rest isolated
      order.emplace_back(0, 1);
      break;
    default:  // chain 0 < 1 < ... with q-1 also above 0 only
      for (State i = 0; i + 2 < q; ++i) order.emplace_back(i, i + 1);
      order.emplace_back(0, static_cast<State>(q - 1));
      break;
  }
  return Alphabet(names, order);
}

Network random_network(const Graph& g, const Alphabet& a, bool deterministic, unsigned stay_percent, Rng& rng) {
  const std::size_t q = a.size();
  std::vector<RuleTable> tables(g.n());
  std::vector<State> scope;
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto& nb = g.closed_neighborhood(v);
    const auto self = static_cast<std::size_t>(std::find(nb.begin(), nb.end(), v) - nb.begin());
    std::size_t rows = 1;
    for (std::size_t i = 0; i < nb.size(); ++i) rows *= q;
    tables[v].masks.assign(rows, 0);
    tables[v].defined.assign(rows, 1);
    for (std::size_t r = 0; r < rows; ++r) {
      // digit of the own state, first scope vertex most significant
      std::size_t rest = r;
      for (std::size_t i = nb.size(); i-- > self + 1;) rest /= q;
      const auto cur = static_cast<State>(rest % q);
      std::vector<State> up;
      for (State s = 0; s < q; ++s)
        if (a.leq(cur, s)) up.push_back(s);
      const State pick = coin(rng, stay_percent) ? cur : up[draw(rng, up.size())];
      std::uint64_t mask = std::uint64_t{1} << pick;
      if (!deterministic)
        for (State s : up)
          if (coin(rng, 30)) mask |= std::uint64_t{1} << s;
      tables[v].masks[r] = mask;
    }
  }
  return Network::from_tables(g, a, std::move(tables));
}

Configuration random_configuration(const Network& net, Rng& rng) {
  Configuration c(net.n());
  for (auto& x : c) x = static_cast<State>(draw(rng, net.alphabet().size()));
  return c;
}

Orbit random_orbit(const Network& net, std::size_t t, Rng& rng) {
  Orbit o;
  o.steps.push_back(random_configuration(net, rng));
  StateSet img;
  for (std::size_t s = 0; s < t; ++s) {
    const Configuration& x = o.steps.back();
    Configuration y(net.n());
    for (Vertex v = 0; v < net.n(); ++v) {
      net.image(v, x, img);
      y[v] = img[draw(rng, img.size())];
    }
    o.steps.push_back(std::move(y));
  }
  return o;
}

std::vector<State> random_monotone_sequence(const Alphabet& a, std::size_t t, Rng& rng) {
  std::vector<State> seq(t + 1);
  seq[0] = static_cast<State>(draw(rng, a.size()));
  for (std::size_t s = 1; s <= t; ++s) {
    seq[s] = seq[s - 1];
    if (coin(rng, 25)) {
      std::vector<State> up;
      for (State x = 0; x < a.size(); ++x)
        if (a.lt(seq[s - 1], x)) up.push_back(x);
      if (!up.empty()) seq[s] = up[draw(rng, up.size())];
    }
  }
  return seq;
}

Specification random_spec(const Network& net, std::size_t t, Rng& rng) {
  const Orbit o = random_orbit(net, t, rng);
  const std::size_t q = net.alphabet().size();
  Specification spec(t);
  auto random_set = [&](State must, bool include) {
    StateSet s;
    for (State x = 0; x < q; ++x)
      if (coin(rng, 40)) s.push_back(x);
    if (include) s.push_back(must);
    return s;
  };
  for (Vertex v = 0; v < net.n(); ++v) {
    const auto seq = o.node_sequence(v);
    const std::size_t roll = draw(rng, 100);
    if (roll < 30) continue;
    if (roll < 55) {
      if (coin(rng, 60)) spec.set_initial(v, random_set(seq.front(), coin(rng, 70)));
      if (coin(rng, 60)) spec.set_final(v, random_set(seq.back(), coin(rng, 70)));
      if (coin(rng, 20)) spec.set_avoid(v, {static_cast<State>(draw(rng, q))});
      continue;
    }
    spec.forbid_all(v);
    if (coin(rng, 60)) spec.add_trace(v, RleTrace::from_sequence(seq));
    const std::size_t extra = 1 + draw(rng, 3);
    for (std::size_t i = 0; i < extra; ++i)
      spec.add_trace(v, RleTrace::from_sequence(random_monotone_sequence(net.alphabet(), t, rng)));
  }
  return spec;
}

std::vector<std::pair<Vertex, Vertex>> random_digraph(std::size_t n, std::size_t max_degree, std::size_t edges,
                                                      Rng& rng) {
  std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0);
  std::set<std::pair<Vertex, Vertex>> arcs;
  if (n < 2) return {};
  for (std::size_t attempt = 0; attempt < edges * 20 && arcs.size() < edges; ++attempt) {
    const auto a = static_cast<Vertex>(draw(rng, n));
    const auto b = static_cast<Vertex>(draw(rng, n));
    if (a == b || arcs.count({a, b}) || out_deg[a] >= max_degree || in_deg[b] >= max_degree) continue;
    arcs.emplace(a, b);
    ++out_deg[a];
    ++in_deg[b];
  }
  return {arcs.begin(), arcs.end()};
}

std::vector<Graph> connected_graphs(std::size_t n) {
  if (n > 6) throw ArgumentError("connected_graphs supports n <= 6");
  std::vector<std::pair<Vertex, Vertex>> all;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) all.emplace_back(a, b);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Vertex>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto index_of = [&](Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(std::find(all.begin(), all.end(), std::make_pair(a, b)) - all.begin());
  };
  std::vector<std::vector<std::size_t>> mapped(perms.size(), std::vector<std::size_t>(all.size()));
  for (std::size_t p = 0; p < perms.size(); ++p)
    for (std::size_t e = 0; e < all.size(); ++e) mapped[p][e] = index_of(perms[p][all[e].first], perms[p][all[e].second]);
  std::set<std::uint32_t> seen;
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << all.size()); ++mask) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t e = 0; e < all.size(); ++e)
      if (mask >> e & 1) edges.push_back(all[e]);
    if (!connected_edges(n, edges)) continue;
    std::uint32_t canon = mask;
    for (std::size_t p = 0; p < perms.size(); ++p) {
      std::uint32_t m = 0;
      for (std::size_t e = 0; e < all.size(); ++e)
        if (mask >> e & 1) m |= std::uint32_t{1} << mapped[p][e];
      canon = std::min(canon, m);
    }
    if (seen.insert(canon).second) out.emplace_back(n, std::move(edges));
  }
  return out;
}

}  // namespace fanspec
