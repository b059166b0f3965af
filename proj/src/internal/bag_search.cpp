#include "internal/bag_search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <tuple>

#include <tbb/parallel_for.h>

namespace fanspec::detail {

namespace {

void build_trie(Domain& d) {
  const std::size_t len = d.horizon + 1;
  struct Pending {
    std::uint32_t lo, hi;
    std::size_t depth;  // index of the next symbol
  };
  d.begin.assign(1, 0);
  d.end.assign(1, 0);
  d.label.assign(1, 0);
  d.leaf.assign(1, kNone);
  std::vector<Pending> queue{{0, static_cast<std::uint32_t>(d.size()), 0}};
  for (std::size_t n = 0; n < queue.size(); ++n) {
    const Pending cur = queue[n];
    if (cur.depth == len) {
      d.leaf[n] = cur.lo;
      continue;
    }
    d.begin[n] = static_cast<std::uint32_t>(d.label.size());
    for (std::uint32_t i = cur.lo; i < cur.hi;) {
      const State q = d.seq(i)[cur.depth];
      std::uint32_t j = i;
      while (j < cur.hi && d.seq(j)[cur.depth] == q) ++j;
      d.label.push_back(q);
      d.leaf.push_back(kNone);
      d.begin.push_back(0);
      d.end.push_back(0);
      queue.push_back({i, j, cur.depth + 1});
      i = j;
    }
    d.end[n] = static_cast<std::uint32_t>(d.label.size());
  }
}

}  // namespace

Domain build_domain(const Network& net, const Specification& spec, Vertex v, std::size_t t, bool apply_spec,
                    std::size_t cap) {
  Domain d;
  d.horizon = t;
  const Alphabet& a = net.alphabet();
  const NodeSpec* ns = apply_spec ? spec.find(v) : nullptr;
  std::vector<std::vector<State>> seqs;
  auto too_many = [&] {
    throw ResourceError("trace domain of node " + std::to_string(v) + " exceeds " + std::to_string(cap) +
                        " traces at horizon " + std::to_string(t));
  };
  if (ns && ns->traces) {
    for (const auto& [key, tr] : *ns->traces)
      if (spec.admits(v, tr)) seqs.push_back(tr.to_sequence());
    if (seqs.size() > cap) too_many();
  } else {
    auto in = [](const StateSet& s, State q) { return std::binary_search(s.begin(), s.end(), q); };
    std::vector<State> cur(t + 1);
    std::function<void(std::size_t)> fill = [&](std::size_t pos) {
      for (State q = 0; q < a.size(); ++q) {
        if (ns && in(ns->avoid, q)) continue;
        if (pos == 0 && ns && ns->initial && !in(*ns->initial, q)) continue;
        if (pos > 0 && !a.leq(cur[pos - 1], q)) continue;
        cur[pos] = q;
        if (pos == t) {
          if (ns && ns->final && !in(*ns->final, q)) continue;
          seqs.push_back(cur);
          if (seqs.size() > cap) too_many();
        } else {
          fill(pos + 1);
        }
      }
    };
    fill(0);
  }
  std::sort(seqs.begin(), seqs.end());
  seqs.erase(std::unique(seqs.begin(), seqs.end()), seqs.end());
  d.traces.reserve(seqs.size());
  d.dense.reserve(seqs.size() * (t + 1));
  for (const auto& s : seqs) {
    d.traces.push_back(RleTrace::from_sequence(s));
    d.dense.insert(d.dense.end(), s.begin(), s.end());
  }
  build_trie(d);
  return d;
}

namespace {

// Trie over the projections of child entries onto a link, in search order.
// target[] is a node id, or the child entry index on the last level.
struct TupleTrie {
  std::vector<std::uint32_t> begin, end;
  std::vector<std::uint32_t> label, target;

  // slot holding `id` below `node`, or kNone
  std::uint32_t find(std::uint32_t node, std::uint32_t id) const {
    auto first = label.begin() + begin[node];
    auto last = label.begin() + end[node];
    auto it = std::lower_bound(first, last, id);
    if (it == last || *it != id) return kNone;
    return static_cast<std::uint32_t>(it - label.begin());
  }
};

TupleTrie build_tuple_trie(std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> tuples,
                           std::size_t len) {
  std::sort(tuples.begin(), tuples.end());
  TupleTrie tt;
  struct Pending {
    std::size_t lo, hi, depth;
  };
  std::vector<Pending> queue{{0, tuples.size(), 0}};
  tt.begin.push_back(0);
  tt.end.push_back(0);
  for (std::size_t n = 0; n < queue.size(); ++n) {
    const Pending cur = queue[n];
    tt.begin[n] = static_cast<std::uint32_t>(tt.label.size());
    for (std::size_t i = cur.lo; i < cur.hi;) {
      const std::uint32_t id = tuples[i].first[cur.depth];
      std::size_t j = i;
      while (j < cur.hi && tuples[j].first[cur.depth] == id) ++j;
      tt.label.push_back(id);
      if (cur.depth + 1 == len) {
        tt.target.push_back(tuples[i].second);
      } else {
        tt.target.push_back(static_cast<std::uint32_t>(queue.size()));
        queue.push_back({i, j, cur.depth + 1});
        tt.begin.push_back(0);
        tt.end.push_back(0);
      }
      i = j;
    }
    tt.end[n] = static_cast<std::uint32_t>(tt.label.size());
  }
  return tt;
}

struct CenterPlan {
  Vertex v = 0;
  std::vector<std::uint32_t> scope;  // search positions of N[v], label order
  std::uint32_t self = 0;  // search position of v
};

struct LinkPlan {
  TupleTrie trie;
  std::size_t len = 0;
};

struct Step {
  std::uint32_t link, level;
};

struct Plan {
  std::size_t m = 0, key_count = 0, horizon = 0;
  std::vector<Vertex> order;
  std::vector<const Domain*> dom;  // per position
  std::vector<CenterPlan> centers;
  std::vector<std::vector<std::uint32_t>> completing;  // per position
  std::vector<LinkPlan> links;
  std::vector<std::vector<Step>> steps;  // per position
};

struct Abort {};

struct Shared {
  std::atomic<std::uint64_t> work{0};
  std::atomic<std::size_t> entries{0};
  std::atomic<std::size_t> best{static_cast<std::size_t>(-1)};
};

class Worker {
 public:
  Worker(const Plan& plan, const Network& net, const BagProblem& p, const SearchLimits& lim, Shared& shared,
         std::size_t branch)
      : P_(plan), net_(net), p_(p), lim_(lim), sh_(shared), branch_(branch) {
    val_.assign(P_.m, kNone);
    tn_.resize(P_.links.size());
    for (std::size_t k = 0; k < P_.links.size(); ++k) tn_[k].assign(P_.links[k].len + 1, 0);
    cand_.resize(P_.m);
    path_.resize(P_.horizon + 1);
  }

  void generate(std::size_t i, std::vector<std::uint32_t>& out) {
    out.clear();
    const Domain& D = *P_.dom[i];
    const auto& steps = P_.steps[i];
    const auto& cs = P_.completing[i];
    if (steps.empty()) {
      if (cs.empty()) {
        out.resize(D.size());
        std::iota(out.begin(), out.end(), 0u);
      } else {
        walk(i, 0, 0, out);
      }
      return;
    }
    std::size_t pick = 0, best = static_cast<std::size_t>(-1);
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const auto& tt = P_.links[steps[s].link].trie;
      const std::uint32_t node = tn_[steps[s].link][steps[s].level];
      const std::size_t width = tt.end[node] - tt.begin[node];
      if (width < best) best = width, pick = s;
    }
    const auto& tt = P_.links[steps[pick].link].trie;
    const std::uint32_t node = tn_[steps[pick].link][steps[pick].level];
    for (std::uint32_t slot = tt.begin[node]; slot < tt.end[node]; ++slot) {
      tick();
      const std::uint32_t id = tt.label[slot];
      bool ok = true;
      for (std::size_t s = 0; s < steps.size() && ok; ++s) {
        if (s == pick) continue;
        const auto& other = P_.links[steps[s].link].trie;
        ok = other.find(tn_[steps[s].link][steps[s].level], id) != kNone;
      }
      if (ok && !cs.empty()) ok = check_full(i, D.seq(id));
      if (ok) out.push_back(id);
    }
  }

  // Returns true once a completion of the current key prefix was recorded.
  bool dfs(std::size_t i) {
    if (i == P_.m) {
      record();
      return true;
    }
    auto& cs = cand_[i];
    generate(i, cs);
    for (std::size_t c = 0; c < cs.size(); ++c) {
      tick();
      assign(i, cs[c]);
      if (dfs(i + 1) && i >= P_.key_count) return true;
    }
    return false;
  }

  void assign(std::size_t i, std::uint32_t id) {
    val_[i] = id;
    for (const Step& st : P_.steps[i]) {
      const auto& tt = P_.links[st.link].trie;
      const std::uint32_t slot = tt.find(tn_[st.link][st.level], id);
      tn_[st.link][st.level + 1] = tt.target[slot];
    }
  }

  void flush() {
    sh_.work.fetch_add(work_ & 1023, std::memory_order_relaxed);
    work_ = 0;
  }

  std::vector<std::vector<std::uint32_t>> values, back;

 private:
  void tick() {
    if ((++work_ & 1023) != 0) return;
    const auto total = sh_.work.fetch_add(1024, std::memory_order_relaxed) + 1024;
    if (lim_.work_budget && total > lim_.work_budget)
      throw BudgetError("work budget of " + std::to_string(lim_.work_budget) + " search steps exhausted in bag " +
                        std::to_string(p_.bag));
    if (P_.key_count == 0 && sh_.best.load(std::memory_order_relaxed) < branch_) throw Abort{};
  }

  const State* column(std::size_t pos, std::size_t i, const State* iseq) const {
    return pos == i ? iseq : P_.dom[pos]->seq(val_[pos]);
  }

  bool transition_ok(const CenterPlan& c, std::size_t s, std::size_t i, const State* iseq) {
    scope_.resize(c.scope.size());
    for (std::size_t k = 0; k < c.scope.size(); ++k) scope_[k] = column(c.scope[k], i, iseq)[s];
    return net_.admits(c.v, scope_, column(c.self, i, iseq)[s + 1]);
  }

  bool check_full(std::size_t i, const State* seq) {
    for (std::uint32_t ci : P_.completing[i]) {
      const CenterPlan& c = P_.centers[ci];
      for (std::size_t s = 0; s < P_.horizon; ++s)
        if (!transition_ok(c, s, i, seq)) return false;
    }
    return true;
  }

  // Depth-first walk of the domain trie of position i, checking each
  // completed center as soon as the needed symbols are known.
  void walk(std::size_t i, std::uint32_t node, std::size_t depth, std::vector<std::uint32_t>& out) {
    const Domain& D = *P_.dom[i];
    for (std::uint32_t c = D.begin[node]; c < D.end[node]; ++c) {
      tick();
      path_[depth] = D.label[c];
      bool ok = true;
      for (std::uint32_t ci : P_.completing[i]) {
        const CenterPlan& cp = P_.centers[ci];
        if (cp.self == i) {
          if (depth >= 1) ok = transition_ok(cp, depth - 1, i, path_.data());
        } else if (depth < P_.horizon) {
          ok = transition_ok(cp, depth, i, path_.data());
        }
        if (!ok) break;
      }
      if (!ok) continue;
      if (depth == P_.horizon) {
        out.push_back(D.leaf[c]);
      } else {
        walk(i, c, depth + 1, out);
      }
    }
  }

  void record() {
    if (sh_.entries.fetch_add(1, std::memory_order_relaxed) + 1 > lim_.cap)
      throw ResourceError("table of bag " + std::to_string(p_.bag) + " exceeds the cap of " +
                          std::to_string(lim_.cap) + " entries");
    values.push_back(val_);
    std::vector<std::uint32_t> b(P_.links.size(), 0);
    for (std::size_t k = 0; k < P_.links.size(); ++k)
      if (P_.links[k].len) b[k] = tn_[k][P_.links[k].len];
    back.push_back(std::move(b));
  }

  const Plan& P_;
  const Network& net_;
  const BagProblem& p_;
  const SearchLimits& lim_;
  Shared& sh_;
  std::size_t branch_;
  std::vector<std::uint32_t> val_;
  std::vector<std::vector<std::uint32_t>> tn_;
  std::vector<std::vector<std::uint32_t>> cand_;
  std::vector<State> path_, scope_;
  std::uint64_t work_ = 0;
};

std::size_t index_in(const std::vector<Vertex>& sorted, Vertex v, const char* what) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v)
    throw InternalError(std::string("bag search: vertex ") + std::to_string(v) + " missing from " + what);
  return static_cast<std::size_t>(it - sorted.begin());
}

Plan make_plan(const Network& net, const std::vector<const Domain*>& domains, const BagProblem& p) {
  Plan P;
  P.m = p.vars.size();
  P.key_count = p.key.size();
  const auto& g = net.graph();

  // constraint scopes as variable indices
  std::vector<std::vector<std::size_t>> center_scope;
  for (Vertex c : p.centers) {
    std::vector<std::size_t> sc;
    for (Vertex u : g.closed_neighborhood(c)) sc.push_back(index_in(p.vars, u, "bag variables"));
    center_scope.push_back(std::move(sc));
  }
  std::vector<std::vector<std::size_t>> link_scope;
  for (const auto& ch : p.children) {
    std::vector<std::size_t> sc;
    for (Vertex u : ch.link) sc.push_back(index_in(p.vars, u, "bag variables"));
    link_scope.push_back(std::move(sc));
  }

  std::vector<char> is_key(P.m, 0), assigned(P.m, 0);
  for (Vertex u : p.key) is_key[index_in(p.vars, u, "bag variables")] = 1;
  std::vector<std::size_t> pos_of(P.m, 0);

  auto all_assigned_but = [&](const std::vector<std::size_t>& sc, std::size_t u) {
    bool contains = false;
    for (std::size_t x : sc) {
      if (x == u) {
        contains = true;
      } else if (!assigned[x]) {
        return false;
      }
    }
    return contains;
  };
  auto touches = [&](const std::vector<std::size_t>& sc, std::size_t u) {
    bool contains = false, any = false;
    for (std::size_t x : sc) {
      if (x == u) contains = true;
      if (assigned[x]) any = true;
    }
    return contains && any;
  };

  for (int group = 1; group >= 0; --group) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < P.m; ++j)
      if (is_key[j] == group) rest.push_back(j);
    while (!rest.empty()) {
      std::size_t best_k = 0;
      std::tuple<std::size_t, std::size_t, std::size_t> best_score{0, 0, 0};
      for (std::size_t k = 0; k < rest.size(); ++k) {
        const std::size_t u = rest[k];
        std::size_t completes = 0, touch = 0;
        for (const auto& sc : center_scope) {
          if (all_assigned_but(sc, u)) ++completes;
          if (touches(sc, u)) ++touch;
        }
        for (const auto& sc : link_scope)
          if (touches(sc, u)) ++touch;
        const std::size_t small = static_cast<std::size_t>(-1) - domains[p.vars[u]]->size();
        std::tuple<std::size_t, std::size_t, std::size_t> score{completes, touch, small};
        if (k == 0 || score > best_score) best_score = score, best_k = k;
      }
      const std::size_t u = rest[best_k];
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best_k));
      pos_of[u] = P.order.size();
      P.order.push_back(p.vars[u]);
      assigned[u] = 1;
    }
  }

  P.dom.resize(P.m);
  for (std::size_t i = 0; i < P.m; ++i) {
    P.dom[i] = domains.at(P.order[i]);
    if (!P.dom[i]) throw InternalError("bag search: missing domain for vertex " + std::to_string(P.order[i]));
    P.horizon = P.dom[i]->horizon;
  }

  P.completing.resize(P.m);
  for (std::size_t c = 0; c < p.centers.size(); ++c) {
    CenterPlan cp;
    cp.v = p.centers[c];
    std::size_t last = 0;
    for (std::size_t x : center_scope[c]) {
      cp.scope.push_back(static_cast<std::uint32_t>(pos_of[x]));
      last = std::max(last, pos_of[x]);
    }
    cp.self = static_cast<std::uint32_t>(pos_of[index_in(p.vars, cp.v, "bag variables")]);
    P.completing[last].push_back(static_cast<std::uint32_t>(P.centers.size()));
    P.centers.push_back(std::move(cp));
  }

  P.steps.resize(P.m);
  for (std::size_t k = 0; k < p.children.size(); ++k) {
    const auto& ch = p.children[k];
    // link variables in search order
    std::vector<std::pair<std::size_t, std::size_t>> lv;  // (position, index in child vars)
    for (Vertex u : ch.link) lv.emplace_back(pos_of[index_in(p.vars, u, "bag variables")], index_in(*ch.vars, u, "child variables"));
    std::sort(lv.begin(), lv.end());
    std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> tuples;
    tuples.reserve(ch.values->size());
    for (std::size_t e = 0; e < ch.values->size(); ++e) {
      std::vector<std::uint32_t> tup;
      for (auto [pos, ci] : lv) tup.push_back((*ch.values)[e][ci]);
      tuples.emplace_back(std::move(tup), static_cast<std::uint32_t>(e));
    }
    LinkPlan lp;
    lp.len = lv.size();
    if (lp.len) lp.trie = build_tuple_trie(std::move(tuples), lp.len);
    for (std::size_t j = 0; j < lv.size(); ++j)
      P.steps[lv[j].first].push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(j)});
    P.links.push_back(std::move(lp));
  }
  return P;
}

}  // namespace

BagResult search_bag(const Network& net, const std::vector<const Domain*>& domains, const BagProblem& p,
                     const SearchLimits& limits) {
  BagResult res;
  for (const auto& ch : p.children)
    if (ch.values->empty()) return res;

  const Plan P = make_plan(net, domains, p);
  Shared shared;

  std::vector<std::vector<std::uint32_t>> values, back;
  if (P.m == 0) {
    values.emplace_back();
    back.emplace_back(p.children.size(), 0);
  } else {
    Worker root(P, net, p, limits, shared, 0);
    std::vector<std::uint32_t> top;
    root.generate(0, top);
    root.flush();
    std::vector<std::unique_ptr<Worker>> workers(top.size());
    auto run_branch = [&](std::size_t b) {
      if (P.key_count == 0 && shared.best.load() < b) return;
      workers[b] = std::make_unique<Worker>(P, net, p, limits, shared, b);
      Worker& w = *workers[b];
      try {
        w.assign(0, top[b]);
        const bool found = w.dfs(1);
        if (found && P.key_count == 0) {
          std::size_t cur = shared.best.load();
          while (b < cur && !shared.best.compare_exchange_weak(cur, b)) {
          }
        }
      } catch (const Abort&) {
        w.values.clear();
        w.back.clear();
      }
      w.flush();
    };
    if (limits.parallel && top.size() > 1) {
      tbb::parallel_for(std::size_t{0}, top.size(), run_branch);
    } else {
      for (std::size_t b = 0; b < top.size(); ++b) {
        run_branch(b);
        if (P.key_count == 0 && shared.best.load() == b) break;
      }
    }
    for (std::size_t b = 0; b < top.size(); ++b) {
      if (!workers[b]) continue;
      if (P.key_count == 0 && shared.best.load() != b) continue;
      for (auto& v : workers[b]->values) values.push_back(std::move(v));
      for (auto& v : workers[b]->back) back.push_back(std::move(v));
    }
  }
  res.work = shared.work.load();

  // reorder: sort entries by key in label order, values aligned with p.vars
  std::vector<std::size_t> pos_of(P.m);
  for (std::size_t i = 0; i < P.m; ++i) pos_of[index_in(p.vars, P.order[i], "bag variables")] = i;
  std::vector<std::size_t> key_pos;
  for (Vertex u : p.key) key_pos.push_back(pos_of[index_in(p.vars, u, "bag variables")]);
  std::vector<std::size_t> perm(values.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t k : key_pos)
      if (values[a][k] != values[b][k]) return values[a][k] < values[b][k];
    return false;
  });
  res.values.reserve(values.size());
  res.back.reserve(values.size());
  for (std::size_t e : perm) {
    std::vector<std::uint32_t> row(P.m);
    for (std::size_t j = 0; j < P.m; ++j) row[j] = values[e][pos_of[j]];
    res.values.push_back(std::move(row));
    res.back.push_back(std::move(back[e]));
  }
  return res;
}

}  // namespace fanspec::detail
