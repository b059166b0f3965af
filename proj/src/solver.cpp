#include "fanspec/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <optional>

#include <tbb/parallel_for.h>
#include <tbb/global_control.h>
#include <tbb/info.h>
#include <tbb/task_arena.h>

#include "fanspec/validity.hpp"
#include "internal/bag_search.hpp"

namespace fanspec {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<Vertex> intersect(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Vertex> unite(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Explicit requests are honoured even above the core count, up to a sanity cap.
int arena_size(std::size_t jobs) {
  constexpr std::size_t kMaxJobs = 256;
  return jobs == 0 ? tbb::task_arena::automatic : static_cast<int>(std::min(jobs, kMaxJobs));
}

}  // namespace

std::size_t compressed_horizon(const Network& net) {
  const std::size_t h = net.alphabet().height();
  return net.n() * (h > 0 ? h - 1 : 0) + 1;
}

DpSolution solve_tables(const Network& net, const Specification& spec, const TreeDecomposition& d_in,
                        const SolverOptions& opts) {
  const auto start = Clock::now();
  const Graph& g = net.graph();
  spec.validate(net);
  require_valid(g, d_in);
  TreeDecomposition d = d_in;
  if (!d.root) d.root = 0;

  DpSolution sol;
  sol.horizon = spec.horizon();
  sol.stats.horizon = sol.horizon;
  const std::size_t t = sol.horizon;
  if (d.size() == 0) {
    DpTable tab;
    tab.entries.push_back({});
    sol.tables.push_back(std::move(tab));
    sol.stats.bags = 1;
    return sol;
  }
  sol.root = *d.root;

  tbb::task_arena arena(arena_size(opts.jobs));
  // lift the process-wide worker limit when more jobs than cores are requested
  std::optional<tbb::global_control> oversubscribe;
  if (opts.jobs > static_cast<std::size_t>(tbb::info::default_concurrency()))
    oversubscribe.emplace(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(arena_size(opts.jobs)));
  const bool parallel = opts.jobs != 1;

  // per-node trace domains
  std::vector<detail::Domain> store(g.n());
  arena.execute([&] {
    auto build = [&](std::size_t v) {
      store[v] = detail::build_domain(net, spec, static_cast<Vertex>(v), t, true, opts.max_domain);
    };
    if (parallel) {
      tbb::parallel_for(std::size_t{0}, g.n(), build);
    } else {
      for (std::size_t v = 0; v < g.n(); ++v) build(v);
    }
  });
  std::vector<const detail::Domain*> domains(g.n());
  sol.domains.resize(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) {
    domains[v] = &store[v];
    sol.domains[v] = store[v].traces;
    sol.stats.max_domain = std::max(sol.stats.max_domain, store[v].size());
  }

  const auto children = d.children();
  const auto parents = d.parents();
  const auto lv = levels(d);
  const std::size_t B = d.size();

  // depth of each bag, to locate the highest bag containing each vertex
  std::vector<std::size_t> depth(B, 0);
  {
    std::deque<std::size_t> queue{sol.root};
    while (!queue.empty()) {
      const std::size_t w = queue.front();
      queue.pop_front();
      for (std::size_t c : children[w]) {
        depth[c] = depth[w] + 1;
        queue.push_back(c);
      }
    }
  }
  std::vector<std::size_t> top(g.n(), B);
  for (std::size_t w = 0; w < B; ++w)
    for (Vertex v : d.bags[w])
      if (top[v] == B || depth[w] < depth[top[v]]) top[v] = w;

  sol.tables.resize(B);
  std::vector<std::vector<Vertex>> relevant(B);
  for (std::size_t w = 0; w < B; ++w) {
    DpTable& tab = sol.tables[w];
    tab.bag = w;
    tab.vars = closed_neighborhood(g, d.bags[w]);
    tab.children = children[w];
    if (opts.mode == TableMode::Faithful) {
      tab.centers = d.bags[w];
    } else {
      for (Vertex v : d.bags[w])
        if (top[v] == w) tab.centers.push_back(v);
    }
  }
  // variables constrained somewhere in each subtree, leaves first
  for (const auto& level : lv)
    for (std::size_t w : level) {
      relevant[w] = closed_neighborhood(g, sol.tables[w].centers);
      for (std::size_t c : children[w]) relevant[w] = unite(relevant[w], relevant[c]);
    }
  for (std::size_t w = 0; w < B; ++w) {
    DpTable& tab = sol.tables[w];
    if (opts.mode == TableMode::Faithful) {
      tab.key_vars = tab.vars;
    } else if (w != sol.root) {
      tab.key_vars = intersect(intersect(tab.vars, sol.tables[parents[w]].vars), relevant[w]);
    }
  }

  detail::SearchLimits lim;
  lim.cap = opts.bag_cap;
  lim.work_budget = opts.work_budget;
  lim.parallel = parallel;
  std::vector<std::vector<std::vector<std::uint32_t>>> values(B);
  std::atomic<std::uint64_t> work{0};

  arena.execute([&] {
    for (std::size_t li = 0; li < lv.size(); ++li) {
      const auto level_start = Clock::now();
      auto solve = [&](std::size_t idx) {
        const std::size_t w = lv[li][idx];
        DpTable& tab = sol.tables[w];
        detail::BagProblem p;
        p.bag = w;
        p.vars = tab.vars;
        p.centers = tab.centers;
        p.key = tab.key_vars;
        for (std::size_t c : tab.children) {
          detail::ChildLink link;
          link.vars = &sol.tables[c].vars;
          link.values = &values[c];
          link.link = intersect(sol.tables[c].key_vars, tab.vars);
          p.children.push_back(std::move(link));
        }
        if (lim.work_budget) {
          const auto used = work.load();
          if (used >= lim.work_budget) throw BudgetError("work budget exhausted before bag " + std::to_string(w));
        }
        detail::SearchLimits local = lim;
        if (local.work_budget) local.work_budget -= std::min(local.work_budget, work.load());
        auto res = detail::search_bag(net, domains, p, local);
        work += res.work;
        values[w] = std::move(res.values);
        tab.entries.resize(values[w].size());
        for (std::size_t e = 0; e < values[w].size(); ++e) {
          tab.entries[e].values = values[w][e];
          tab.entries[e].back = std::move(res.back[e]);
        }
      };
      if (parallel && lv[li].size() > 1) {
        tbb::parallel_for(std::size_t{0}, lv[li].size(), solve);
      } else {
        for (std::size_t idx = 0; idx < lv[li].size(); ++idx) solve(idx);
      }
      sol.stats.level_stats.push_back({li, lv[li].size(), since(level_start)});
    }
  });

  sol.stats.bags = B;
  sol.stats.levels = lv.size();
  sol.stats.work = work.load();
  for (const auto& tab : sol.tables) sol.stats.max_table = std::max(sol.stats.max_table, tab.entries.size());
  sol.stats.millis = since(start);
  return sol;
}

std::optional<std::vector<std::uint32_t>> join_children(const std::vector<Vertex>& vars,
                                                        const std::vector<std::uint32_t>& values,
                                                        const std::vector<const DpTable*>& children) {
  std::vector<std::uint32_t> back;
  for (const DpTable* child : children) {
    // (position in child vars, value required by the parent)
    std::vector<std::pair<std::size_t, std::uint32_t>> need;
    for (Vertex u : child->key_vars) {
      auto it = std::lower_bound(vars.begin(), vars.end(), u);
      if (it == vars.end() || *it != u) continue;
      auto cj = std::lower_bound(child->vars.begin(), child->vars.end(), u);
      need.emplace_back(static_cast<std::size_t>(cj - child->vars.begin()),
                        values[static_cast<std::size_t>(it - vars.begin())]);
    }
    std::optional<std::uint32_t> found;
    for (std::size_t e = 0; e < child->entries.size() && !found; ++e) {
      bool ok = true;
      for (auto [cj, val] : need)
        if (child->entries[e].values[cj] != val) {
          ok = false;
          break;
        }
      if (ok) found = static_cast<std::uint32_t>(e);
    }
    if (!found) return std::nullopt;
    back.push_back(*found);
  }
  return back;
}

Orbit extract_witness(const DpSolution& sol, const Network& net, const TreeDecomposition& d) {
  if (!sol.accepted()) throw ArgumentError("no witness: the root table is empty");
  const std::size_t n = net.n();
  std::vector<std::uint32_t> assign(n, detail::kNone);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{sol.root, 0}};
  while (!stack.empty()) {
    const auto [w, e] = stack.back();
    stack.pop_back();
    const DpTable& tab = sol.tables.at(w);
    const DpEntry& entry = tab.entries.at(e);
    for (std::size_t j = 0; j < tab.vars.size(); ++j) {
      const Vertex u = tab.vars[j];
      if (assign[u] == detail::kNone) {
        assign[u] = entry.values[j];
      } else if (assign[u] != entry.values[j] &&
                 std::binary_search(tab.key_vars.begin(), tab.key_vars.end(), u)) {
        throw InternalError("witness gluing: bag " + std::to_string(w) + " disagrees on node " +
                            std::to_string(u));
      }
    }
    for (std::size_t k = tab.children.size(); k-- > 0;) stack.emplace_back(tab.children[k], entry.back[k]);
  }
  (void)d;
  Orbit o;
  o.steps.assign(sol.horizon + 1, Configuration(n, 0));
  for (Vertex v = 0; v < n; ++v) {
    if (assign[v] == detail::kNone) throw InternalError("witness gluing: node " + std::to_string(v) + " unassigned");
    const auto seq = sol.domains[v][assign[v]].to_sequence();
    for (std::size_t s = 0; s <= sol.horizon; ++s) o.steps[s][v] = seq[s];
  }
  return o;
}

namespace {

void verify_witness(const Network& net, const Specification& spec, const Orbit& o) {
  for (std::size_t s = 0; s + 1 < o.steps.size(); ++s)
    if (!is_successor(net, o.steps[s], o.steps[s + 1]))
      throw InternalError("extracted witness fails to replay at step " + std::to_string(s));
  for (Vertex v = 0; v < net.n(); ++v) {
    const auto seq = o.node_sequence(v);
    if (!spec.admits_sequence(v, seq))
      throw InternalError("extracted witness violates the specification at node " + std::to_string(v));
  }
}

// Repeats an idle step until the orbit has the requested horizon.
Orbit pump(const Orbit& o, std::size_t horizon) {
  if (o.horizon() >= horizon) return o;
  for (std::size_t s = 0; s + 1 < o.steps.size(); ++s) {
    if (o.steps[s] == o.steps[s + 1]) {
      Orbit out;
      out.steps.assign(o.steps.begin(), o.steps.begin() + static_cast<std::ptrdiff_t>(s));
      out.steps.insert(out.steps.end(), horizon - o.horizon() + 1, o.steps[s]);
      out.steps.insert(out.steps.end(), o.steps.begin() + static_cast<std::ptrdiff_t>(s + 1), o.steps.end());
      return out;
    }
  }
  throw InternalError("compressed witness has no idle step to repeat");
}

}  // namespace

Verdict check_spec(const Network& net, const Specification& spec, const TreeDecomposition& d,
                   const SolverOptions& opts) {
  const std::size_t t = spec.horizon();
  const std::size_t t0 = compressed_horizon(net);
  const bool compress = opts.compress_horizon && spec.constraint_only() && t > t0;
  Specification solved(compress ? t0 : t);
  if (compress) {
    for (const auto& [v, ns] : spec.nodes()) solved.node(v) = ns;
  } else {
    solved = spec;
  }
  DpSolution sol = solve_tables(net, solved, d, opts);
  Verdict verdict;
  verdict.stats = sol.stats;
  verdict.stats.compressed = compress;
  verdict.satisfiable = sol.accepted();
  if (verdict.satisfiable) {
    Orbit o = extract_witness(sol, net, d);
    if (compress) o = pump(o, t);
    verify_witness(net, spec, o);
    verdict.witness = std::move(o);
  }
  return verdict;
}

Verdict check_spec(const Network& net, const Specification& spec, const SolverOptions& opts) {
  return check_spec(net, spec, binarize(heuristic_decomposition(net.graph())), opts);
}

}  // namespace fanspec
