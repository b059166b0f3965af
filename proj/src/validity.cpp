#include "fanspec/validity.hpp"

#include <algorithm>

#include "internal/bag_search.hpp"

namespace fanspec {

namespace {

bool well_formed(const Network& net, const std::map<Vertex, RleTrace>& traces, std::size_t horizon) {
  for (const auto& [v, tr] : traces) {
    if (v >= net.n()) return false;
    if (tr.length() != horizon + 1 || !tr.monotone(net.alphabet())) return false;
  }
  return true;
}

// Local check of `center` against an encoding that contains N[center].
bool rows_valid(const Network& net, Vertex center, const SequenceEncoding& e) {
  const auto& scope_vertices = net.graph().closed_neighborhood(center);
  const SequenceEncoding r = restrict(e, scope_vertices);
  const auto self = static_cast<std::size_t>(
      std::lower_bound(r.vertices.begin(), r.vertices.end(), center) - r.vertices.begin());
  for (std::size_t row = 0; row < r.times.size(); ++row) {
    const std::size_t end = row + 1 < r.times.size() ? r.times[row + 1] : r.horizon + 1;
    const auto& scope = r.states[row];
    // inside a constant block the center must be allowed to stay
    if (end - r.times[row] >= 2 && !net.admits(center, scope, scope[self])) return false;
    if (row + 1 < r.times.size() && !net.admits(center, scope, r.states[row + 1][self])) return false;
  }
  return true;
}

SequenceEncoding encode_map(const std::map<Vertex, RleTrace>& traces) {
  std::vector<Vertex> vs;
  std::vector<RleTrace> trs;
  for (const auto& [v, tr] : traces) {
    vs.push_back(v);
    trs.push_back(tr);
  }
  return encode_traces(vs, trs);
}

}  // namespace

std::vector<Vertex> closed_neighborhood(const Graph& g, const std::vector<Vertex>& nodes) {
  std::vector<Vertex> out;
  for (Vertex v : nodes) {
    const auto& nb = g.closed_neighborhood(v);
    out.insert(out.end(), nb.begin(), nb.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_locally_valid(const Network& net, const Specification& spec, const LocalTrace& lt) {
  if (lt.center >= net.n()) return false;
  const auto& scope = net.graph().closed_neighborhood(lt.center);
  if (lt.traces.size() != scope.size()) return false;
  for (Vertex u : scope)
    if (!lt.traces.count(u)) return false;
  if (!well_formed(net, lt.traces, lt.horizon)) return false;
  if (spec.horizon() != lt.horizon && !spec.nodes().empty()) return false;
  if (!spec.admits(lt.center, lt.traces.at(lt.center)) && spec.find(lt.center)) return false;
  return rows_valid(net, lt.center, encode_map(lt.traces));
}

bool is_partially_valid(const Network& net, const Specification& spec, const PartialTrace& pt) {
  for (Vertex v : pt.nodes)
    if (v >= net.n()) return false;
  const auto domain = closed_neighborhood(net.graph(), pt.nodes);
  if (pt.traces.size() != domain.size()) return false;
  for (Vertex u : domain)
    if (!pt.traces.count(u)) return false;
  if (!well_formed(net, pt.traces, pt.horizon)) return false;
  if (pt.nodes.empty()) return true;
  if (spec.horizon() != pt.horizon && !spec.nodes().empty()) return false;
  const SequenceEncoding e = encode_map(pt.traces);
  for (Vertex v : pt.nodes) {
    if (spec.find(v) && !spec.admits(v, pt.traces.at(v))) return false;
    if (!rows_valid(net, v, e)) return false;
  }
  return true;
}

void enumerate_pvt(const Network& net, const Specification& spec, const std::vector<Vertex>& nodes,
                   std::size_t horizon, std::size_t cap, const std::function<bool(const PartialTrace&)>& visit) {
  if (spec.horizon() != horizon && !spec.nodes().empty())
    throw ArgumentError("specification horizon " + std::to_string(spec.horizon()) + " differs from " +
                        std::to_string(horizon));
  std::vector<Vertex> centers = nodes;
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  for (Vertex v : centers)
    if (v >= net.n()) throw ArgumentError("vertex " + std::to_string(v) + " is not a node of the network");

  detail::BagProblem p;
  p.vars = closed_neighborhood(net.graph(), centers);
  p.centers = centers;
  p.key = p.vars;
  std::vector<detail::Domain> store;
  store.reserve(p.vars.size());
  std::vector<const detail::Domain*> domains(net.n(), nullptr);
  for (Vertex u : p.vars) {
    const bool center = std::binary_search(centers.begin(), centers.end(), u);
    store.push_back(detail::build_domain(net, spec, u, horizon, center, cap));
    domains[u] = &store.back();
  }
  detail::SearchLimits lim;
  lim.cap = cap;
  const auto res = detail::search_bag(net, domains, p, lim);
  for (const auto& row : res.values) {
    PartialTrace pt;
    pt.nodes = centers;
    pt.horizon = horizon;
    for (std::size_t j = 0; j < p.vars.size(); ++j) pt.traces.emplace(p.vars[j], domains[p.vars[j]]->traces[row[j]]);
    if (!visit(pt)) return;
  }
}

std::vector<PartialTrace> enumerate_pvt(const Network& net, const Specification& spec,
                                        const std::vector<Vertex>& nodes, std::size_t horizon, std::size_t cap) {
  std::vector<PartialTrace> out;
  enumerate_pvt(net, spec, nodes, horizon, cap, [&](const PartialTrace& pt) {
    out.push_back(pt);
    return true;
  });
  return out;
}

}  // namespace fanspec
