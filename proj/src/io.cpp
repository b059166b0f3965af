#include "fanspec/io.hpp"

#include <algorithm>
#include <cmath>

#include "internal/json_io.hpp"

namespace fanspec {

namespace jio {

void Where::parse_fail(const std::string& msg) const { throw ParseError(describe() + msg); }
void Where::fail(const std::string& msg) const { throw ValidationError(describe() + msg); }
std::string Where::describe() const { return origin_ + (path_.empty() ? ": " : ": field '" + path_ + "': "); }

namespace {

void pretty_into(const json& j, std::size_t indent, std::size_t width, std::string& out) {
  const std::string flat = j.dump();
  const bool scalars = std::none_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); });
  if (!j.is_structured() || scalars || indent + flat.size() <= width) {
    out += flat;
    return;
  }
  const std::string pad(indent + 2, ' ');
  out += j.is_object() ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (j.is_object()) out += json(it.key()).dump() + ": ";
    pretty_into(*it, indent + 2, width, out);
  }
  out += "\n" + std::string(indent, ' ') + (j.is_object() ? "}" : "]");
}

}  // namespace

std::string pretty(const json& j, std::size_t width) {
  std::string out;
  pretty_into(j, 0, width, out);
  return out + "\n";
}

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    if (auto p = msg.find(": "); p != std::string::npos && msg.rfind("parse error", 0) == 0) msg = msg.substr(p + 2);
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

const json& field(const json& j, const std::string& key, const Where& w) {
  if (!j.is_object()) w.parse_fail("expected an object");
  auto it = j.find(key);
  if (it == j.end()) w.at(key).parse_fail("missing");
  return *it;
}

std::size_t as_index(const json& j, const Where& w) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) w.parse_fail("expected a non-negative integer");
  return j.get<std::size_t>();
}

std::size_t node_key(const std::string& key, std::size_t n, const Where& w) {
  if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      key.size() > 9)
    w.parse_fail("node key '" + key + "' is not a node id");
  const std::size_t v = std::stoul(key);
  if (v >= n) w.fail("unknown node " + key + " (the network has " + std::to_string(n) + " nodes)");
  return v;
}

namespace {

const json* optional_field(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void require_array(const json& j, const Where& w) {
  if (!j.is_array()) w.parse_fail("expected an array");
}

std::vector<State> decode_row(std::size_t row, std::size_t q, std::size_t width) {
  std::vector<State> scope(width);
  for (std::size_t i = width; i-- > 0;) {
    scope[i] = static_cast<State>(row % q);
    row /= q;
  }
  return scope;
}

StandardRule standard_rule_from(const std::string& name, const Where& w) {
  if (name == "or") return StandardRule::Or;
  if (name == "and") return StandardRule::And;
  if (name == "identity") return StandardRule::Identity;
  if (name == "threshold") return StandardRule::Threshold;
  if (name == "constant-one") return StandardRule::ConstantOne;
  w.parse_fail("unknown standard rule '" + name + "'");
}

}  // namespace

json graph_to(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.n()}, {"edges", std::move(edges)}};
}

Graph graph_from(const json& j, const Where& w) {
  if (j.is_object() && j.contains("grid")) {
    const auto& gr = j["grid"];
    if (gr.is_array() && gr.size() == 2)
      return Graph::grid(as_index(gr[0], w.at("grid").idx(0)), as_index(gr[1], w.at("grid").idx(1)));
    const std::size_t m = as_index(gr, w.at("grid"));
    return Graph::grid(m, m);
  }
  const std::size_t n = as_index(field(j, "n", w), w.at("n"));
  const json& e = field(j, "edges", w);
  require_array(e, w.at("edges"));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Where we = w.at("edges").idx(i);
    if (!e[i].is_array() || e[i].size() != 2) we.parse_fail("expected [u, v]");
    const std::size_t u = as_index(e[i][0], we), v = as_index(e[i][1], we);
    if (u >= n || v >= n) we.fail("edge endpoint outside 0.." + std::to_string(n ? n - 1 : 0));
    if (u == v) we.fail("self-loops are not allowed");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const Error& err) {
    w.fail(err.what());
  }
}

json state_to(State s, const Alphabet& a) { return a.name(s); }

State state_from(const json& j, const Alphabet& a, const Where& w) {
  if (j.is_string()) {
    auto s = a.find(j.get<std::string>());
    if (!s) w.fail("unknown state '" + j.get<std::string>() + "'");
    return *s;
  }
  if (j.is_number_integer()) {
    const std::size_t s = as_index(j, w);
    if (s >= a.size()) w.fail("state index " + std::to_string(s) + " is outside the alphabet");
    return static_cast<State>(s);
  }
  w.parse_fail("expected a state name");
}

StateSet states_from(const json& j, const Alphabet& a, const Where& w) {
  require_array(j, w);
  StateSet out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(state_from(j[i], a, w.idx(i)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json network_to(const Network& net) {
  const std::string& gen = net.generator();
  if (!gen.empty() && gen.front() == '{') return {{"generator", json::parse(gen)}};
  const Alphabet& a = net.alphabet();
  if (!a.has_closure()) throw ValidationError("network alphabet has no explicit order and no generator to rebuild it");
  json j;
  j["alphabet"] = a.names();
  json order = json::array();
  for (auto [lo, hi] : a.covering_pairs()) order.push_back({a.name(lo), a.name(hi)});
  j["order"] = std::move(order);
  j["n"] = net.n();
  j["edges"] = graph_to(net.graph())["edges"];
  if (net.set_rule() && net.set_rule()->tabulated()) {
    json rows = json::array();
    for (const auto& [key, out] : net.set_rule()->table()) {
      json set = json::array();
      for (State s : key.second) set.push_back(a.name(s));
      rows.push_back({{"state", a.name(key.first)}, {"set", std::move(set)}, {"out", a.name(out)}});
    }
    j["set_rule"] = std::move(rows);
    return j;
  }
  if (!net.materialized()) throw ValidationError("network rule is a function without a serializable form");
  json rules = json::object();
  const std::size_t q = a.size();
  for (Vertex v = 0; v < net.n(); ++v) {
    const auto& nb = net.graph().closed_neighborhood(v);
    const RuleTable& t = net.table(v);
    json rows = json::array();
    for (std::size_t r = 0; r < t.masks.size(); ++r) {
      if (!t.defined[r]) continue;
      const auto scope = decode_row(r, q, nb.size());
      json input = json::object();
      for (std::size_t i = 0; i < nb.size(); ++i) input[std::to_string(nb[i])] = a.name(scope[i]);
      json out = json::array();
      for (State s = 0; s < q; ++s)
        if ((t.masks[r] >> s) & 1) out.push_back(a.name(s));
      rows.push_back({{"input", std::move(input)}, {"out", std::move(out)}});
    }
    rules[std::to_string(v)] = std::move(rows);
  }
  j["rules"] = std::move(rules);
  return j;
}

namespace {

void check_network(const Network& net, const Where& w) {
  const ValidationReport rep = validate_network(net);
  if (!rep.ok()) w.fail(rep.summary(3));
}

Network tables_from(const json& rules, const Graph& g, const Alphabet& a, const Where& w) {
  if (!rules.is_object()) w.parse_fail("expected an object keyed by node id");
  const std::size_t q = a.size();
  if (q > 64) w.fail("explicit rule tables support at most 64 states");
  std::vector<RuleTable> tables(g.n());
  std::vector<char> seen_node(g.n(), 0);
  for (auto it = rules.begin(); it != rules.end(); ++it) {
    const Where wn = w.at(it.key());
    const std::size_t v = node_key(it.key(), g.n(), wn);
    seen_node[v] = 1;
    const auto& nb = g.closed_neighborhood(static_cast<Vertex>(v));
    std::size_t rows = 1;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      rows *= q;
      if (rows > (std::size_t{1} << 20)) wn.fail("rule table would exceed 2^20 rows");
    }
    RuleTable& t = tables[v];
    t.masks.assign(rows, 0);
    t.defined.assign(rows, 0);
    require_array(it.value(), wn);
    for (std::size_t r = 0; r < it.value().size(); ++r) {
      const Where wr = wn.idx(r);
      const json& row = it.value()[r];
      const json& input = field(row, "input", wr);
      if (!input.is_object()) wr.at("input").parse_fail("expected an object keyed by node id");
      std::size_t index = 0;
      for (Vertex u : nb) {
        auto f = input.find(std::to_string(u));
        if (f == input.end()) wr.at("input").fail("missing node " + std::to_string(u) + " of N[" + std::to_string(v) + "]");
        index = index * q + state_from(*f, a, wr.at("input").at(std::to_string(u)));
      }
      if (input.size() != nb.size()) wr.at("input").fail("names nodes outside N[" + std::to_string(v) + "]");
      if (t.defined[index]) wr.fail("duplicate row");
      const StateSet out = states_from(field(row, "out", wr), a, wr.at("out"));
      if (out.empty()) wr.at("out").fail("a row needs at least one successor");
      t.defined[index] = 1;
      for (State s : out) t.masks[index] |= std::uint64_t{1} << s;
    }
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (!seen_node[v]) w.fail("no rule for node " + std::to_string(v));
  return Network::from_tables(g, a, std::move(tables));
}

}  // namespace

Network network_from(const json& j, const Where& w) {
  if (!j.is_object()) w.parse_fail("expected an object");
  if (const json* gen = optional_field(j, "generator")) return network_from_generator(*gen, w.at("generator"));
  json graph = {{"n", field(j, "n", w)}, {"edges", j.value("edges", json::array())}};
  const Graph g = graph_from(graph, w);
  if (const json* st = optional_field(j, "standard")) {
    const Where ws = w.at("standard");
    std::string name;
    unsigned theta = 1;
    if (st->is_string()) {
      name = st->get<std::string>();
    } else {
      name = field(*st, "rule", ws).get<std::string>();
      if (st->contains("theta")) theta = static_cast<unsigned>(as_index((*st)["theta"], ws.at("theta")));
    }
    Network net = standard_network(g, standard_rule_from(name, ws), theta);
    check_network(net, w);
    return net;
  }
  const json& names = field(j, "alphabet", w);
  require_array(names, w.at("alphabet"));
  std::vector<std::string> states;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!names[i].is_string()) w.at("alphabet").idx(i).parse_fail("expected a state name");
    states.push_back(names[i].get<std::string>());
  }
  if (states.empty()) w.at("alphabet").fail("the alphabet is empty");
  std::vector<std::pair<State, State>> order;
  Alphabet probe(states, {});
  if (const json* ord = optional_field(j, "order")) {
    require_array(*ord, w.at("order"));
    for (std::size_t i = 0; i < ord->size(); ++i) {
      const Where wo = w.at("order").idx(i);
      if (!(*ord)[i].is_array() || (*ord)[i].size() != 2) wo.parse_fail("expected [lower, higher]");
      order.emplace_back(state_from((*ord)[i][0], probe, wo), state_from((*ord)[i][1], probe, wo));
    }
  }
  Alphabet a;
  try {
    a = Alphabet(states, order);
  } catch (const Error& e) {
    w.at("order").fail(e.what());
  }
  const bool has_rules = j.contains("rules"), has_set = j.contains("set_rule");
  if (has_rules == has_set) w.fail("give exactly one of 'rules', 'set_rule', 'standard' or 'generator'");
  Network net;
  if (has_rules) {
    net = tables_from(j["rules"], g, a, w.at("rules"));
  } else {
    const Where wr = w.at("set_rule");
    require_array(j["set_rule"], wr);
    SetRule rho;
    for (std::size_t i = 0; i < j["set_rule"].size(); ++i) {
      const json& row = j["set_rule"][i];
      const Where wi = wr.idx(i);
      rho.add(state_from(field(row, "state", wi), a, wi.at("state")), states_from(field(row, "set", wi), a, wi.at("set")),
              state_from(field(row, "out", wi), a, wi.at("out")));
    }
    try {
      net = expand_set_rule(rho, g, a);
    } catch (const ResourceError&) {
      throw;
    } catch (const Error& e) {
      wr.fail(e.what());
    }
  }
  check_network(net, w);
  return net;
}

Network network_from_generator(const json& g, const Where& w) {
  const std::string kind = field(g, "kind", w).get<std::string>();
  Network net;
  if (kind == "standard") {
    const Graph graph = graph_from(field(g, "graph", w), w.at("graph"));
    const unsigned theta = g.contains("theta") ? static_cast<unsigned>(as_index(g["theta"], w.at("theta"))) : 1;
    net = standard_network(graph, standard_rule_from(field(g, "rule", w).get<std::string>(), w.at("rule")), theta);
  } else if (kind == "dominating-set") {
    const Graph graph = graph_from(field(g, "graph", w), w.at("graph"));
    net = dominating_set_gadget(graph, as_index(field(g, "k", w), w.at("k"))).net;
  } else if (kind == "sat-nilpotency" || kind == "circuit-predecessor" || kind == "circuit-async" ||
             kind == "routed-prediction") {
    const Circuit c = circuit_from(field(g, "circuit", w), w.at("circuit"));
    Graph host;
    Bramble b;
    if (g.contains("host")) {
      host = graph_from(g["host"], w.at("host"));
      if (g.contains("bramble")) {
        b = bramble_from(g["bramble"], w.at("bramble"));
      } else if (g["host"].contains("grid")) {
        b = grid_bramble(static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(host.n())))));
      } else {
        w.at("bramble").parse_fail("missing");
      }
    } else {
      auto h = grid_host_for(c);
      host = std::move(h.graph);
      b = std::move(h.bramble);
    }
    if (kind == "sat-nilpotency") {
      net = sat_nilpotency_gadget(c, host, b).net;
    } else if (kind == "circuit-predecessor") {
      net = circuit_predecessor_gadget(c, host, b).g.net;
    } else if (kind == "circuit-async") {
      net = circuit_async_gadget(c, host, b).g.net;
    } else {
      net = routed_prediction_gadget(c, host, b, std::vector<bool>(c.input_gates().size(), false), 0).g.net;
    }
  } else {
    w.at("kind").parse_fail("unknown generator '" + kind + "'");
  }
  net.set_generator(g.dump());
  return net;
}

json config_to(const Configuration& c, const Alphabet& a) {
  json j = json::array();
  for (State s : c) j.push_back(a.name(s));
  return j;
}

Configuration config_from(const json& j, const Network& net, const Where& w) {
  require_array(j, w);
  if (j.size() != net.n())
    w.fail("configuration has " + std::to_string(j.size()) + " states, the network " + std::to_string(net.n()) + " nodes");
  Configuration c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(state_from(j[i], net.alphabet(), w.idx(i)));
  return c;
}

json trace_to(const RleTrace& t, const Alphabet& a) {
  json j = json::array();
  for (const Run& r : t.runs()) j.push_back({a.name(r.state), r.length});
  return j;
}

RleTrace trace_from(const json& j, const Alphabet& a, const Where& w) {
  require_array(j, w);
  std::vector<Run> runs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Where wi = w.idx(i);
    if (!j[i].is_array() || j[i].size() != 2) wi.parse_fail("expected [state, length]");
    const State s = state_from(j[i][0], a, wi.idx(0));
    const std::size_t len = as_index(j[i][1], wi.idx(1));
    if (len == 0) wi.fail("run length must be positive");
    if (!runs.empty() && runs.back().state == s)
      runs.back().length += len;
    else
      runs.push_back({s, len});
  }
  if (runs.empty()) w.fail("a trace needs at least one run");
  return RleTrace(std::move(runs));
}

json spec_to(const Specification& s, const Alphabet& a) {
  json j;
  j["t"] = s.horizon();
  json nodes = json::object(), cons = json::object();
  for (const auto& [v, ns] : s.nodes()) {
    if (ns.traces) {
      json list = json::array();
      for (const auto& [key, tr] : *ns.traces) list.push_back(trace_to(tr, a));
      nodes[std::to_string(v)] = std::move(list);
    }
    json c = json::object();
    auto set = [&](const StateSet& ss) {
      json arr = json::array();
      for (State q : ss) arr.push_back(a.name(q));
      return arr;
    };
    if (ns.initial) c["initial"] = set(*ns.initial);
    if (ns.final) c["final"] = set(*ns.final);
    if (!ns.avoid.empty()) c["avoid"] = set(ns.avoid);
    if (!c.empty()) cons[std::to_string(v)] = std::move(c);
  }
  j["nodes"] = std::move(nodes);
  if (!cons.empty()) j["constraints"] = std::move(cons);
  j["default"] = "any";
  return j;
}

Specification spec_from(const json& j, const Network& net, const Where& w, std::optional<std::size_t> t) {
  if (!j.is_object()) w.parse_fail("expected an object");
  std::size_t horizon = 0;
  if (j.contains("t")) {
    horizon = as_index(j["t"], w.at("t"));
    if (t && *t != horizon)
      w.at("t").fail("horizon " + std::to_string(horizon) + " disagrees with the requested " + std::to_string(*t));
  } else if (t) {
    horizon = *t;
  } else {
    w.at("t").parse_fail("missing (pass a horizon explicitly)");
  }
  if (j.contains("default") && j["default"] != "any") w.at("default").fail("only \"any\" is supported");
  Specification spec(horizon);
  const Alphabet& a = net.alphabet();
  if (j.contains("nodes")) {
    const json& nodes = j["nodes"];
    if (!nodes.is_object()) w.at("nodes").parse_fail("expected an object keyed by node id");
    for (auto it = nodes.begin(); it != nodes.end(); ++it) {
      const Where wn = w.at("nodes").at(it.key());
      const auto v = static_cast<Vertex>(node_key(it.key(), net.n(), wn));
      require_array(it.value(), wn);
      spec.forbid_all(v);
      for (std::size_t i = 0; i < it.value().size(); ++i) {
        const RleTrace tr = trace_from(it.value()[i], a, wn.idx(i));
        if (tr.length() != horizon + 1)
          wn.idx(i).fail("trace has length " + std::to_string(tr.length()) + ", expected " + std::to_string(horizon + 1));
        if (!tr.monotone(a)) wn.idx(i).fail("trace is not non-decreasing");
        spec.add_trace(v, tr);
      }
    }
  }
  if (j.contains("constraints")) {
    const json& cons = j["constraints"];
    if (!cons.is_object()) w.at("constraints").parse_fail("expected an object keyed by node id");
    for (auto it = cons.begin(); it != cons.end(); ++it) {
      const Where wn = w.at("constraints").at(it.key());
      const auto v = static_cast<Vertex>(node_key(it.key(), net.n(), wn));
      if (!it.value().is_object()) wn.parse_fail("expected an object");
      for (auto f = it.value().begin(); f != it.value().end(); ++f) {
        const StateSet ss = states_from(f.value(), a, wn.at(f.key()));
        if (f.key() == "initial")
          spec.set_initial(v, ss);
        else if (f.key() == "final")
          spec.set_final(v, ss);
        else if (f.key() == "avoid")
          spec.set_avoid(v, ss);
        else
          wn.at(f.key()).parse_fail("unknown constraint (use initial, final or avoid)");
      }
    }
  }
  try {
    spec.validate(net);
  } catch (const Error& e) {
    w.fail(e.what());
  }
  return spec;
}

json decomposition_to(const TreeDecomposition& d) {
  json j;
  j["bags"] = d.bags;
  json edges = json::array();
  for (auto [a, b] : d.edges) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  if (d.root) j["root"] = *d.root;
  return j;
}

TreeDecomposition decomposition_from(const json& j, const Where& w) {
  TreeDecomposition d;
  const json& bags = field(j, "bags", w);
  require_array(bags, w.at("bags"));
  for (std::size_t i = 0; i < bags.size(); ++i) {
    require_array(bags[i], w.at("bags").idx(i));
    std::vector<Vertex> bag;
    for (std::size_t k = 0; k < bags[i].size(); ++k)
      bag.push_back(static_cast<Vertex>(as_index(bags[i][k], w.at("bags").idx(i).idx(k))));
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    d.bags.push_back(std::move(bag));
  }
  if (j.contains("edges")) {
    require_array(j["edges"], w.at("edges"));
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const Where we = w.at("edges").idx(i);
      const json& e = j["edges"][i];
      if (!e.is_array() || e.size() != 2) we.parse_fail("expected [i, j]");
      d.edges.emplace_back(as_index(e[0], we), as_index(e[1], we));
    }
  }
  if (j.contains("root")) d.root = as_index(j["root"], w.at("root"));
  return d;
}

json bramble_to(const Bramble& b) { return {{"elements", b.elements}}; }

Bramble bramble_from(const json& j, const Where& w) {
  Bramble b;
  const json& e = field(j, "elements", w);
  require_array(e, w.at("elements"));
  for (std::size_t i = 0; i < e.size(); ++i) {
    require_array(e[i], w.at("elements").idx(i));
    std::vector<Vertex> el;
    for (std::size_t k = 0; k < e[i].size(); ++k)
      el.push_back(static_cast<Vertex>(as_index(e[i][k], w.at("elements").idx(i).idx(k))));
    std::sort(el.begin(), el.end());
    el.erase(std::unique(el.begin(), el.end()), el.end());
    b.elements.push_back(std::move(el));
  }
  return b;
}

json circuit_to(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) gates.push_back({{"type", gate_type_name(g.type)}, {"inputs", g.inputs}});
  return {{"gates", std::move(gates)}};
}

Circuit circuit_from(const json& j, const Where& w) {
  Circuit c;
  const json& gates = field(j, "gates", w);
  require_array(gates, w.at("gates"));
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Where wg = w.at("gates").idx(i);
    Gate g;
    const json& type = field(gates[i], "type", wg);
    if (!type.is_string()) wg.at("type").parse_fail("expected a gate type name");
    try {
      g.type = gate_type_from_name(type.get<std::string>());
    } catch (const ParseError& e) {
      wg.at("type").parse_fail(e.what());
    }
    if (gates[i].contains("inputs")) {
      require_array(gates[i]["inputs"], wg.at("inputs"));
      for (std::size_t k = 0; k < gates[i]["inputs"].size(); ++k)
        g.inputs.push_back(as_index(gates[i]["inputs"][k], wg.at("inputs").idx(k)));
    }
    c.gates.push_back(std::move(g));
  }
  try {
    validate_circuit(c);
  } catch (const Error& e) {
    w.fail(e.what());
  }
  return c;
}

json routing_to(const RoutedEmbedding& r) {
  json paths = json::array();
  for (const auto& p : r.paths) paths.push_back(p);
  std::size_t max_load = 0;
  for (std::size_t l : r.load) max_load = std::max(max_load, l);
  return {{"mu", r.mu}, {"paths", std::move(paths)}, {"load", r.load}, {"max_load", max_load},
          {"components", r.components()}};
}

json orbit_to(const Orbit& o, const Alphabet& a) {
  json nodes = json::object();
  const std::size_t n = o.steps.empty() ? 0 : o.steps.front().size();
  for (Vertex v = 0; v < n; ++v) {
    const auto seq = o.node_sequence(v);
    nodes[std::to_string(v)] = trace_to(RleTrace::from_sequence(seq), a);
  }
  return {{"t", o.horizon()}, {"nodes", std::move(nodes)}};
}

Orbit orbit_from(const json& j, const Network& net, const Where& w) {
  const std::size_t t = as_index(field(j, "t", w), w.at("t"));
  const json& nodes = field(j, "nodes", w);
  Orbit o;
  o.steps.assign(t + 1, Configuration(net.n(), 0));
  std::vector<char> seen(net.n(), 0);
  for (auto it = nodes.begin(); it != nodes.end(); ++it) {
    const Where wn = w.at("nodes").at(it.key());
    const auto v = static_cast<Vertex>(node_key(it.key(), net.n(), wn));
    const RleTrace tr = trace_from(it.value(), net.alphabet(), wn);
    if (tr.length() != t + 1) wn.fail("trace length differs from t + 1");
    const auto seq = tr.to_sequence();
    for (std::size_t s = 0; s <= t; ++s) o.steps[s][v] = seq[s];
    seen[v] = 1;
  }
  for (Vertex v = 0; v < net.n(); ++v)
    if (!seen[v]) w.at("nodes").fail("missing node " + std::to_string(v));
  return o;
}

json stats_to(const SolverStats& s) {
  return {{"bags", s.bags},         {"levels", s.levels},   {"max_table", s.max_table},
          {"max_domain", s.max_domain}, {"horizon", s.horizon}, {"compressed", s.compressed},
          {"work", s.work}};
}

json verdict_to(const Verdict& v, const Alphabet& a) {
  json j;
  j["satisfiable"] = v.satisfiable;
  j["witness"] = v.witness ? orbit_to(*v.witness, a) : json(nullptr);
  j["stats"] = stats_to(v.stats);
  return j;
}

}  // namespace jio

// ------------------------------------------------------------- string API

namespace {
std::string dump(const jio::json& j) { return jio::pretty(j); }
}  // namespace

Network read_network(const std::string& text, const std::string& origin) {
  return jio::network_from(jio::parse_text(text, origin), jio::Where(origin));
}
std::string write_network(const Network& net) { return dump(jio::network_to(net)); }

Configuration read_configuration(const std::string& text, const Network& net, const std::string& origin) {
  return jio::config_from(jio::parse_text(text, origin), net, jio::Where(origin));
}
std::string write_configuration(const Configuration& c, const Network& net) {
  return dump(jio::config_to(c, net.alphabet()));
}

Specification read_spec(const std::string& text, const Network& net, const std::string& origin,
                        std::optional<std::size_t> horizon) {
  return jio::spec_from(jio::parse_text(text, origin), net, jio::Where(origin), horizon);
}
std::string write_spec(const Specification& s, const Network& net) { return dump(jio::spec_to(s, net.alphabet())); }

TreeDecomposition read_decomposition(const std::string& text, const std::string& origin) {
  return jio::decomposition_from(jio::parse_text(text, origin), jio::Where(origin));
}
std::string write_decomposition(const TreeDecomposition& d) { return dump(jio::decomposition_to(d)); }

Graph read_graph(const std::string& text, const std::string& origin) {
  return jio::graph_from(jio::parse_text(text, origin), jio::Where(origin));
}
std::string write_graph(const Graph& g) { return dump(jio::graph_to(g)); }

Bramble read_bramble(const std::string& text, const std::string& origin) {
  return jio::bramble_from(jio::parse_text(text, origin), jio::Where(origin));
}
std::string write_bramble(const Bramble& b) { return dump(jio::bramble_to(b)); }

Circuit read_circuit(const std::string& text, const std::string& origin) {
  return jio::circuit_from(jio::parse_text(text, origin), jio::Where(origin));
}
std::string write_circuit(const Circuit& c) { return dump(jio::circuit_to(c)); }

std::string write_orbit(const Orbit& o, const Network& net) { return dump(jio::orbit_to(o, net.alphabet())); }
Orbit read_orbit(const std::string& text, const Network& net, const std::string& origin) {
  return jio::orbit_from(jio::parse_text(text, origin), net, jio::Where(origin));
}

std::string write_verdict(const Verdict& v, const Network& net) { return dump(jio::verdict_to(v, net.alphabet())); }
std::optional<Orbit> read_verdict_witness(const std::string& text, const Network& net, const std::string& origin) {
  const auto j = jio::parse_text(text, origin);
  const jio::Where w(origin);
  const auto& wit = jio::field(j, "witness", w);
  if (wit.is_null()) return std::nullopt;
  return jio::orbit_from(wit, net, w.at("witness"));
}

}  // namespace fanspec
