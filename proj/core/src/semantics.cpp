#include "abekit/semantics.hpp"

#include <algorithm>

#include "abekit/errors.hpp"

namespace abekit {

std::vector<NcPolynomial> expand_gates(const GateStore& store, const std::vector<GateId>& roots,
                                       const ExpansionLimits& limits) {
  const auto live = reachable(store, roots);
  std::vector<NcPolynomial> poly(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (!live[i]) continue;
    const Gate& g = store[static_cast<GateId>(i)];
    switch (g.op) {
      case Op::Const:
        poly[i] = NcPolynomial::constant(store.value(g));
        break;
      case Op::Var:
        poly[i] = NcPolynomial::variable(store.var(g));
        break;
      case Op::Add:
        poly[i] = poly[g.lhs] + poly[g.rhs];
        break;
      case Op::Mul:
        if (poly[g.lhs].degree() + poly[g.rhs].degree() > limits.max_degree) {
          throw GuardExceeded("expansion exceeded degree " + std::to_string(limits.max_degree));
        }
        poly[i] = poly[g.lhs] * poly[g.rhs];
        break;
    }
    enforce_limits(poly[i], limits);
  }
  return poly;
}

NcPolynomial expand(const Formula& f, const ExpansionLimits& limits) {
  return std::move(expand_gates(f.store, {f.root}, limits)[f.root]);
}

NcPolynomial expand(const Circuit& c, const ExpansionLimits& limits) {
  if (c.outputs.empty()) return {};
  const auto poly = expand_gates(c.store, c.outputs, limits);
  NcPolynomial sum;
  for (GateId o : c.outputs) sum += poly[o];
  enforce_limits(sum, limits);
  return sum;
}

NcPolynomial expand(const FormulaFamily& fam, const ExpansionLimits& limits) {
  NcPolynomial sum;
  for (const auto& [i, comp] : fam.components) sum += expand(comp, limits);
  enforce_limits(sum, limits);
  return sum;
}

NcPolynomial expand(const Abp& a, const ExpansionLimits& limits) {
  const auto order = a.topological_order();
  const int n = a.vertex_count();
  std::vector<std::vector<const AbpEdge*>> in(n);
  for (const auto& e : a.edges()) in[e.to].push_back(&e);
  std::vector<NcPolynomial> at(n);
  for (int v : order) {
    if (a.is_start(v)) at[v] = NcPolynomial::constant(1);
    for (const AbpEdge* e : in[v]) {
      if (at[e->from].is_zero()) continue;
      at[v] += at[e->from] * e->label.to_polynomial();
    }
    enforce_limits(at[v], limits);
  }
  NcPolynomial sum;
  for (int t : a.terminals()) sum += at[t];
  return sum;
}

std::vector<std::vector<std::optional<NcPolynomial>>> expand_abp_pairs(const Abp& a, const ExpansionLimits& limits) {
  const auto order = a.topological_order();
  const int n = a.vertex_count();
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<std::vector<const AbpEdge*>> in(n);
  for (const auto& e : a.edges()) in[e.to].push_back(&e);
  std::vector<std::vector<std::optional<NcPolynomial>>> pairs(n, std::vector<std::optional<NcPolynomial>>(n));
  for (int u = 0; u < n; ++u) {
    for (int i = position[u] + 1; i < n; ++i) {
      const int w = order[i];
      for (const AbpEdge* e : in[w]) {
        NcPolynomial head;
        if (e->from == u) {
          head = NcPolynomial::constant(1);
        } else if (pairs[u][e->from]) {
          head = *pairs[u][e->from];
        } else {
          continue;
        }
        if (!pairs[u][w]) pairs[u][w].emplace();
        *pairs[u][w] += head * e->label.to_polynomial();
      }
      if (pairs[u][w]) enforce_limits(*pairs[u][w], limits);
    }
  }
  return pairs;
}

std::vector<std::size_t> subtree_sizes(const GateStore& store) {
  std::vector<std::size_t> size(store.size(), 1);
  for (std::size_t i = 0; i < store.size(); ++i) {
    const Gate& g = store[static_cast<GateId>(i)];
    if (!g.is_leaf()) size[i] = 1 + size[g.lhs] + size[g.rhs];
  }
  return size;
}

std::vector<int> structural_degrees(const GateStore& store) {
  std::vector<int> deg(store.size(), 0);
  for (std::size_t i = 0; i < store.size(); ++i) {
    const GateId id = static_cast<GateId>(i);
    const Gate& g = store[id];
    switch (g.op) {
      case Op::Const:
        deg[i] = store.is_zero(id) ? -1 : 0;
        break;
      case Op::Var:
        deg[i] = 1;
        break;
      case Op::Add:
        deg[i] = std::max(deg[g.lhs], deg[g.rhs]);
        break;
      case Op::Mul:
        deg[i] = (deg[g.lhs] < 0 || deg[g.rhs] < 0) ? -1 : deg[g.lhs] + deg[g.rhs];
        break;
    }
  }
  return deg;
}

Metrics metrics(const Formula& f) {
  const auto live = reachable(f.store, {f.root});
  std::vector<std::size_t> size(f.store.size(), 1), leaves(f.store.size(), 1);
  std::vector<int> depth(f.store.size(), 0);
  for (std::size_t i = 0; i < f.store.size(); ++i) {
    if (!live[i]) continue;
    const Gate& g = f.store[static_cast<GateId>(i)];
    if (g.is_leaf()) continue;
    size[i] = 1 + size[g.lhs] + size[g.rhs];
    leaves[i] = leaves[g.lhs] + leaves[g.rhs];
    depth[i] = 1 + std::max(depth[g.lhs], depth[g.rhs]);
  }
  Metrics m;
  m.nodes = size[f.root];
  m.edges = m.nodes - 1;
  m.depth = depth[f.root];
  m.leaf_count = leaves[f.root];
  return m;
}

Metrics metrics(const Circuit& c) {
  Metrics m;
  if (c.outputs.empty()) return m;
  const auto live = reachable(c.store, c.outputs);
  std::vector<int> depth(c.store.size(), 0);
  for (std::size_t i = 0; i < c.store.size(); ++i) {
    if (!live[i]) continue;
    ++m.nodes;
    const Gate& g = c.store[static_cast<GateId>(i)];
    if (g.is_leaf()) {
      ++m.leaf_count;
      continue;
    }
    m.edges += 2;
    depth[i] = 1 + std::max(depth[g.lhs], depth[g.rhs]);
  }
  for (GateId o : c.outputs) m.depth = std::max(m.depth, depth[o]);
  return m;
}

Metrics metrics(const Abp& a) {
  Metrics m;
  m.nodes = static_cast<std::size_t>(a.vertex_count());
  m.edges = a.edge_count();
  for (const auto& e : a.edges()) m.leaf_count += e.label.term_count();
  const auto order = a.topological_order();
  std::vector<std::vector<int>> out(a.vertex_count());
  for (const auto& e : a.edges()) out[e.from].push_back(e.to);
  std::vector<int> longest(a.vertex_count(), -1);
  for (int s : a.starts()) longest[s] = 0;
  for (int v : order) {
    if (longest[v] < 0) continue;
    for (int w : out[v]) longest[w] = std::max(longest[w], longest[v] + 1);
  }
  for (int t : a.terminals()) m.depth = std::max(m.depth, longest[t]);
  return m;
}

namespace {

GateId lower(const Expr& e, GateStore& store) {
  switch (e.op) {
    case Op::Const:
      return store.constant(e.value, e.interval);
    case Op::Var:
      return store.variable(e.var, e.interval);
    case Op::Add:
    case Op::Mul:
      break;
  }
  if (e.children.empty()) return store.constant(e.op == Op::Add ? 0 : 1, e.interval);
  GateId acc = lower(e.children.front(), store);
  if (e.children.size() == 1) {
    if (e.interval) store.set_interval(acc, e.interval);
    return acc;
  }
  for (std::size_t i = 1; i < e.children.size(); ++i) {
    const GateId next = lower(e.children[i], store);
    const bool top = i + 1 == e.children.size();
    acc = store.binary(e.op, acc, next, top ? e.interval : std::nullopt);
  }
  return acc;
}

}  // namespace

Formula normalize_fanin2(const Expr& e) {
  Formula f;
  f.root = lower(e, f.store);
  return f;
}

}  // namespace abekit
