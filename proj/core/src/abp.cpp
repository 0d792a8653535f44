#include "abekit/abp.hpp"

#include <algorithm>
#include <deque>

#include "abekit/errors.hpp"

namespace abekit {

AffineForm AffineForm::of(Var v, const Rational& c) {
  AffineForm f;
  f.add(v, c);
  return f;
}

AffineForm AffineForm::scalar(const Rational& c) {
  AffineForm f;
  f.constant = c;
  return f;
}

void AffineForm::add(Var v, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = linear.try_emplace(v, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) linear.erase(it);
}

NcPolynomial AffineForm::to_polynomial() const {
  NcPolynomial p = NcPolynomial::constant(constant);
  for (const auto& [v, c] : linear) p.add_term(Word{v}, c);
  return p;
}

int Abp::add_vertex(std::optional<int> bucket) {
  buckets_.push_back(bucket);
  return vertex_count() - 1;
}

void Abp::add_edge(int from, int to, AffineForm label) {
  if (from < 0 || to < 0 || from >= vertex_count() || to >= vertex_count()) {
    throw PreconditionError("edge endpoint does not exist");
  }
  edges_.push_back({from, to, std::move(label)});
}

void Abp::add_start(int v) {
  if (v < 0 || v >= vertex_count()) throw PreconditionError("start vertex does not exist");
  if (!is_start(v)) starts_.push_back(v);
}

void Abp::add_terminal(int v) {
  if (v < 0 || v >= vertex_count()) throw PreconditionError("terminal vertex does not exist");
  if (!is_terminal(v)) terminals_.push_back(v);
}

bool Abp::is_start(int v) const { return std::find(starts_.begin(), starts_.end(), v) != starts_.end(); }

bool Abp::is_terminal(int v) const { return std::find(terminals_.begin(), terminals_.end(), v) != terminals_.end(); }

std::vector<int> Abp::topological_order() const {
  const int n = vertex_count();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const auto& e : edges_) {
    ++indeg[e.to];
    out[e.from].push_back(e.to);
  }
  std::deque<int> ready;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (int w : out[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != n) throw CycleError("ABP contains a directed cycle");
  return order;
}

namespace {

std::vector<bool> live_vertices(const Abp& a) {
  const int n = a.vertex_count();
  std::vector<std::vector<int>> out(n), in(n);
  for (const auto& e : a.edges()) {
    if (e.label.is_zero()) continue;
    out[e.from].push_back(e.to);
    in[e.to].push_back(e.from);
  }
  auto sweep = [n](const std::vector<int>& seeds, const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack(seeds.begin(), seeds.end());
    for (int s : seeds) seen[s] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return seen;
  };
  const auto fwd = sweep(a.starts(), out);
  const auto bwd = sweep(a.terminals(), in);
  std::vector<bool> live(n);
  for (int v = 0; v < n; ++v) live[v] = fwd[v] && bwd[v];
  return live;
}

}  // namespace

Abp trim(const Abp& a) {
  const auto live = live_vertices(a);
  Abp out;
  std::vector<int> remap(a.vertex_count(), -1);
  for (int v = 0; v < a.vertex_count(); ++v) {
    if (live[v]) remap[v] = out.add_vertex(a.bucket(v));
  }
  for (const auto& e : a.edges()) {
    if (e.label.is_zero() || remap[e.from] < 0 || remap[e.to] < 0) continue;
    out.add_edge(remap[e.from], remap[e.to], e.label);
  }
  for (int s : a.starts()) {
    if (remap[s] >= 0) out.add_start(remap[s]);
  }
  for (int t : a.terminals()) {
    if (remap[t] >= 0) out.add_terminal(remap[t]);
  }
  return out;
}

std::optional<std::vector<int>> abp_layers(const Abp& a) {
  a.topological_order();
  const auto live = live_vertices(a);
  const int n = a.vertex_count();
  std::vector<int> layer(n, -1);
  std::vector<std::vector<int>> out(n);
  for (const auto& e : a.edges()) {
    if (live[e.from] && live[e.to] && !e.label.is_zero()) out[e.from].push_back(e.to);
  }
  std::deque<int> queue;
  for (int s : a.starts()) {
    if (!live[s]) continue;
    layer[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : out[v]) {
      if (layer[w] < 0) {
        layer[w] = layer[v] + 1;
        queue.push_back(w);
      } else if (layer[w] != layer[v] + 1) {
        return std::nullopt;
      }
    }
  }
  std::optional<int> last;
  for (int t : a.terminals()) {
    if (!live[t]) continue;
    if (last && *last != layer[t]) return std::nullopt;
    last = layer[t];
  }
  for (int v = 0; v < n; ++v) {
    if (live[v] && last && layer[v] == *last && !a.is_terminal(v)) return std::nullopt;
  }
  return layer;
}

Abp layer_normalize(const Abp& input) {
  const Abp a = trim(input);
  const int n = a.vertex_count();
  const auto order = a.topological_order();
  std::vector<int> longest(n, -1);
  for (int s : a.starts()) longest[s] = 0;
  std::vector<std::vector<const AbpEdge*>> out(n);
  for (const auto& e : a.edges()) out[e.from].push_back(&e);
  for (int v : order) {
    if (longest[v] < 0) continue;
    for (const AbpEdge* e : out[v]) longest[e->to] = std::max(longest[e->to], longest[v] + 1);
  }
  int depth = 0;
  for (int t : a.terminals()) depth = std::max(depth, longest[t]);

  Abp result;
  std::map<std::pair<int, int>, int> copy;
  auto copy_of = [&](int v, int k) {
    auto [it, inserted] = copy.try_emplace({v, k}, 0);
    if (inserted) it->second = result.add_vertex();
    return it->second;
  };
  std::vector<int> done(depth + 1, -1);

  std::vector<std::vector<int>> frontier(depth + 1);
  for (int s : a.starts()) {
    result.add_start(copy_of(s, 0));
    frontier[0].push_back(s);
  }
  for (int k = 0; k <= depth; ++k) {
    std::sort(frontier[k].begin(), frontier[k].end());
    frontier[k].erase(std::unique(frontier[k].begin(), frontier[k].end()), frontier[k].end());
    for (int u : frontier[k]) {
      const int cu = copy_of(u, k);
      if (a.is_terminal(u)) {
        if (k == depth) {
          result.add_terminal(cu);
        } else {
          if (done[k + 1] < 0) done[k + 1] = result.add_vertex();
          result.add_edge(cu, done[k + 1], AffineForm::scalar(1));
        }
      }
      if (k == depth) continue;
      for (const AbpEdge* e : out[u]) {
        result.add_edge(cu, copy_of(e->to, k + 1), e->label);
        frontier[k + 1].push_back(e->to);
      }
    }
  }
  for (int k = 1; k <= depth; ++k) {
    if (done[k] < 0) continue;
    if (k == depth) {
      result.add_terminal(done[k]);
    } else {
      if (done[k + 1] < 0) done[k + 1] = result.add_vertex();
      result.add_edge(done[k], done[k + 1], AffineForm::scalar(1));
    }
  }
  return trim(result);
}

LinearizedAbp linearize_labels(const Abp& input) {
  const Abp a = trim(input);
  const int n = a.vertex_count();
  const auto order = a.topological_order();
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<std::vector<const AbpEdge*>> in(n);
  for (const auto& e : a.edges()) in[e.to].push_back(&e);

  // reach[u][w]: sum over u -> w paths of the product of constant parts.
  std::vector<std::vector<Rational>> reach(n, std::vector<Rational>(n));
  for (int u = 0; u < n; ++u) {
    reach[u][u] = 1;
    for (int i = position[u] + 1; i < n; ++i) {
      const int w = order[i];
      for (const AbpEdge* e : in[w]) {
        if (e->label.constant != 0 && reach[u][e->from] != 0) reach[u][w] += reach[u][e->from] * e->label.constant;
      }
    }
  }
  std::vector<Rational> from_start(n), to_end(n);
  for (int w = 0; w < n; ++w) {
    for (int s : a.starts()) from_start[w] += reach[s][w];
    for (int t : a.terminals()) to_end[w] += reach[w][t];
  }

  LinearizedAbp result;
  for (int s : a.starts()) result.constant += to_end[s];

  Abp& out = result.abp;
  const int sigma = out.add_vertex();
  out.add_start(sigma);
  std::vector<int> enter(n), finish(n);
  for (int v = 0; v < n; ++v) {
    enter[v] = out.add_vertex();
    finish[v] = out.add_vertex();
    out.add_terminal(finish[v]);
  }
  auto scaled = [](const AffineForm& f, const Rational& c) {
    AffineForm g;
    if (c == 0) return g;
    for (const auto& [v, coeff] : f.linear) g.add(v, coeff * c);
    return g;
  };
  for (const auto& e : a.edges()) {
    if (e.label.linear.empty()) continue;
    auto connect = [&](int from, const Rational& before) {
      if (before == 0) return;
      out.add_edge(from, enter[e.to], scaled(e.label, before));
      if (to_end[e.to] != 0) out.add_edge(from, finish[e.to], scaled(e.label, before * to_end[e.to]));
    };
    connect(sigma, from_start[e.from]);
    for (int x = 0; x < n; ++x) connect(enter[x], reach[x][e.from]);
  }
  result.abp = trim(out);
  return result;
}

}  // namespace abekit
