#include <cmath>

#include "abekit/errors.hpp"
#include "abekit/transforms.hpp"
#include "detail.hpp"

namespace abekit {

namespace {

struct Split {
  Formula L;
  Formula F1;
  Formula R;
  Formula F2;
  GateId vertex = 0;
  bool left_trivial = true;
  bool right_trivial = true;
};

Split split(const Formula& f) {
  const auto size = subtree_sizes(f.store);
  const std::size_t s = size[f.root];
  struct Step {
    GateId gate;
    bool went_right;
  };
  std::vector<Step> path;
  GateId v = f.root;
  while (size[v] * 3 > 2 * s) {
    const Gate& g = f.store[v];
    const bool right = size[g.rhs] > size[g.lhs];
    path.push_back({v, right});
    v = right ? g.rhs : g.lhs;
  }

  Split out;
  out.vertex = v;
  out.F1 = extract_tree(f.store, v);

  std::optional<GateId> l;
  std::optional<GateId> r;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const Gate& g = f.store[it->gate];
    if (g.op != Op::Mul) continue;
    if (it->went_right) {
      const GateId c = out.L.store.copy_tree(f.store, g.lhs);
      l = l ? out.L.store.mul(c, *l) : c;
    } else {
      const GateId c = out.R.store.copy_tree(f.store, g.rhs);
      r = r ? out.R.store.mul(*r, c) : c;
    }
  }
  out.left_trivial = !l;
  out.right_trivial = !r;
  out.L.root = l ? *l : out.L.store.constant(1);
  out.R.root = r ? *r : out.R.store.constant(1);

  Formula f2;
  f2.root = detail::rebuild(f.store, f.root, f2.store, [&](GateId id, GateStore& st) -> std::optional<GateId> {
    if (id == v) return st.constant(0);
    return std::nullopt;
  });
  out.F2 = prune_zeros(f2);
  return out;
}

Formula annotate_part(const Formula& part) {
  if (!detail::leaves_annotated(part)) return part;
  return reannotate_from_leaves(part);
}

Formula reduce(const Formula& f, std::size_t base) {
  if (subtree_sizes(f.store)[f.root] <= base) return extract_tree(f.store, f.root);
  Split sp = split(f);
  Formula out;
  const Formula f1 = reduce(sp.F1, base);
  GateId top = out.store.copy_tree(f1.store, f1.root);
  if (!sp.left_trivial) {
    const Formula l = reduce(sp.L, base);
    top = out.store.mul(out.store.copy_tree(l.store, l.root), top);
  }
  if (!sp.right_trivial) {
    const Formula r = reduce(sp.R, base);
    top = out.store.mul(top, out.store.copy_tree(r.store, r.root));
  }
  if (!sp.F2.store.is_zero(sp.F2.root)) {
    const Formula f2 = reduce(sp.F2, base);
    top = out.store.add(top, out.store.copy_tree(f2.store, f2.root));
  }
  out.root = top;
  return out;
}

}  // namespace

BalancedDecomposition decompose_balanced(const Formula& f, std::size_t base) {
  const Formula t = extract_tree(f.store, f.root);
  if (t.store.size() <= base) {
    throw PreconditionError("formula has " + std::to_string(t.store.size()) + " nodes, at most the base size " +
                            std::to_string(base));
  }
  Split sp = split(t);
  BalancedDecomposition d;
  d.split_interval = t.store[sp.vertex].interval;
  d.L = annotate_part(sp.L);
  d.F1 = std::move(sp.F1);
  d.R = annotate_part(sp.R);
  if (detail::leaves_annotated(t)) {
    const Interval iv = d.split_interval.value_or(Interval{1, 1});
    if (sp.left_trivial) d.L.store.set_interval(d.L.root, Interval{iv.a, iv.a});
    if (sp.right_trivial) d.R.store.set_interval(d.R.root, Interval{iv.b, iv.b});
  }
  d.F2 = sp.F2;
  if (detail::leaves_annotated(sp.F2)) {
    const auto& root_iv = t.root_gate().interval;
    d.F2 = reannotate_from_leaves(sp.F2, root_iv);
  }
  return d;
}

std::optional<std::array<Interval, 3>> literal_split_table(int a, int b, int i, int j) {
  using T = std::array<Interval, 3>;
  if (a == b) {
    if (i != a || j != a) return std::nullopt;
    return T{Interval{a, a}, Interval{a, a}, Interval{a, a}};
  }
  if (a > b || i < a || j < i || b < j) return std::nullopt;
  if (a == i && i < j && j == b) return T{Interval{a, i}, Interval{i, j}, Interval{j, b}};
  if (a == i && i == j && j < b) return T{Interval{a, i}, Interval{i, j}, Interval{j, b}};
  if (a == i && i < j && j < b) return T{Interval{a, i}, Interval{i, j + 1}, Interval{j, b}};
  if (a < i && i == j && j == b) return T{Interval{a, i + 1}, Interval{i, j}, Interval{j, b}};
  if (a < i && i == j && j < b) return T{Interval{a, i + 1}, Interval{i + 1, j + 1}, Interval{j, b}};
  if (a < i && i < j && j == b) return T{Interval{a, i + 1}, Interval{i, j}, Interval{j, b}};
  return T{Interval{a, i + 1}, Interval{i, j + 1}, Interval{j, b}};
}

Formula depth_reduce(const Formula& f, std::size_t base) {
  const Formula t = prune_zeros(f);
  Formula out = reduce(t, base);
  if (detail::leaves_annotated(t)) out = reannotate_from_leaves(out, t.root_gate().interval);
  return out;
}

double depth_reduce_bound(std::size_t nodes) {
  if (nodes <= 1) return 6.0;
  return 3.0 * std::log(static_cast<double>(nodes)) / std::log(1.5) + 6.0;
}

}  // namespace abekit
