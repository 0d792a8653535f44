#include <cmath>
#include <cstdint>

#include "abekit/errors.hpp"
#include "abekit/transforms.hpp"
#include "detail.hpp"

namespace abekit {

namespace {

std::vector<std::optional<GateId>> copies_for(const GateStore& in, GateId root, int d, GateStore& out,
                                              std::vector<std::vector<std::optional<GateId>>>& copy) {
  const auto live = reachable(in, {root});
  copy.assign(in.size(), std::vector<std::optional<GateId>>(d + 1));
  for (GateId id = 0; id <= root; ++id) {
    if (!live[id]) continue;
    const Gate& g = in[id];
    auto& mine = copy[id];
    switch (g.op) {
      case Op::Const:
        if (!in.is_zero(id)) mine[0] = out.constant(in.value(g), g.interval);
        break;
      case Op::Var:
        if (d >= 1) mine[1] = out.variable(in.var(g), g.interval);
        break;
      case Op::Add:
        for (int i = 0; i <= d; ++i) {
          const auto& l = copy[g.lhs][i];
          const auto& r = copy[g.rhs][i];
          if (l && r) {
            mine[i] = out.add(*l, *r, g.interval);
          } else {
            mine[i] = l ? l : r;
          }
        }
        break;
      case Op::Mul:
        for (int i = 0; i <= d; ++i) {
          std::vector<GateId> terms;
          for (int j = 0; j <= i; ++j) {
            const auto& l = copy[g.lhs][j];
            const auto& r = copy[g.rhs][i - j];
            if (l && r) terms.push_back(out.mul(*l, *r, g.interval));
          }
          mine[i] = detail::balanced_sum(out, std::move(terms), g.interval);
        }
        break;
    }
  }
  return copy[root];
}

}  // namespace

HomogenizeResult homogenize_formula_ex(const Formula& f, int d) {
  if (d < 0) throw PreconditionError("homogenize needs a degree d >= 0, got " + std::to_string(d));
  const Formula pruned = prune_zeros(f);
  Formula reduced = depth_reduce(pruned);
  const Metrics before = metrics(pruned);
  Metrics after = metrics(reduced);
  if (after.depth > before.depth) {
    reduced = pruned;
    after = before;
  }

  HomogenizeResult res;
  res.reduced_nodes = after.nodes;
  res.reduced_depth = after.depth;

  GateStore circuit;
  std::vector<std::vector<std::optional<GateId>>> copy;
  const auto top = copies_for(reduced.store, reduced.root, d, circuit, copy);
  if (!top[d]) {
    res.formula = Formula::constant(0);
    return res;
  }
  res.formula = prune_zeros(extract_tree(circuit, *top[d]));
  return res;
}

Formula homogenize_formula(const Formula& f, int d) { return homogenize_formula_ex(f, d).formula; }

double homogenize_bound(std::size_t s, int r, int d) {
  if (d == 0) return static_cast<double>(s);
  double binom = 1.0;
  for (int k = 1; k <= d; ++k) binom = binom * (2.0 * r + k) / k;
  return static_cast<double>(s) * d * d * binom;
}

}  // namespace abekit
