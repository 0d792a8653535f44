#include <functional>
#include <map>

#include "abekit/errors.hpp"
#include "abekit/transforms.hpp"
#include "abekit/validators.hpp"
#include "detail.hpp"

namespace abekit {

namespace {

// Gates in decreasing id order visit parents before children in a tree.
std::vector<std::optional<Interval>> governing_intervals(const Formula& f) {
  const auto live = reachable(f.store, {f.root});
  std::vector<std::optional<Interval>> gov(f.store.size());
  for (GateId id = f.root + 1; id-- > 0;) {
    if (!live[id]) continue;
    const Gate& g = f.store[id];
    if (g.is_leaf()) continue;
    gov[g.lhs] = gov[id];
    gov[g.rhs] = gov[id];
    if (g.op != Op::Mul) continue;
    const auto& riv = f.store[g.rhs].interval;
    if (!riv) throw PreconditionError("multiplication gate " + std::to_string(id) + " has an unannotated right child");
    if (!riv->is_constant()) gov[g.lhs] = riv;
  }
  return gov;
}

Formula zero_leaves(const Formula& f, const std::function<bool(GateId, const Gate&)>& kill) {
  Formula out;
  out.root = detail::rebuild(f.store, f.root, out.store, [&](GateId id, GateStore& st) -> std::optional<GateId> {
    const Gate& g = f.store[id];
    if (g.op == Op::Var && kill(id, g)) return st.constant(0, g.interval);
    return std::nullopt;
  });
  return prune_zeros(out);
}

}  // namespace

Formula link_formula(const Formula& input) {
  const Formula f = extract_tree(input.store, input.root);
  const auto gov = governing_intervals(f);
  return zero_leaves(f, [&](GateId id, const Gate& g) {
    const Var v = f.store.var(g);
    if (v.kind() != VarKind::Linked) {
      throw PreconditionError("link needs doubly indexed variables, found " + to_string(v));
    }
    return gov[id] && v.second() != gov[id]->a;
  });
}

Formula subpoly_formula(const FormulaFamily& fam, int a, int b, const BucketingSystem* buckets) {
  const int m = fam.m;
  if (a < 1 || a > b || b > m + 1) {
    throw PreconditionError("sub-polynomial indices [" + std::to_string(a) + "," + std::to_string(b) +
                            ") out of range for m = " + std::to_string(m));
  }
  const int index = a == b ? m + 1 : a;
  const auto it = fam.components.find(index);
  if (it == fam.components.end()) return Formula::constant(0);
  if (a == b) return prune_zeros(it->second);
  const Formula& f = it->second;
  return zero_leaves(f, [&](GateId, const Gate& g) {
    int k = 0;
    if (buckets) {
      k = buckets->require_bucket(f.store.var(g));
    } else if (g.interval) {
      k = g.interval->a;
    } else {
      throw PreconditionError("variable leaf " + to_string(f.store.var(g)) + " has no interval annotation");
    }
    return k >= b;
  });
}

std::vector<int> position_indices(const Formula& f) {
  const auto deg = structural_degrees(f.store);
  const auto live = reachable(f.store, {f.root});
  std::vector<int> offset(f.store.size(), 0);
  std::vector<int> pos(f.store.size(), 0);
  for (GateId id = f.root + 1; id-- > 0;) {
    if (!live[id]) continue;
    const Gate& g = f.store[id];
    if (g.op == Op::Var) {
      pos[id] = offset[id] + 1;
      continue;
    }
    if (g.is_leaf()) continue;
    offset[g.lhs] = offset[id];
    offset[g.rhs] = offset[id] + (g.op == Op::Mul ? std::max(deg[g.lhs], 0) : 0);
  }
  return pos;
}

FormulaFamily amplify_degree(const FormulaFamily& base, const Formula& linked_in, const AmplifyOptions& opts) {
  const int n = base.m;
  const BucketingSystem singles = BucketingSystem::singletons(n);
  const Formula linked = prune_zeros(linked_in);

  const ValidationReport hom = check_homogeneous(linked);
  if (!hom.ok) throw PreconditionError("linked formula is not homogeneous");
  const int dlink = hom.degree.value_or(0);

  if (opts.verify) {
    const NcPolynomial p = expand(base, opts.limits);
    if (!is_abecedarian_poly(p, singles)) throw PreconditionError("base family is not abecedarian");
    int bdeg = -1;
    for (const auto& [w, c] : p.terms()) {
      if (bdeg >= 0 && static_cast<int>(w.size()) != bdeg) throw PreconditionError("base family is not homogeneous");
      bdeg = static_cast<int>(w.size());
    }
    CheckOptions co;
    co.limits = opts.limits;
    if (!check_linked(linked, co).ok) throw PreconditionError("formula is not linked");
  }

  const auto pos = position_indices(linked);
  std::map<std::pair<int, int>, Formula> pieces;
  auto piece = [&](int a, int b) -> const Formula& {
    auto it = pieces.find({a, b});
    if (it == pieces.end()) it = pieces.emplace(std::make_pair(a, b), subpoly_formula(base, a, b, &singles)).first;
    return it->second;
  };

  Formula out;
  out.root = detail::rebuild(linked.store, linked.root, out.store, [&](GateId id, GateStore& st) -> std::optional<GateId> {
    const Gate& g = linked.store[id];
    if (g.op == Op::Var) {
      const Var v = linked.store.var(g);
      if (v.kind() != VarKind::Linked) throw PreconditionError("amplify needs doubly indexed leaves, found " + to_string(v));
      const int a = v.first();
      const int b = v.second();
      if (a < 1 || b > n || a > b) return st.constant(0);
      if (pos[id] == dlink) {
        if (b != n) return st.constant(0);
        const Formula& p = piece(a, n + 1);
        return st.copy_tree(p.store, p.root);
      }
      const Formula& p = piece(a, b + 1);
      return st.copy_tree(p.store, p.root);
    }
    return std::nullopt;
  });
  return collect_family(strip_annotations(prune_zeros(out)), singles);
}

Formula chsym_to_esym(const Formula& input) {
  const Formula f = prune_zeros(input);
  if (!check_homogeneous(f).ok) throw PreconditionError("chsym2esym needs a homogeneous formula");
  const auto pos = position_indices(f);
  Formula out;
  out.root = detail::rebuild(f.store, f.root, out.store, [&](GateId id, GateStore& st) -> std::optional<GateId> {
    const Gate& g = f.store[id];
    if (g.op != Op::Var) return std::nullopt;
    const Var v = f.store.var(g);
    if (v.kind() != VarKind::Plain) throw PreconditionError("chsym2esym needs singly indexed variables, found " + to_string(v));
    return st.variable(Var::plain(v.first() + (pos[id] - 1)));
  });
  return strip_annotations(out);
}

}  // namespace abekit
