#include <algorithm>
#include <functional>
#include <map>

#include "abekit/errors.hpp"
#include "abekit/transforms.hpp"

namespace abekit {

namespace {

enum class Kind { Zero, Constant, Typed, Mixed };

struct Natural {
  Kind kind = Kind::Zero;
  Interval iv;
};

class Annotator {
 public:
  Annotator(const Formula& f, std::vector<int> leaf_bucket, int m)
      : in_(f), leaf_bucket_(std::move(leaf_bucket)), m_(m), nat_(f.store.size()) {
    infer();
  }

  Formula run(std::optional<Interval> target) {
    Formula out;
    out.root = assign(in_.root, target, out.store);
    return out;
  }

  const Natural& natural(GateId id) const { return nat_[id]; }

 private:
  void infer() {
    const GateStore& s = in_.store;
    const auto live = reachable(s, {in_.root});
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!live[i]) continue;
      const GateId id = static_cast<GateId>(i);
      const Gate& g = s[id];
      Natural& n = nat_[i];
      switch (g.op) {
        case Op::Const:
          n.kind = s.is_zero(id) ? Kind::Zero : Kind::Constant;
          break;
        case Op::Var: {
          const int k = leaf_bucket_[i];
          n = {Kind::Typed, {k, k + 1}};
          break;
        }
        case Op::Add:
          n = sum(nat_[g.lhs], nat_[g.rhs]);
          break;
        case Op::Mul:
          n = product(nat_[g.lhs], nat_[g.rhs]);
          break;
      }
    }
  }

  static Natural sum(const Natural& l, const Natural& r) {
    if (l.kind == Kind::Zero) return r;
    if (r.kind == Kind::Zero) return l;
    if (l.kind == Kind::Constant && r.kind == Kind::Constant) return l;
    if (l.kind == Kind::Typed && r.kind == Kind::Typed && l.iv.a == r.iv.a) {
      return {Kind::Typed, {l.iv.a, std::max(l.iv.b, r.iv.b)}};
    }
    return {Kind::Mixed, {}};
  }

  static Natural product(const Natural& l, const Natural& r) {
    if (l.kind == Kind::Zero || r.kind == Kind::Zero) return {Kind::Zero, {}};
    if (l.kind == Kind::Mixed || r.kind == Kind::Mixed) {
      throw PreconditionError("cannot annotate a product with a factor whose summands start in different buckets");
    }
    if (l.kind == Kind::Constant) return r;
    if (r.kind == Kind::Constant) return l;
    if (l.iv.b > r.iv.a + 1) {
      throw PreconditionError("product of " + to_string(l.iv) + " and " + to_string(r.iv) + " is not abecedarian");
    }
    return {Kind::Typed, {l.iv.a, r.iv.b}};
  }

  GateId assign(GateId id, std::optional<Interval> target, GateStore& out) {
    const Gate& g = in_.store[id];
    const Natural& n = nat_[id];
    if (n.kind == Kind::Mixed) {
      if (target) throw PreconditionError("a sum of differently typed summands cannot take interval " + to_string(*target));
      const GateId l = assign(g.lhs, std::nullopt, out);
      const GateId r = assign(g.rhs, std::nullopt, out);
      return out.add(l, r);
    }
    Interval iv;
    if (n.kind == Kind::Zero) {
      iv = target.value_or(Interval{m_ + 1, m_ + 1});
    } else if (n.kind == Kind::Constant) {
      iv = target.value_or(Interval{m_ + 1, m_ + 1});
      if (!iv.is_constant()) throw PreconditionError("a constant cannot take interval " + to_string(iv));
    } else {
      iv = target.value_or(n.iv);
      if (iv.a != n.iv.a || iv.b < n.iv.b || iv.b > m_ + 1) {
        throw PreconditionError("a gate of natural type " + to_string(n.iv) + " cannot take interval " + to_string(iv));
      }
    }
    switch (g.op) {
      case Op::Const:
        return out.constant(in_.store.value(g), iv);
      case Op::Var:
        return out.variable(in_.store.var(g), iv);
      case Op::Add: {
        const GateId l = assign(g.lhs, iv, out);
        const GateId r = assign(g.rhs, iv, out);
        return out.add(l, r, iv);
      }
      case Op::Mul:
        break;
    }
    const Natural& ln = nat_[g.lhs];
    const Natural& rn = nat_[g.rhs];
    Interval li = iv;
    Interval ri = iv;
    if (!iv.is_constant() && ln.kind != Kind::Zero && rn.kind != Kind::Zero) {
      if (ln.kind == Kind::Typed && rn.kind == Kind::Typed) {
        li = {iv.a, rn.iv.a + 1};
        ri = {rn.iv.a, iv.b};
      } else if (ln.kind == Kind::Typed) {
        ri = {iv.b, iv.b};
      } else {
        li = {iv.a, iv.a};
      }
    }
    const GateId l = assign(g.lhs, li, out);
    const GateId r = assign(g.rhs, ri, out);
    return out.mul(l, r, iv);
  }

  const Formula& in_;
  std::vector<int> leaf_bucket_;
  int m_;
  std::vector<Natural> nat_;
};

std::vector<int> buckets_from(const Formula& f, const std::function<int(GateId, const Gate&)>& lookup) {
  std::vector<int> out(f.store.size(), 0);
  const auto live = reachable(f.store, {f.root});
  for (std::size_t i = 0; i < f.store.size(); ++i) {
    const Gate& g = f.store[static_cast<GateId>(i)];
    if (live[i] && g.op == Op::Var) out[i] = lookup(static_cast<GateId>(i), g);
  }
  return out;
}

}  // namespace

Formula reannotate(const Formula& f, const BucketingSystem& buckets, std::optional<Interval> target) {
  const Formula g = prune_zeros(f);
  auto leaf = buckets_from(g, [&](GateId, const Gate& gate) { return buckets.require_bucket(g.store.var(gate)); });
  return Annotator(g, std::move(leaf), buckets.size()).run(target);
}

Formula reannotate_from_leaves(const Formula& f, std::optional<Interval> target) {
  const Formula g = prune_zeros(f);
  int m = target ? target->b - 1 : 0;
  for (const Gate& gate : g.store.gates()) {
    if (gate.interval) m = std::max(m, gate.interval->b - 1);
  }
  auto leaf = buckets_from(g, [&](GateId, const Gate& gate) {
    if (!gate.interval) {
      throw PreconditionError("variable leaf " + to_string(g.store.var(gate)) + " has no interval annotation");
    }
    return gate.interval->a;
  });
  for (int k : leaf) m = std::max(m, k);
  return Annotator(g, std::move(leaf), m).run(target);
}

FormulaFamily collect_family(const Formula& f, const BucketingSystem& buckets) {
  const int m = buckets.size();
  const Formula annotated = reannotate(f, buckets);
  std::map<int, std::vector<GateId>> groups;
  std::vector<GateId> stack{annotated.root};
  while (!stack.empty()) {
    const GateId id = stack.back();
    stack.pop_back();
    const Gate& g = annotated.store[id];
    if (g.op == Op::Add && !g.interval) {
      stack.push_back(g.rhs);
      stack.push_back(g.lhs);
      continue;
    }
    if (annotated.store.is_zero(id)) continue;
    groups[g.interval->is_constant() ? m + 1 : g.interval->a].push_back(id);
  }
  FormulaFamily fam;
  fam.m = m;
  for (auto& [i, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    Formula sum;
    std::optional<GateId> acc;
    for (GateId id : ids) {
      const GateId c = sum.store.copy_tree(annotated.store, id);
      acc = acc ? sum.store.add(*acc, c) : c;
    }
    sum.root = *acc;
    fam.components.emplace(i, reannotate(sum, buckets, Interval{i, m + 1}));
  }
  return fam;
}

}  // namespace abekit
