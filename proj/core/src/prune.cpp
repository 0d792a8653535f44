#include "abekit/errors.hpp"
#include "abekit/transforms.hpp"

namespace abekit {

std::optional<double> PassLog::figure(std::string_view name) const {
  for (auto it = figures.rbegin(); it != figures.rend(); ++it) {
    if (it->first == name) return it->second;
  }
  return std::nullopt;
}

namespace {

// Bottom-up rebuild of every gate reachable from `roots` into `out`.
std::vector<GateId> fold(const GateStore& in, const std::vector<GateId>& roots, GateStore& out) {
  const auto live = reachable(in, roots);
  std::vector<GateId> map(in.size(), 0);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!live[i]) continue;
    const Gate& g = in[static_cast<GateId>(i)];
    switch (g.op) {
      case Op::Const:
        map[i] = out.constant(in.value(g), g.interval);
        continue;
      case Op::Var:
        map[i] = out.variable(in.var(g), g.interval);
        continue;
      case Op::Add:
      case Op::Mul:
        break;
    }
    const GateId l = map[g.lhs];
    const GateId r = map[g.rhs];
    const Gate& lg = out[l];
    const Gate& rg = out[r];
    if (lg.op == Op::Const && rg.op == Op::Const) {
      const Rational v = g.op == Op::Add ? Rational(out.value(lg) + out.value(rg)) : Rational(out.value(lg) * out.value(rg));
      map[i] = out.constant(v, g.interval);
    } else if (g.op == Op::Add) {
      if (out.is_zero(l)) {
        map[i] = r;
      } else if (out.is_zero(r)) {
        map[i] = l;
      } else {
        map[i] = out.add(l, r, g.interval);
      }
    } else {
      if (out.is_zero(l) || out.is_zero(r)) {
        map[i] = out.constant(0, g.interval);
      } else if (out.is_one(l)) {
        map[i] = r;
      } else if (out.is_one(r)) {
        map[i] = l;
      } else {
        map[i] = out.mul(l, r, g.interval);
      }
    }
  }
  return map;
}

}  // namespace

Formula prune_zeros(const Formula& f) {
  GateStore scratch;
  const auto map = fold(f.store, {f.root}, scratch);
  return extract_tree(scratch, map[f.root]);
}

Circuit prune_zeros(const Circuit& c) {
  GateStore scratch;
  const auto map = fold(c.store, c.outputs, scratch);
  std::vector<GateId> roots;
  for (GateId o : c.outputs) {
    if (!scratch.is_zero(map[o])) roots.push_back(map[o]);
  }
  Circuit out;
  if (roots.empty()) return out;
  const auto map2 = fold(scratch, roots, out.store);
  for (GateId r : roots) out.outputs.push_back(map2[r]);
  return out;
}

Abp prune_zeros(const Abp& a) { return trim(a); }

Formula strip_annotations(const Formula& f) {
  Formula out = extract_tree(f.store, f.root);
  for (GateId i = 0; i < out.store.size(); ++i) out.store.set_interval(i, std::nullopt);
  return out;
}

}  // namespace abekit
