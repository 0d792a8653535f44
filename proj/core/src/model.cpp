#include "abekit/model.hpp"

#include "abekit/errors.hpp"

namespace abekit {

std::string to_string(const Interval& iv) {
  return "[" + std::to_string(iv.a) + "," + std::to_string(iv.b) + ")";
}

GateId GateStore::push(Gate g) {
  gates_.push_back(g);
  return static_cast<GateId>(gates_.size() - 1);
}

GateId GateStore::constant(const Rational& value, std::optional<Interval> iv) {
  Gate g;
  g.op = Op::Const;
  g.payload = static_cast<std::uint32_t>(constants_.size());
  g.interval = iv;
  constants_.push_back(value);
  return push(g);
}

GateId GateStore::variable(Var v, std::optional<Interval> iv) {
  Gate g;
  g.op = Op::Var;
  g.payload = v.code();
  g.interval = iv;
  return push(g);
}

GateId GateStore::binary(Op op, GateId lhs, GateId rhs, std::optional<Interval> iv) {
  if (op != Op::Add && op != Op::Mul) throw PreconditionError("binary gate needs + or *");
  if (lhs >= gates_.size() || rhs >= gates_.size()) throw PreconditionError("gate child does not exist");
  Gate g;
  g.op = op;
  g.lhs = lhs;
  g.rhs = rhs;
  g.interval = iv;
  return push(g);
}

GateId GateStore::add(GateId lhs, GateId rhs, std::optional<Interval> iv) { return binary(Op::Add, lhs, rhs, iv); }

GateId GateStore::mul(GateId lhs, GateId rhs, std::optional<Interval> iv) { return binary(Op::Mul, lhs, rhs, iv); }

bool GateStore::is_zero(GateId id) const {
  const Gate& g = gates_[id];
  return g.op == Op::Const && constants_[g.payload] == 0;
}

bool GateStore::is_one(GateId id) const {
  const Gate& g = gates_[id];
  return g.op == Op::Const && constants_[g.payload] == 1;
}

GateId GateStore::copy_tree(const GateStore& src, GateId id) {
  struct Frame {
    GateId id;
    bool expanded;
  };
  std::vector<Frame> stack{{id, false}};
  std::vector<GateId> done;
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    const Gate& g = src[fr.id];
    if (g.op == Op::Const) {
      done.push_back(constant(src.value(g), g.interval));
    } else if (g.op == Op::Var) {
      done.push_back(variable(src.var(g), g.interval));
    } else if (!fr.expanded) {
      stack.push_back({fr.id, true});
      stack.push_back({g.rhs, false});
      stack.push_back({g.lhs, false});
    } else {
      const GateId r = done.back();
      done.pop_back();
      const GateId l = done.back();
      done.pop_back();
      done.push_back(binary(g.op, l, r, g.interval));
    }
  }
  return done.back();
}

Formula Formula::constant(const Rational& value) {
  Formula f;
  f.root = f.store.constant(value);
  return f;
}

Formula Formula::variable(Var v) {
  Formula f;
  f.root = f.store.variable(v);
  return f;
}

Formula extract_tree(const GateStore& store, GateId root) {
  Formula f;
  f.root = f.store.copy_tree(store, root);
  return f;
}

std::vector<bool> reachable(const GateStore& store, const std::vector<GateId>& roots) {
  std::vector<bool> seen(store.size(), false);
  for (GateId r : roots) {
    if (r >= store.size()) throw PreconditionError("root gate does not exist");
    seen[r] = true;
  }
  for (std::size_t i = store.size(); i-- > 0;) {
    if (!seen[i]) continue;
    const Gate& g = store[static_cast<GateId>(i)];
    if (g.is_leaf()) continue;
    seen[g.lhs] = true;
    seen[g.rhs] = true;
  }
  return seen;
}

bool is_tree(const Formula& f) {
  const auto live = reachable(f.store, {f.root});
  std::vector<int> parents(f.store.size(), 0);
  for (std::size_t i = 0; i < f.store.size(); ++i) {
    if (!live[i]) continue;
    const Gate& g = f.store[static_cast<GateId>(i)];
    if (g.is_leaf()) continue;
    if (++parents[g.lhs] > 1 || ++parents[g.rhs] > 1) return false;
  }
  return true;
}

Circuit to_circuit(const Formula& f) {
  Circuit c;
  c.outputs.push_back(c.store.copy_tree(f.store, f.root));
  return c;
}

Formula FormulaFamily::to_formula() const {
  Formula out;
  std::optional<GateId> acc;
  for (const auto& [i, comp] : components) {
    const GateId g = out.store.copy_tree(comp.store, comp.root);
    acc = acc ? out.store.add(*acc, g) : g;
  }
  out.root = acc ? *acc : out.store.constant(0);
  return out;
}

}  // namespace abekit
