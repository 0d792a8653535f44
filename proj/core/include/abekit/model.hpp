#pragma once

// Gate-level IR shared by formulas and circuits.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abekit/free_algebra.hpp"

namespace abekit {

/// Half-open bucket interval [a,b). [a,a) is the constant interval.
struct Interval {
  int a = 1;
  int b = 1;

  bool is_constant() const { return a == b; }
  auto operator<=>(const Interval&) const = default;
};

std::string to_string(const Interval& iv);

enum class Op : std::uint8_t { Const, Var, Add, Mul };

using GateId = std::uint32_t;

struct Gate {
  Op op = Op::Const;
  GateId lhs = 0;
  GateId rhs = 0;
  /// Const: index into the constant pool. Var: the variable code.
  std::uint32_t payload = 0;
  std::optional<Interval> interval;

  bool is_leaf() const { return op == Op::Const || op == Op::Var; }
};

/// Append-only gate arena. Children always have smaller ids than their parent,
/// so id order is a topological order.
class GateStore {
 public:
  GateId constant(const Rational& value, std::optional<Interval> iv = {});
  GateId variable(Var v, std::optional<Interval> iv = {});
  GateId add(GateId lhs, GateId rhs, std::optional<Interval> iv = {});
  GateId mul(GateId lhs, GateId rhs, std::optional<Interval> iv = {});
  GateId binary(Op op, GateId lhs, GateId rhs, std::optional<Interval> iv = {});

  std::size_t size() const { return gates_.size(); }
  const Gate& operator[](GateId id) const { return gates_[id]; }
  const std::vector<Gate>& gates() const { return gates_; }

  const Rational& value(const Gate& g) const { return constants_[g.payload]; }
  Var var(const Gate& g) const { return Var::from_code(g.payload); }
  bool is_zero(GateId id) const;
  bool is_one(GateId id) const;

  void set_interval(GateId id, std::optional<Interval> iv) { gates_[id].interval = iv; }

  /// Copies the tree below `id` in `src` into this store. Shared sub-gates of
  /// `src` are duplicated once per path.
  GateId copy_tree(const GateStore& src, GateId id);

 private:
  GateId push(Gate g);

  std::vector<Gate> gates_;
  std::vector<Rational> constants_;
};

/// Fan-in-2 expression tree.
struct Formula {
  GateStore store;
  GateId root = 0;

  static Formula constant(const Rational& value);
  static Formula variable(Var v);
  const Gate& root_gate() const { return store[root]; }
};

/// Copy of the tree under `root`, dropping unreachable gates.
Formula extract_tree(const GateStore& store, GateId root);

/// True iff every gate reachable from the root has exactly one parent.
bool is_tree(const Formula& f);

/// Multi-output DAG. The computed polynomial is the sum over the outputs.
struct Circuit {
  GateStore store;
  std::vector<GateId> outputs;
};

Circuit to_circuit(const Formula& f);

/// reachable[id] is true iff gate id lies below one of the roots.
std::vector<bool> reachable(const GateStore& store, const std::vector<GateId>& roots);

/// Abecedarian formula: component i computes f[i, m+1). Absent components
/// compute zero; index m+1 holds the constant term when present.
struct FormulaFamily {
  int m = 0;
  std::map<int, Formula> components;

  /// Sum of the components under an unannotated plus spine.
  Formula to_formula() const;
};

}  // namespace abekit
