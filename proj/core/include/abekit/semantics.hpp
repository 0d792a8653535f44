#pragma once

// Semantic expansion into the free algebra, size metrics, and fan-in
// normalization for the three models.

#include <optional>
#include <vector>

#include "abekit/abp.hpp"
#include "abekit/model.hpp"

namespace abekit {

NcPolynomial expand(const Formula& f, const ExpansionLimits& limits = {});
/// Sum over the outputs.
NcPolynomial expand(const Circuit& c, const ExpansionLimits& limits = {});
NcPolynomial expand(const Abp& a, const ExpansionLimits& limits = {});
NcPolynomial expand(const FormulaFamily& fam, const ExpansionLimits& limits = {});

/// Polynomial of every gate reachable from the roots; other slots are zero.
std::vector<NcPolynomial> expand_gates(const GateStore& store, const std::vector<GateId>& roots,
                                       const ExpansionLimits& limits = {});

/// Polynomial of every vertex pair (u,v) with u reaching v by at least one edge,
/// keyed by source vertex then target vertex.
std::vector<std::vector<std::optional<NcPolynomial>>> expand_abp_pairs(const Abp& a,
                                                                       const ExpansionLimits& limits = {});

struct Metrics {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  int depth = 0;
  std::size_t leaf_count = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// nodes/edges count the tree with multiplicity; depth is the longest
/// root-to-leaf edge count.
Metrics metrics(const Formula& f);
/// Gates reachable from the outputs, each counted once.
Metrics metrics(const Circuit& c);
/// depth is the longest start-to-terminal edge count; leaf_count is the total
/// number of label entries.
Metrics metrics(const Abp& a);

/// Per-gate degree of the computed polynomial, bounded above structurally
/// (leaves 0 or 1, times adds, plus takes the max). Zero constants get -1.
std::vector<int> structural_degrees(const GateStore& store);

/// Tree node counts with multiplicity, indexed by gate id.
std::vector<std::size_t> subtree_sizes(const GateStore& store);

/// General fan-in expression used as input to normalize_fanin2.
struct Expr {
  Op op = Op::Const;
  Rational value;
  Var var;
  std::vector<Expr> children;
  std::optional<Interval> interval;

  static Expr constant(const Rational& c) { return Expr{Op::Const, c, {}, {}, {}}; }
  static Expr variable(Var v) { return Expr{Op::Var, 0, v, {}, {}}; }
  static Expr sum(std::vector<Expr> xs) { return Expr{Op::Add, 0, {}, std::move(xs), {}}; }
  static Expr product(std::vector<Expr> xs) { return Expr{Op::Mul, 0, {}, std::move(xs), {}}; }
};

/// Left-associates every gate of fan-in above 2. An empty sum is 0, an empty
/// product is 1, and a unary gate collapses to its child. A wide gate's
/// interval lands on the top gate of its chain only.
Formula normalize_fanin2(const Expr& e);

}  // namespace abekit
