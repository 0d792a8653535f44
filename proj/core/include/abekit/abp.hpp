#pragma once

#include <map>
#include <optional>
#include <vector>

#include "abekit/free_algebra.hpp"

namespace abekit {

/// constant + sum of coefficient * variable
struct AffineForm {
  Rational constant;
  std::map<Var, Rational> linear;

  static AffineForm of(Var v, const Rational& c = 1);
  static AffineForm scalar(const Rational& c);

  bool is_zero() const { return constant == 0 && linear.empty(); }
  bool is_linear() const { return constant == 0; }
  /// Number of nonzero entries (constant counted once when nonzero).
  std::size_t term_count() const { return linear.size() + (constant != 0 ? 1 : 0); }
  void add(Var v, const Rational& c);
  NcPolynomial to_polynomial() const;

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

struct AbpEdge {
  int from = 0;
  int to = 0;
  AffineForm label;
};

/// DAG whose edges carry affine forms. Computes the sum over start-terminal
/// pairs of all path products.
class Abp {
 public:
  int add_vertex(std::optional<int> bucket = {});
  void add_edge(int from, int to, AffineForm label);
  void add_start(int v);
  void add_terminal(int v);

  int vertex_count() const { return static_cast<int>(buckets_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<AbpEdge>& edges() const { return edges_; }
  const std::vector<int>& starts() const { return starts_; }
  const std::vector<int>& terminals() const { return terminals_; }
  const std::optional<int>& bucket(int v) const { return buckets_.at(v); }
  void set_bucket(int v, std::optional<int> bucket) { buckets_.at(v) = bucket; }
  bool is_start(int v) const;
  bool is_terminal(int v) const;

  /// Vertices in topological order. Throws CycleError.
  std::vector<int> topological_order() const;

 private:
  std::vector<std::optional<int>> buckets_;
  std::vector<AbpEdge> edges_;
  std::vector<int> starts_;
  std::vector<int> terminals_;
};

/// Layer index per vertex when every edge goes from layer k to k+1, all starts
/// sit on layer 0 and all terminals on the last layer. Vertices off every
/// start-terminal path get -1. nullopt when no such layering exists.
std::optional<std::vector<int>> abp_layers(const Abp& a);

/// Equivalent layered ABP built from (vertex, step) copies; terminals reached
/// early are routed to the last layer through label-1 edges. Bucket labels are
/// dropped.
Abp layer_normalize(const Abp& a);

struct LinearizedAbp {
  Abp abp;
  Rational constant;
};

/// Splits off the constant term and rewrites the rest with purely linear edge
/// labels: abp computes f - f(0), constant is f(0).
LinearizedAbp linearize_labels(const Abp& a);

/// Drops vertices that lie on no start-terminal path and zero-labelled edges.
Abp trim(const Abp& a);

}  // namespace abekit
