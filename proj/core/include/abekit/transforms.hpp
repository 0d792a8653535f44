#pragma once

// Semantics-preserving passes over formulas, circuits and ABPs.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abekit/abp.hpp"
#include "abekit/model.hpp"
#include "abekit/semantics.hpp"

namespace abekit {

/// Optional side channel for warnings and measured figures of a pass.
struct PassLog {
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> figures;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  void record(std::string name, double value) { figures.emplace_back(std::move(name), value); }
  std::optional<double> figure(std::string_view name) const;
};


/// Folds constant subtrees and the identities x+0, x*0, x*1, 1*x. Surviving
/// gates keep their annotations.
Formula prune_zeros(const Formula& f);
/// Same folding on a DAG; outputs that fold to zero are dropped.
Circuit prune_zeros(const Circuit& c);
/// Drops zero edges and vertices that lie on no start-terminal path.
Abp prune_zeros(const Abp& a);

Formula strip_annotations(const Formula& f);


/// Recomputes interval annotations from the leaves up. Every typed gate gets
/// the tightest interval consistent with its children; a root whose summands
/// start in different buckets is left as an unannotated plus spine. With a
/// target, the root is widened to it and the widening is pushed down.
/// Throws PreconditionError when a product cannot be made abecedarian.
Formula reannotate(const Formula& f, const BucketingSystem& buckets, std::optional<Interval> target = {});

/// As above, reading each variable's bucket from its leaf annotation.
Formula reannotate_from_leaves(const Formula& f, std::optional<Interval> target = {});

/// Groups the summands of an (annotated or spine-topped) formula by left
/// bucket index and widens each group to [i, m+1).
FormulaFamily collect_family(const Formula& f, const BucketingSystem& buckets);


struct BalancedDecomposition {
  Formula L;
  Formula F1;
  Formula R;
  Formula F2;
  std::optional<Interval> split_interval;
};

inline constexpr std::size_t kDepthReduceBase = 8;

/// One balanced split. Throws PreconditionError when F has at most `base`
/// nodes.
BalancedDecomposition decompose_balanced(const Formula& f, std::size_t base = kDepthReduceBase);

/// Interval triple (L, F1, R) prescribed for the split parts when the root has
/// interval [a,b) and the split vertex [i,j), read verbatim from the case
/// table. nullopt where the table has no case.
std::optional<std::array<Interval, 3>> literal_split_table(int a, int b, int i, int j);

/// Recursive balanced rebuild L'*F1'*R' + F2'. Annotated inputs come back
/// annotated with the same root interval.
Formula depth_reduce(const Formula& f, std::size_t base = kDepthReduceBase);

/// Upper bound 3*log_{3/2}(s) + 6 on the output depth.
double depth_reduce_bound(std::size_t nodes);


struct HomogenizeResult {
  Formula formula;
  /// Nodes and depth of the depth-reduced formula fed to the gate copying.
  std::size_t reduced_nodes = 0;
  int reduced_depth = 0;
};

/// Formula computing the degree-d homogeneous component of F.
HomogenizeResult homogenize_formula_ex(const Formula& f, int d);
Formula homogenize_formula(const Formula& f, int d);

/// s * d^2 * C(2r+d, d)
double homogenize_bound(std::size_t s, int r, int d);


/// Gate copies (v,[a,b)) wired per the interval product rule. Monomials that
/// fit no slice are dropped; if `log` is given and the input is small enough
/// to expand, a warning reports them.
Circuit abecedarianize_circuit(const Circuit& c, const BucketingSystem& buckets, PassLog* log = nullptr);

/// Vertex copies (v,a), a in [m]; edge (u,a)->(v,b) for a <= b carries the
/// bucket-a part of the label. Throws PreconditionError on labels with a
/// constant term (run linearize_labels first).
Abp abecedarianize_abp(const Abp& a, const BucketingSystem& buckets, PassLog* log = nullptr);

struct AbecedarianizeOptions {
  /// Expand the input and refuse non-abecedarian polynomials.
  bool check_input = true;
  ExpansionLimits limits;
};

FormulaFamily abecedarianize_formula(const Formula& f, const BucketingSystem& buckets,
                                     const AbecedarianizeOptions& opts = {}, PassLog* log = nullptr);

/// s' * m^2 * C(4r+m, m)
double abecedarianize_formula_bound(std::size_t s, int r, int m);


/// Divide and conquer over the middle layer. Throws PreconditionError on a
/// non-layered ABP unless `normalize` is set. Bucket-labelled ABPs produce
/// gates annotated [label(u), label(v)+1) under an unannotated top sum.
Formula abp_to_formula(const Abp& a, bool normalize = false);

/// abp_to_formula grouped by start label into a family over `buckets`.
FormulaFamily abp_to_family(const Abp& a, const BucketingSystem& buckets);


/// Zeroes each leaf x_{i,j} whose governing product's right sibling interval
/// starts at a bucket other than j.
Formula link_formula(const Formula& f);

/// Component a with every leaf in buckets b..m set to zero. Buckets come from
/// leaf annotations unless `buckets` is given.
Formula subpoly_formula(const FormulaFamily& fam, int a, int b, const BucketingSystem* buckets = nullptr);

struct AmplifyOptions {
  /// Check both inputs against the oracles first.
  bool verify = false;
  ExpansionLimits limits;
};

/// Substitutes base sub-formulas for the leaves of a linked formula.
FormulaFamily amplify_degree(const FormulaFamily& base, const Formula& linked, const AmplifyOptions& opts = {});

/// 1 + sum of the degrees of left siblings of products on the root path, per
/// variable leaf; other gates get 0.
std::vector<int> position_indices(const Formula& f);

/// Relabels x_i at position k to x_{i+k-1}. Throws PreconditionError on a
/// non-homogeneous input.
Formula chsym_to_esym(const Formula& f);

}  // namespace abekit
