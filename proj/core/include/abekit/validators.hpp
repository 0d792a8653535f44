#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abekit/abp.hpp"
#include "abekit/model.hpp"

namespace abekit {

struct Violation {
  std::string location;
  std::string rule;
  std::string message;
  /// Found by expanding gate polynomials rather than by reading annotations.
  bool semantic = false;
};

enum class ReportClass {
  Ok,
  /// At least one annotation rule is broken.
  Structural,
  /// Annotations are locally consistent but some gate computes the wrong slice.
  SemanticOnly,
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  /// Degree of the root, filled in by the homogeneity checker.
  std::optional<int> degree;

  void add(std::string location, std::string rule, std::string message, bool semantic = false);
  void merge(const ValidationReport& other);
  bool has_rule(std::string_view rule) const;
  ReportClass classify() const;
};

std::string to_string(ReportClass c);

struct CheckOptions {
  bool semantic = true;
  ExpansionLimits limits;
};

/// Rule ids: abc.missing-interval, abc.interval-range, abc.plus-mismatch,
/// abc.times-constant, abc.times-split, abc.leaf-type, abc.semantic-type.
ValidationReport check_circuit_abecedarian(const Circuit& c, const BucketingSystem& buckets,
                                           const CheckOptions& opts = {});

/// Rule ids: abp.missing-label, abp.label-range, abp.decreasing-edge,
/// abp.constant-label, abp.bucket-range, abp.semantic-type.
ValidationReport check_abp_abecedarian(const Abp& a, const BucketingSystem& buckets, const CheckOptions& opts = {});

/// Circuit rules per component plus abc.component-index and abc.root-interval.
ValidationReport check_formula_abecedarian(const FormulaFamily& fam, const BucketingSystem& buckets,
                                           const CheckOptions& opts = {});

/// Circuit rules on a single formula whose top may be an unannotated sum of
/// annotated summands.
ValidationReport check_formula_annotations(const Formula& f, const BucketingSystem& buckets,
                                           const CheckOptions& opts = {});

/// Rule id: hom.plus-degree. Zero constants are degree wildcards.
ValidationReport check_homogeneous(const Formula& f);
ValidationReport check_homogeneous(const Circuit& c);

/// Rule id: link.chain. Throws PreconditionError on a variable that is not
/// doubly indexed.
ValidationReport check_linked(const Formula& f, const CheckOptions& opts = {});

/// Rule id: ml.repeated-variable.
ValidationReport check_multilinear(const Formula& f, const CheckOptions& opts = {});

}  // namespace abekit
