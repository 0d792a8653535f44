#pragma once

// Explicit models and enumeration oracles for the symmetric polynomial
// families, and the end-to-end reduction pipeline.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abekit/abp.hpp"
#include "abekit/errors.hpp"
#include "abekit/model.hpp"
#include "abekit/semantics.hpp"
#include "abekit/transforms.hpp"

namespace abekit {

enum class PolyKind { Chsym, Lchsym, Esym, Ochsym, Oesym };

std::string to_string(PolyKind k);
std::optional<PolyKind> parse_poly_kind(std::string_view text);

struct PolynomialSpec {
  PolyKind kind = PolyKind::Chsym;
  int n = 1;
  int d = 0;
};

/// Term budget for the oracles: ABEKIT_MAX_TERMS when set, else 10^6.
std::size_t oracle_term_cap();

/// All coefficients 1. chsym uses x_i, lchsym x_{i,j}, esym x_i, and the
/// ordered variants x^{(k)}_i. Throws GuardExceeded past the term cap and
/// PreconditionError on n < 1 or d < 0.
NcPolynomial oracle_polynomial(const PolynomialSpec& spec);

/// Layers 0..d of n vertices; vertex i of layer k-1 feeds vertex j of layer k
/// through x_{i,j} when i <= j. Vertex bucket = row.
Abp lchsym_abp(int n, int d);

/// abp_to_formula of lchsym_abp, annotated against linked_rows(n).
Formula lchsym_formula(int n, int d);

/// Weights w with sum_k w_k p(points[k]) = [t^d] p(t) for every polynomial p of
/// degree below points.size(). Throws PreconditionError on repeated points.
std::vector<Rational> lagrange_coefficient_weights(const std::vector<Rational>& points, int d);

/// sum_t w_t prod_i (1 + sum_j t^j x_i^j) over t = 0..nd, before any cleanup.
Formula chsym_interpolation_formula(int n, int d);

/// The interpolation formula homogenized to degree d and split into an
/// abecedarian family over singletons(n).
FormulaFamily chsym_formula_interpolated(int n, int d, PassLog* log = nullptr);

/// ceil(log_{d'}(D/d)): rounds of degree multiplication by d' that lift d to at
/// least D. 0 when d >= D.
int amplification_count(int d, int dprime, int D);

struct PipelineConfig {
  /// Number of amplify rounds; ignored when target_degree is set.
  int amplifications = 1;
  std::optional<int> target_degree;
  /// Replaces the default lchsym seed (abp_to_formula of the explicit ABP).
  std::optional<Formula> seed;
  /// Gate-level expansion checks in every validator.
  bool semantic_checks = true;
  ExpansionLimits limits;
};

struct StageReport {
  std::string id;
  std::string description;
  Metrics metrics;
  std::vector<std::string> checks;
};

struct PipelineResult {
  Formula final_formula;
  std::vector<StageReport> stages;
  /// esym(esym_n, esym_d) is what the final formula computes.
  int esym_n = 0;
  int esym_d = 0;
};

/// Thrown when a stage output fails its post-condition.
class StageFailure : public Error {
 public:
  StageFailure(std::string stage, const std::string& message)
      : Error("stage " + stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// n = 4 or n = 8. Works with n' = n/2 and
/// d = d' = log2 n: lchsym(n',d') seed, chsym(n',d) base, then amplify rounds
/// and the esym relabeling.
PipelineResult separation_pipeline(int n, const PipelineConfig& config = {});

}  // namespace abekit
