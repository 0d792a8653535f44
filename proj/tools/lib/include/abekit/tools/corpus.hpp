#pragma once

// Seeded generators for small random models.

#include <random>

#include "abekit/abp.hpp"
#include "abekit/model.hpp"

namespace abekit::tools {

using Rng = std::mt19937_64;

struct CorpusOptions {
  int max_nodes = 40;
  /// Variables x_1..x_vars, bucketed as singletons.
  int vars = 4;
  int max_degree = 6;
};

/// Arbitrary fan-in-2 formula with small integer and half-integer constants.
Formula random_formula(Rng& rng, const CorpusOptions& opts = {});
/// Every product respects the bucket order, so the expansion is abecedarian
/// over singletons(vars).
Formula random_abecedarian_formula(Rng& rng, const CorpusOptions& opts = {});
Circuit random_circuit(Rng& rng, const CorpusOptions& opts = {}, bool abecedarian = false);
/// Vertices in topological order. The abecedarian variant carries bucket
/// labels that never decrease along edges, purely linear labels drawing on
/// buckets between the endpoint labels, and so computes an abecedarian
/// polynomial. The general variant may carry constants.
Abp random_abp(Rng& rng, const CorpusOptions& opts = {}, bool abecedarian = false);

/// chsym(n,d) built by peeling first or last letters in random order.
Formula random_chsym_formula(Rng& rng, int n, int d);
/// lchsym(n,d) as in abp_to_formula but with random split layers and sum
/// orders; annotated [row(u), row(w)+1) under an unannotated top sum.
Formula random_lchsym_formula(Rng& rng, int n, int d);

/// x_1 * x_2 * ... * x_k associated to the left, variables cycling mod vars.
Formula left_comb(int leaves, int vars = 4);

}  // namespace abekit::tools
