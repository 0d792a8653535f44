#include <gtest/gtest.h>

#include <random>

#include "abekit/free_algebra.hpp"
#include "abekit/semantics.hpp"
#include "abekit/transforms.hpp"
#include "abekit/tools/corpus.hpp"
#include "abekit/tools/document.hpp"
#include "oracles.hpp"

using namespace abekit;
using abekit::ref::random_poly;

class Seeded : public ::testing::TestWithParam<int> {
 protected:
  std::mt19937_64 rng{static_cast<std::uint64_t>(GetParam())};
};

TEST_P(Seeded, MulAssociative) {
  const auto p = random_poly(rng, 3, 2, 4), q = random_poly(rng, 3, 2, 4), r = random_poly(rng, 3, 2, 4);
  EXPECT_EQ((p * q) * r, p * (q * r));
}

TEST_P(Seeded, MulDistributes) {
  const auto p = random_poly(rng, 3, 2, 4), q = random_poly(rng, 3, 2, 4), r = random_poly(rng, 3, 2, 4);
  EXPECT_EQ(p * (q + r), p * q + p * r);
  EXPECT_EQ((q + r) * p, q * p + r * p);
}

TEST_P(Seeded, ComponentsSumBack) {
  const auto p = random_poly(rng, 3, 4, 8);
  NcPolynomial sum;
  for (int k = 0; k <= 4; ++k) sum += homogeneous_component(p, k);
  EXPECT_EQ(sum, p);
}

TEST_P(Seeded, SlicesPartition) {
  const BucketingSystem B = BucketingSystem::singletons(3);
  const NcPolynomial f = abecedarian_part(random_poly(rng, 3, 4, 10), B);
  NcPolynomial sum;
  for (int a = 1; a <= 4; ++a) sum += subpoly_extract(f, B, a, 4);
  EXPECT_EQ(sum, f);
  for (const auto& [w, c] : f.terms()) {
    if (w.empty()) continue;
    int hits = 0;
    for (int a = 1; a <= 3; ++a) hits += subpoly_extract(f, B, a, 4).coefficient(w) != 0;
    EXPECT_EQ(hits, 1);
  }
}

TEST_P(Seeded, SerializationRoundTrip) {
  tools::Rng r(GetParam());
  auto check = [](const tools::Model& m) {
    tools::Document doc;
    doc.model = m;
    const tools::Document back = tools::parse_document(tools::serialize(doc));
    EXPECT_EQ(back.kind(), doc.kind());
    std::visit([&](const auto& x) {
      using T = std::decay_t<decltype(x)>;
      if constexpr (std::is_same_v<T, NcPolynomial>) {
        EXPECT_EQ(std::get<T>(back.model), x);
      } else {
        EXPECT_EQ(expand(std::get<T>(back.model)), expand(x));
        EXPECT_EQ(tools::serialize(back), tools::serialize(doc));
      }
    }, m);
  };
  check(tools::random_formula(r));
  check(tools::random_circuit(r));
  check(tools::random_abp(r));
  check(tools::random_abp(r, {}, true));
  check(abecedarianize_formula(tools::random_abecedarian_formula(r), BucketingSystem::singletons(4)));
  check(random_poly(rng, 3, 3, 5));
}

INSTANTIATE_TEST_SUITE_P(Corpus, Seeded, ::testing::Range(1, 41));
