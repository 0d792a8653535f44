#include <gtest/gtest.h>

#include <cmath>

#include "abekit/constructions.hpp"
#include "abekit/errors.hpp"
#include "abekit/transforms.hpp"
#include "abekit/validators.hpp"
#include "abekit/tools/corpus.hpp"
#include "oracles.hpp"

using namespace abekit;
using abekit::ref::brute_chsym;
using abekit::ref::brute_esym;
using abekit::ref::brute_lchsym;

namespace {

NcPolynomial recombine(const BalancedDecomposition& d) {
  return expand(d.L) * expand(d.F1) * expand(d.R) + expand(d.F2);
}

std::size_t size_of(const Formula& f) { return metrics(f).nodes; }

}  // namespace

TEST(DecomposeBalanced, LeftComb) {
  const Formula comb = tools::left_comb(4);
  const BalancedDecomposition d = decompose_balanced(comb, 4);
  EXPECT_EQ(recombine(d), expand(comb));
  const std::size_t s = size_of(comb);
  EXPECT_GE(3 * size_of(d.F1), s);
  EXPECT_LE(3 * size_of(d.F1), 2 * s);
}

TEST(DecomposeBalanced, PlusRootGivesTrivialSides) {
  Formula f;
  auto& s = f.store;
  const GateId l = s.mul(s.mul(s.variable(Var::plain(1)), s.variable(Var::plain(2))), s.variable(Var::plain(3)));
  const GateId r = s.mul(s.variable(Var::plain(4)), s.variable(Var::plain(1)));
  f.root = s.add(l, r);
  const BalancedDecomposition d = decompose_balanced(f, 4);
  EXPECT_EQ(expand(d.L), NcPolynomial::constant(1));
  EXPECT_EQ(expand(d.R), NcPolynomial::constant(1));
  EXPECT_EQ(expand(d.F1), expand(extract_tree(f.store, l)));
  EXPECT_EQ(recombine(d), expand(f));
}

TEST(DecomposeBalanced, BelowBase) { EXPECT_THROW(decompose_balanced(tools::left_comb(4)), PreconditionError); }

TEST(DecomposeBalanced, AnnotatedPartsValidate) {
  tools::Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const Formula f = tools::random_lchsym_formula(rng, 2, 3);
    const BucketingSystem rows = BucketingSystem::linked_rows(2);
    const BalancedDecomposition d = decompose_balanced(f);
    EXPECT_EQ(recombine(d), expand(f));
    for (const Formula* part : {&d.L, &d.F1, &d.R, &d.F2}) {
      const ValidationReport r = check_formula_annotations(*part, rows);
      EXPECT_TRUE(r.ok) << r.violations.front().rule << " " << r.violations.front().message;
    }
  }
}

// The case table as written: when i == j lies strictly inside [a,b) it hands
// F1 the constant interval [i+1, i+1) although F1 may compute a bucket-i polynomial.
TEST(LiteralSplitTable, CaseShapes) {
  const auto inner = literal_split_table(1, 4, 2, 2);
  ASSERT_TRUE(inner);
  EXPECT_EQ((*inner)[1], (Interval{3, 3}));
  const auto outer = literal_split_table(1, 4, 1, 4);
  ASSERT_TRUE(outer);
  EXPECT_EQ((*outer)[0], (Interval{1, 1}));
  EXPECT_EQ((*outer)[2], (Interval{4, 4}));
  EXPECT_FALSE(literal_split_table(2, 4, 1, 3));
  const auto flat = literal_split_table(2, 2, 2, 2);
  ASSERT_TRUE(flat);
  for (const Interval& iv : *flat) EXPECT_EQ(iv, (Interval{2, 2}));
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 5; ++b)
      for (int i = a; i <= b; ++i)
        for (int j = i; j <= b; ++j) EXPECT_TRUE(literal_split_table(a, b, i, j)) << a << b << i << j;
}

TEST(DepthReduce, CombsWithinBound) {
  ExpansionLimits lim;
  lim.max_degree = 64;
  for (int leaves : {8, 16, 32, 64}) {
    const Formula comb = tools::left_comb(leaves);
    const Formula r = depth_reduce(comb);
    EXPECT_LE(metrics(r).depth, depth_reduce_bound(size_of(comb)));
    EXPECT_EQ(expand(r, lim), expand(comb, lim));
  }
}

TEST(DepthReduce, AnnotationsSurvive) {
  const Formula f = lchsym_formula(3, 4);
  const Formula r = depth_reduce(f);
  EXPECT_EQ(expand(r), expand(f));
  EXPECT_TRUE(check_formula_annotations(r, BucketingSystem::linked_rows(3)).ok);
}

TEST(DepthReduce, BoundFormula) {
  EXPECT_NEAR(depth_reduce_bound(15), 3 * std::log(15.0) / std::log(1.5) + 6, 1e-9);
}

TEST(Homogenize, Components) {
  tools::Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const Formula f = tools::random_formula(rng, {25, 3, 5});
    const NcPolynomial p = expand(f);
    for (int k = 0; k <= 5; ++k) {
      const Formula h = homogenize_formula(f, k);
      EXPECT_EQ(expand(h), homogeneous_component(p, k));
      EXPECT_TRUE(check_homogeneous(h).ok);
    }
  }
}

TEST(Homogenize, Bound) {
  EXPECT_DOUBLE_EQ(homogenize_bound(10, 3, 0), 10);
  EXPECT_DOUBLE_EQ(homogenize_bound(10, 1, 2), 10 * 4 * 6);
}

TEST(AbecedarianizeCircuit, KeepsAbecedarianPart) {
  tools::Rng rng(12);
  const BucketingSystem B = BucketingSystem::singletons(4);
  for (int t = 0; t < 30; ++t) {
    const Circuit c = tools::random_circuit(rng);
    const Circuit a = abecedarianize_circuit(c, B);
    EXPECT_EQ(expand(a), abecedarian_part(expand(c), B));
    EXPECT_TRUE(check_circuit_abecedarian(a, B).ok);
  }
}

TEST(AbecedarianizeCircuit, WarnsOnDrop) {
  Circuit c;
  c.outputs = {c.store.mul(c.store.variable(Var::plain(2)), c.store.variable(Var::plain(1)))};
  PassLog log;
  const Circuit a = abecedarianize_circuit(c, BucketingSystem::singletons(2), &log);
  EXPECT_TRUE(expand(a).is_zero());
  EXPECT_EQ(log.warnings.size(), 1u);
}

TEST(AbecedarianizeAbp, KeepsAbecedarianPart) {
  tools::Rng rng(13);
  const BucketingSystem B = BucketingSystem::singletons(4);
  for (int t = 0; t < 30; ++t) {
    const Abp in = linearize_labels(tools::random_abp(rng)).abp;
    const Abp out = abecedarianize_abp(in, B);
    EXPECT_EQ(expand(out), abecedarian_part(expand(in), B));
    EXPECT_TRUE(check_abp_abecedarian(out, B).ok);
    EXPECT_LE(out.vertex_count(), (B.size() + 1) * in.vertex_count());
  }
}

TEST(AbecedarianizeAbp, ConstantLabel) {
  Abp a;
  a.add_vertex();
  a.add_vertex();
  a.add_edge(0, 1, AffineForm::scalar(2));
  a.add_start(0);
  a.add_terminal(1);
  EXPECT_THROW(abecedarianize_abp(a, BucketingSystem::singletons(1)), PreconditionError);
}

TEST(AbecedarianizeFormula, Family) {
  tools::Rng rng(14);
  const BucketingSystem B = BucketingSystem::singletons(3);
  for (int t = 0; t < 20; ++t) {
    const Formula f = tools::random_abecedarian_formula(rng, {30, 3, 6});
    const FormulaFamily fam = abecedarianize_formula(f, B);
    EXPECT_EQ(expand(fam), expand(f));
    EXPECT_TRUE(check_formula_abecedarian(fam, B).ok);
    for (const auto& [i, comp] : fam.components) EXPECT_TRUE(is_tree(comp));
  }
}

TEST(AbecedarianizeFormula, RejectsNonAbecedarian) {
  Formula f;
  f.root = f.store.mul(f.store.variable(Var::plain(2)), f.store.variable(Var::plain(1)));
  EXPECT_THROW(abecedarianize_formula(f, BucketingSystem::singletons(2)), PreconditionError);
}

TEST(AbpToFormula, LchsymAndLayered) {
  for (int n = 1; n <= 3; ++n) {
    for (int d = 1; d <= 4; ++d) {
      const Formula f = abp_to_formula(lchsym_abp(n, d));
      EXPECT_EQ(expand(f), brute_lchsym(n, d));
      EXPECT_TRUE(check_formula_annotations(f, BucketingSystem::linked_rows(n)).ok);
    }
  }
}

TEST(AbpToFormula, NeedsLayers) {
  Abp a;
  for (int i = 0; i < 3; ++i) a.add_vertex();
  a.add_edge(0, 1, AffineForm::of(Var::plain(1)));
  a.add_edge(1, 2, AffineForm::of(Var::plain(2)));
  a.add_edge(0, 2, AffineForm::of(Var::plain(3)));
  a.add_start(0);
  a.add_terminal(2);
  EXPECT_THROW(abp_to_formula(a), PreconditionError);
  EXPECT_EQ(expand(abp_to_formula(a, true)), expand(a));
}

TEST(AbpToFormula, FamilyByStartBucket) {
  const FormulaFamily fam = abp_to_family(lchsym_abp(3, 2), BucketingSystem::linked_rows(3));
  EXPECT_EQ(expand(fam), brute_lchsym(3, 2));
  EXPECT_TRUE(check_formula_abecedarian(fam, BucketingSystem::linked_rows(3)).ok);
}

TEST(Link, ZeroesBrokenChains) {
  // x_{1,1} x_{2,2} + x_{1,2} x_{2,2}: the first monomial breaks the chain
  Formula f;
  auto& s = f.store;
  const GateId a = s.add(s.variable(Var::linked(1, 1), Interval{1, 2}), s.variable(Var::linked(1, 2), Interval{1, 2}),
                         Interval{1, 2});
  f.root = s.mul(a, s.variable(Var::linked(2, 2), Interval{2, 3}), Interval{1, 3});
  const Formula l = link_formula(f);
  NcPolynomial want;
  want.add_term({Var::linked(1, 2), Var::linked(2, 2)}, 1);
  EXPECT_EQ(expand(l), want);
  EXPECT_TRUE(check_linked(l).ok);
}

TEST(Link, NeedsAnnotations) {
  Formula f;
  f.root = f.store.mul(f.store.variable(Var::linked(1, 1)), f.store.variable(Var::linked(1, 1)));
  EXPECT_THROW(link_formula(f), PreconditionError);
}

TEST(Link, LchsymUnchanged) {
  tools::Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    const Formula f = tools::random_lchsym_formula(rng, 3, 3);
    const Formula l = link_formula(f);
    EXPECT_EQ(expand(l), brute_lchsym(3, 3));
    EXPECT_TRUE(check_linked(l).ok);
  }
}

TEST(Subpoly, AllSlices) {
  const int n = 3, d = 3;
  const FormulaFamily fam = chsym_formula_interpolated(n, d);
  const BucketingSystem B = BucketingSystem::singletons(n);
  const NcPolynomial f = brute_chsym(n, d);
  for (int a = 1; a <= n + 1; ++a) {
    for (int b = a; b <= n + 1; ++b) {
      EXPECT_EQ(expand(subpoly_formula(fam, a, b)), subpoly_extract(f, B, a, b)) << a << "," << b;
      EXPECT_EQ(expand(subpoly_formula(fam, a, b, &B)), subpoly_extract(f, B, a, b));
    }
  }
  EXPECT_THROW(subpoly_formula(fam, 2, 1), PreconditionError);
  EXPECT_THROW(subpoly_formula(fam, 1, n + 2), PreconditionError);
}

TEST(PositionIndices, Comb) {
  const Formula comb = tools::left_comb(4);
  const auto pos = position_indices(comb);
  std::vector<int> seen;
  for (std::size_t i = 0; i < comb.store.size(); ++i)
    if (comb.store[static_cast<GateId>(i)].op == Op::Var) seen.push_back(pos[i]);
  EXPECT_EQ(seen, (std::vector<int>{1, 2, 3, 4}));
}

TEST(Amplify, ChsymTimesLinked) {
  for (int n : {2, 3}) {
    for (int d : {1, 2}) {
      for (int dl : {2, 3}) {
        const FormulaFamily base = chsym_formula_interpolated(n, d);
        const Formula linked = link_formula(lchsym_formula(n, dl));
        AmplifyOptions opts;
        opts.verify = true;
        const FormulaFamily out = amplify_degree(base, linked, opts);
        EXPECT_EQ(expand(out), brute_chsym(n, d * dl)) << n << d << dl;
        EXPECT_TRUE(check_formula_abecedarian(out, BucketingSystem::singletons(n)).ok);
      }
    }
  }
}

TEST(ChsymToEsym, Relabels) {
  tools::Rng rng(16);
  for (int n = 1; n <= 4; ++n) {
    for (int d = 1; d <= 4; ++d) {
      const Formula f = chsym_to_esym(tools::random_chsym_formula(rng, n, d));
      EXPECT_EQ(expand(f), brute_esym(n + d - 1, d));
      EXPECT_TRUE(check_multilinear(f).ok);
      EXPECT_TRUE(check_homogeneous(f).ok);
    }
  }
}

TEST(ChsymToEsym, NeedsHomogeneous) {
  Formula f;
  f.root = f.store.add(f.store.variable(Var::plain(1)), f.store.mul(f.store.variable(Var::plain(1)), f.store.variable(Var::plain(1))));
  EXPECT_THROW(chsym_to_esym(f), PreconditionError);
}

TEST(Prune, Identities) {
  Formula f;
  auto& s = f.store;
  const GateId x = s.variable(Var::plain(1));
  f.root = s.add(s.mul(s.constant(1), x), s.mul(s.constant(0), s.variable(Var::plain(2))));
  const Formula p = prune_zeros(f);
  EXPECT_EQ(metrics(p).nodes, 1u);
  EXPECT_EQ(expand(p), expand(f));
}
