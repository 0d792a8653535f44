// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "abekit/constructions.hpp"
#include "abekit/transforms.hpp"
#include "abekit/validators.hpp"
#include "abekit/tools/corpus.hpp"
#include "abekit/tools/document.hpp"
#include "oracles.hpp"

using namespace abekit;
using namespace abekit::tools;
namespace oracle = abekit::ref;

namespace {

constexpr int kInstances = 200;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const CorpusOptions kCorpus{40, 4, 6};

// Keep only monomials whose doubly indexed letters chain.
NcPolynomial linked_part(const NcPolynomial& p) {
  NcPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    bool chained = true;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) chained = chained && w[k].second() == w[k + 1].first();
    if (chained) out.add_term(w, c);
  }
  return out;
}

// lchsym formula with some leaves x_{i,j} rewritten to x_{i,j'}: still
// annotated and abecedarian, but no longer linked.
Formula perturbed_lchsym(Rng& rng, int n, int d) {
  const Formula f = random_lchsym_formula(rng, n, d);
  Formula out;
  std::vector<GateId> map(f.store.size());
  for (GateId id = 0; id < f.store.size(); ++id) {
    const Gate& g = f.store[id];
    switch (g.op) {
      case Op::Const:
        map[id] = out.store.constant(f.store.value(g), g.interval);
        break;
      case Op::Var: {
        Var v = f.store.var(g);
        if (std::bernoulli_distribution(0.3)(rng)) {
          v = Var::linked(v.first(), std::uniform_int_distribution<int>(v.first(), n)(rng));
        }
        map[id] = out.store.variable(v, g.interval);
        break;
      }
      default:
        map[id] = out.store.binary(g.op, map[g.lhs], map[g.rhs], g.interval);
    }
  }
  out.root = map[f.root];
  return out;
}

struct PassRun {
  std::string name;
  std::function<std::optional<std::string>(Rng&)> run;
};

Outcome oracle_equivalence() {
  const BucketingSystem B = BucketingSystem::singletons(kCorpus.vars);
  auto mismatch = [](bool same) -> std::optional<std::string> {
    if (same) return std::nullopt;
    return std::string("expansion mismatch");
  };
  std::vector<PassRun> passes{
      {"prune", [&](Rng& r) { const Formula f = random_formula(r, kCorpus); return mismatch(expand(prune_zeros(f)) == expand(f)); }},
      {"decompose", [&](Rng& r) -> std::optional<std::string> {
         const Formula f = random_formula(r, kCorpus);
         if (metrics(f).nodes <= kDepthReduceBase) return std::nullopt;
         const BalancedDecomposition d = decompose_balanced(f);
         return mismatch(expand(d.L) * expand(d.F1) * expand(d.R) + expand(d.F2) == expand(f));
       }},
      {"depth-reduce", [&](Rng& r) { const Formula f = random_formula(r, kCorpus); return mismatch(expand(depth_reduce(f)) == expand(f)); }},
      {"homogenize", [&](Rng& r) {
         const Formula f = random_formula(r, kCorpus);
         const int k = std::uniform_int_distribution<int>(0, 6)(r);
         return mismatch(expand(homogenize_formula(f, k)) == homogeneous_component(expand(f), k));
       }},
      {"abc-circuit", [&](Rng& r) {
         const Circuit c = random_circuit(r, kCorpus);
         return mismatch(expand(abecedarianize_circuit(c, B)) == abecedarian_part(expand(c), B));
       }},
      {"abc-abp", [&](Rng& r) {
         const Abp a = linearize_labels(random_abp(r, kCorpus)).abp;
         return mismatch(expand(abecedarianize_abp(a, B)) == abecedarian_part(expand(a), B));
       }},
      {"abc-formula", [&](Rng& r) {
         const Formula f = random_abecedarian_formula(r, kCorpus);
         return mismatch(expand(abecedarianize_formula(f, B)) == expand(f));
       }},
      {"abp2formula", [&](Rng& r) {
         const Abp a = random_abp(r, kCorpus);
         return mismatch(expand(abp_to_formula(a, true)) == expand(a));
       }},
      {"link", [&](Rng& r) {
         const int n = std::uniform_int_distribution<int>(2, 4)(r);
         const int d = std::uniform_int_distribution<int>(1, 3)(r);
         const Formula f = perturbed_lchsym(r, n, d);
         return mismatch(expand(link_formula(f)) == linked_part(expand(f)));
       }},
      {"subpoly", [&](Rng& r) {
         const Formula f = random_abecedarian_formula(r, kCorpus);
         const FormulaFamily fam = abecedarianize_formula(f, B);
         const int a = std::uniform_int_distribution<int>(1, B.size() + 1)(r);
         const int b = std::uniform_int_distribution<int>(a, B.size() + 1)(r);
         return mismatch(expand(subpoly_formula(fam, a, b)) == subpoly_extract(expand(f), B, a, b));
       }},
      {"amplify", [&](Rng& r) {
         const int n = std::uniform_int_distribution<int>(1, 4)(r);
         const int d = std::uniform_int_distribution<int>(1, 3)(r);
         const int dl = std::uniform_int_distribution<int>(1, 6 / d)(r);
         const BucketingSystem S = BucketingSystem::singletons(n);
         const FormulaFamily base = abecedarianize_formula(random_chsym_formula(r, n, d), S);
         const Formula linked = link_formula(random_lchsym_formula(r, n, dl));
         return mismatch(expand(amplify_degree(base, linked)) == oracle::brute_chsym(n, d * dl));
       }},
      {"chsym2esym", [&](Rng& r) {
         const int n = std::uniform_int_distribution<int>(1, 4)(r);
         const int d = std::uniform_int_distribution<int>(1, 6)(r);
         return mismatch(expand(chsym_to_esym(random_chsym_formula(r, n, d))) == oracle::brute_esym(n + d - 1, d));
       }},
  };
  Outcome o;
  std::ostringstream summary;
  for (const PassRun& p : passes) {
    Rng rng(kSeed);
    for (int i = 0; i < kInstances; ++i) {
      if (auto why = p.run(rng)) {
        o.fail(p.name + " instance " + std::to_string(i) + ": " + *why);
        break;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(passes.size()) + " passes x " + std::to_string(kInstances) + " instances";
  return o;
}

Outcome lchsym_abp_shape() {
  Outcome o;
  for (int n = 1; n <= 5; ++n) {
    for (int d = 1; d <= 5; ++d) {
      const Abp a = lchsym_abp(n, d);
      const std::string at = "(" + std::to_string(n) + "," + std::to_string(d) + ")";
      if (a.vertex_count() != n * (d + 1)) o.fail("vertex count at " + at);
      if (a.edge_count() != static_cast<std::size_t>(d * n * (n + 1) / 2)) o.fail("edge count at " + at);
      if (!check_abp_abecedarian(a, BucketingSystem::linked_rows(n)).ok) o.fail("checker rejects " + at);
      if (!(expand(a) == oracle::brute_lchsym(n, d))) o.fail("expansion differs at " + at);
    }
  }
  if (o.ok) o.detail = "n,d in 1..5";
  return o;
}

Outcome depth_bound() {
  Outcome o;
  ExpansionLimits lim;
  lim.max_degree = 64;
  std::ostringstream detail;
  for (int leaves : {8, 16, 32, 64}) {
    const Formula comb = left_comb(leaves);
    const std::size_t s = metrics(comb).nodes;
    const Formula r = depth_reduce(comb);
    const int depth = metrics(r).depth;
    const double bound = depth_reduce_bound(s);
    detail << "s=" << s << " depth " << depth << "<=" << static_cast<int>(bound) << " ";
    if (depth > bound) o.fail("s=" + std::to_string(s) + " depth " + std::to_string(depth));
    if (!(expand(r, lim) == expand(comb, lim))) o.fail("s=" + std::to_string(s) + " expansion differs");
  }
  if (o.ok) o.detail = detail.str();
  return o;
}

Outcome homogenisation() {
  Outcome o;
  Rng rng(kSeed + 4);
  for (int i = 0; i < 100 && o.ok; ++i) {
    const Formula f = random_formula(rng, kCorpus);
    const NcPolynomial p = expand(f);
    for (int k = 0; k <= 6; ++k) {
      const HomogenizeResult h = homogenize_formula_ex(f, k);
      const std::string at = "formula " + std::to_string(i) + " k=" + std::to_string(k);
      if (!(expand(h.formula) == homogeneous_component(p, k))) o.fail(at + ": expansion");
      if (!check_homogeneous(h.formula).ok) o.fail(at + ": not homogeneous");
      if (!is_tree(h.formula)) o.fail(at + ": not a tree");
      const double bound = homogenize_bound(h.reduced_nodes, h.reduced_depth, k);
      if (static_cast<double>(metrics(h.formula).nodes) > bound) o.fail(at + ": size over bound");
    }
  }
  if (o.ok) o.detail = "100 formulas, k=0..6";
  return o;
}

// Per input gate the construction emits at most (m+1) constant copies plus,
// for each a < b, one copy and at most 2(b-a)+2 helper gates. With m >= 1 that
// stays under 7*m^3.
constexpr double kCircuitK = 7.0;

Outcome abecedarianization_bounds() {
  Outcome o;
  const BucketingSystem B = BucketingSystem::singletons(kCorpus.vars);
  const int m = B.size();
  Rng rng(kSeed + 5);
  double worst_abp = 0, worst_circuit = 0;
  for (int i = 0; i < kInstances; ++i) {
    const Abp a = random_abp(rng, kCorpus, true);
    const Abp out = abecedarianize_abp(a, B);
    worst_abp = std::max(worst_abp, static_cast<double>(out.vertex_count()) / a.vertex_count());
    if (out.vertex_count() > (m + 1) * a.vertex_count()) o.fail("abp " + std::to_string(i) + " over (m+1)s");
    if (!check_abp_abecedarian(out, B).ok) o.fail("abp " + std::to_string(i) + " rejected");
    if (!(expand(out) == expand(a))) o.fail("abp " + std::to_string(i) + " expansion");

    const Circuit c = random_circuit(rng, kCorpus, true);
    const Circuit oc = abecedarianize_circuit(c, B);
    const double in = static_cast<double>(c.store.size());
    const double gates = static_cast<double>(oc.store.size());
    worst_circuit = std::max(worst_circuit, gates / (in * m * m * m));
    if (gates > kCircuitK * m * m * m * in) o.fail("circuit " + std::to_string(i) + " over K m^3 s");
    if (!check_circuit_abecedarian(oc, B).ok) o.fail("circuit " + std::to_string(i) + " rejected");
    if (!(expand(oc) == expand(c))) o.fail("circuit " + std::to_string(i) + " expansion");
  }
  if (o.ok) {
    std::ostringstream d;
    d << "abp max ratio " << worst_abp << " (cap " << m + 1 << "), circuit max ratio/m^3 " << worst_circuit
      << " (K=" << kCircuitK << ")";
    o.detail = d.str();
  }
  return o;
}

Outcome interpolation() {
  Outcome o;
  for (int n = 1; n <= 5; ++n) {
    for (int d = 1; d <= 4; ++d) {
      const FormulaFamily fam = chsym_formula_interpolated(n, d);
      const std::string at = "(" + std::to_string(n) + "," + std::to_string(d) + ")";
      if (!(expand(fam) == oracle::brute_chsym(n, d))) o.fail("expansion differs at " + at);
      if (!check_homogeneous(fam.to_formula()).ok) o.fail("not homogeneous at " + at);
      if (!check_formula_abecedarian(fam, BucketingSystem::singletons(n)).ok) o.fail("not abecedarian at " + at);
    }
  }
  if (o.ok) o.detail = "n<=5, d<=4";
  return o;
}

Outcome pipeline() {
  Outcome o;
  std::ostringstream detail;
  for (int n : {4, 8}) {
    try {
      const PipelineResult r = separation_pipeline(n);
      const Formula& f = r.final_formula;
      if (!check_homogeneous(f).ok) o.fail("n=" + std::to_string(n) + " not homogeneous");
      if (!check_multilinear(f).ok) o.fail("n=" + std::to_string(n) + " not multilinear");
      if (!(expand(f) == oracle::subset_esym(r.esym_n, r.esym_d))) o.fail("n=" + std::to_string(n) + " differs from esym");
      detail << "n=" << n << " -> esym(" << r.esym_n << "," << r.esym_d << ") " << r.stages.size() << " stages ";
    } catch (const Error& e) {
      o.fail("n=" + std::to_string(n) + ": " + e.what());
    }
  }
  if (o.ok) o.detail = detail.str();
  return o;
}

// Brute-force counts for n, d = 1..6, pinned.
constexpr int kChsymCounts[6][6] = {{1, 1, 1, 1, 1, 1},      {2, 3, 4, 5, 6, 7},          {3, 6, 10, 15, 21, 28},
                                    {4, 10, 20, 35, 56, 84}, {5, 15, 35, 70, 126, 210}, {6, 21, 56, 126, 252, 462}};
constexpr int kLchsymCounts[6][6] = {{1, 1, 1, 1, 1, 1},        {3, 4, 5, 6, 7, 8},          {6, 10, 15, 21, 28, 36},
                                     {10, 20, 35, 56, 84, 120}, {15, 35, 70, 126, 210, 330}, {21, 56, 126, 252, 462, 792}};

Outcome monomial_counts() {
  Outcome o;
  for (int n = 1; n <= 6; ++n) {
    for (int d = 1; d <= 6; ++d) {
      const std::size_t ch = oracle_polynomial({PolyKind::Chsym, n, d}).term_count();
      const std::size_t lch = oracle_polynomial({PolyKind::Lchsym, n, d}).term_count();
      const std::string at = "(" + std::to_string(n) + "," + std::to_string(d) + ")";
      if (ch != static_cast<std::size_t>(kChsymCounts[n - 1][d - 1]) || ch != oracle::binom(n + d - 1, d)) {
        o.fail("chsym count at " + at);
      }
      if (lch != static_cast<std::size_t>(kLchsymCounts[n - 1][d - 1]) || lch != oracle::binom(n + d, d + 1)) {
        o.fail("lchsym count at " + at);
      }
    }
  }
  if (o.ok) o.detail = "n,d in 1..6";
  return o;
}

ValidationReport run_check(const Document& doc, const std::string& name) {
  const BucketingSystem B = buckets_for(doc);
  if (name == "abc-circuit") return check_circuit_abecedarian(std::get<Circuit>(doc.model), B);
  if (name == "abc-abp") return check_abp_abecedarian(std::get<Abp>(doc.model), B);
  if (name == "abc-formula") return check_formula_abecedarian(std::get<FormulaFamily>(doc.model), B);
  if (name == "abc-annotations") return check_formula_annotations(std::get<Formula>(doc.model), B);
  const Formula f = doc.kind() == DocKind::Family ? std::get<FormulaFamily>(doc.model).to_formula()
                                                  : std::get<Formula>(doc.model);
  if (name == "homogeneous") return check_homogeneous(f);
  if (name == "linked") return check_linked(f);
  if (name == "multilinear") return check_multilinear(f);
  throw Error("unknown check " + name);
}

Outcome validator_soundness() {
  Outcome o;
  const std::string root = ABEKIT_TEST_DATA;
  int rejected = 0, accepted = 0;
  try {
    const auto bad = nlohmann::json::parse(std::ifstream(root + "/invalid/manifest.json"));
    for (const auto& e : bad) {
      const std::string file = e["file"];
      const ValidationReport r = run_check(read_document(root + "/invalid/" + file), e["check"]);
      if (r.ok || !r.has_rule(e["rule"].get<std::string>())) {
        o.fail(file + " not rejected with " + e["rule"].get<std::string>());
      } else {
        ++rejected;
      }
    }
    const auto good = nlohmann::json::parse(std::ifstream(root + "/valid/manifest.json"));
    for (const auto& e : good) {
      const std::string file = e["file"];
      const Document doc = read_document(root + "/valid/" + file);
      for (const auto& c : e["checks"]) {
        const ValidationReport r = run_check(doc, c);
        if (!r.ok) o.fail(file + " rejected by " + c.get<std::string>() + ": " + r.violations.front().rule);
      }
      ++accepted;
    }
  } catch (const std::exception& e) {
    o.fail(e.what());
  }
  if (rejected != 6) o.fail("expected 6 violating documents, rejected " + std::to_string(rejected));
  if (o.ok) o.detail = std::to_string(rejected) + " rejected, " + std::to_string(accepted) + " golden accepted";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle-equivalence", oracle_equivalence},   {"lchsym-abp", lchsym_abp_shape},
      {"depth-reduction-bound", depth_bound},       {"homogenisation", homogenisation},
      {"abecedarianization-bounds", abecedarianization_bounds}, {"interpolation", interpolation},
      {"pipeline", pipeline},                       {"monomial-counts", monomial_counts},
      {"validator-soundness", validator_soundness},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s (%.1fs) %s\n", o.ok ? "PASS" : "FAIL", index, name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
