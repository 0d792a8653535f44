#include "abekit/constructions.hpp"

#include <cstdlib>
#include <functional>

#include "abekit/validators.hpp"
#include "detail.hpp"

namespace abekit {

std::string to_string(PolyKind k) {
  switch (k) {
    case PolyKind::Chsym:
      return "chsym";
    case PolyKind::Lchsym:
      return "lchsym";
    case PolyKind::Esym:
      return "esym";
    case PolyKind::Ochsym:
      return "ochsym";
    case PolyKind::Oesym:
      return "oesym";
  }
  return "?";
}

std::optional<PolyKind> parse_poly_kind(std::string_view text) {
  for (PolyKind k : {PolyKind::Chsym, PolyKind::Lchsym, PolyKind::Esym, PolyKind::Ochsym, PolyKind::Oesym}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::size_t oracle_term_cap() {
  if (const char* env = std::getenv("ABEKIT_MAX_TERMS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

NcPolynomial oracle_polynomial(const PolynomialSpec& spec) {
  const int n = spec.n;
  const int d = spec.d;
  if (n < 1 || d < 0) {
    throw PreconditionError(to_string(spec.kind) + " needs n >= 1 and d >= 0, got n=" + std::to_string(n) +
                            " d=" + std::to_string(d));
  }
  const std::size_t cap = oracle_term_cap();
  const bool strict = spec.kind == PolyKind::Esym || spec.kind == PolyKind::Oesym;
  const int length = spec.kind == PolyKind::Lchsym ? d + 1 : d;

  NcPolynomial out;
  std::vector<int> idx;
  idx.reserve(length);
  std::function<void(int)> walk = [&](int lo) {
    if (static_cast<int>(idx.size()) == length) {
      Word w;
      switch (spec.kind) {
        case PolyKind::Chsym:
        case PolyKind::Esym:
          for (int i : idx) w.push_back(Var::plain(i));
          break;
        case PolyKind::Ochsym:
        case PolyKind::Oesym:
          for (int k = 0; k < d; ++k) w.push_back(Var::positional(k + 1, idx[k]));
          break;
        case PolyKind::Lchsym:
          for (int k = 0; k < d; ++k) w.push_back(Var::linked(idx[k], idx[k + 1]));
          break;
      }
      out.add_term(w, 1);
      if (out.term_count() > cap) {
        throw GuardExceeded(to_string(spec.kind) + " oracle exceeded " + std::to_string(cap) + " terms");
      }
      return;
    }
    for (int i = lo; i <= n; ++i) {
      idx.push_back(i);
      walk(strict ? i + 1 : i);
      idx.pop_back();
    }
  };
  walk(1);
  return out;
}

Abp lchsym_abp(int n, int d) {
  if (n < 1 || d < 1) {
    throw PreconditionError("lchsym ABP needs n >= 1 and d >= 1, got n=" + std::to_string(n) + " d=" + std::to_string(d));
  }
  Abp a;
  std::vector<std::vector<int>> v(d + 1, std::vector<int>(n + 1));
  for (int k = 0; k <= d; ++k) {
    for (int i = 1; i <= n; ++i) v[k][i] = a.add_vertex(i);
  }
  for (int k = 1; k <= d; ++k) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i; j <= n; ++j) a.add_edge(v[k - 1][i], v[k][j], AffineForm::of(Var::linked(i, j)));
    }
  }
  for (int i = 1; i <= n; ++i) {
    a.add_start(v[0][i]);
    a.add_terminal(v[d][i]);
  }
  return a;
}

Formula lchsym_formula(int n, int d) { return prune_zeros(abp_to_formula(lchsym_abp(n, d))); }

std::vector<Rational> lagrange_coefficient_weights(const std::vector<Rational>& points, int d) {
  const std::size_t k = points.size();
  std::vector<Rational> w(k);
  if (d < 0 || static_cast<std::size_t>(d) >= k) return w;
  for (std::size_t i = 0; i < k; ++i) {
    // numerator prod_{u != i} (s - p_u), lowest degree first
    std::vector<Rational> num{1};
    Rational denom = 1;
    for (std::size_t u = 0; u < k; ++u) {
      if (u == i) continue;
      if (points[u] == points[i]) throw PreconditionError("interpolation points must be distinct");
      std::vector<Rational> next(num.size() + 1);
      for (std::size_t e = 0; e < num.size(); ++e) {
        next[e + 1] += num[e];
        next[e] -= num[e] * points[u];
      }
      num = std::move(next);
      denom *= points[i] - points[u];
    }
    w[i] = num[d] / denom;
  }
  return w;
}

namespace {

GateId balanced_product(GateStore& s, std::vector<GateId> xs) {
  while (xs.size() > 1) {
    std::vector<GateId> next;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) next.push_back(s.mul(xs[i], xs[i + 1]));
    if (xs.size() % 2) next.push_back(xs.back());
    xs = std::move(next);
  }
  return xs.front();
}

}  // namespace

Formula chsym_interpolation_formula(int n, int d) {
  if (n < 1 || d < 1) {
    throw PreconditionError("chsym formula needs n >= 1 and d >= 1, got n=" + std::to_string(n) + " d=" + std::to_string(d));
  }
  std::vector<Rational> points;
  for (int t = 0; t <= n * d; ++t) points.emplace_back(t);
  const auto w = lagrange_coefficient_weights(points, d);

  Formula f;
  std::vector<GateId> evals;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (w[k] == 0) continue;
    const Rational& t = points[k];
    std::vector<GateId> factors;
    if (t != 0) {
      for (int i = 1; i <= n; ++i) {
        std::vector<GateId> terms{f.store.constant(1)};
        Rational tp = 1;
        for (int j = 1; j <= d; ++j) {
          tp *= t;
          std::vector<GateId> xs;
          for (int r = 0; r < j; ++r) xs.push_back(f.store.variable(Var::plain(i)));
          terms.push_back(f.store.mul(f.store.constant(tp), balanced_product(f.store, xs)));
        }
        factors.push_back(*detail::balanced_sum(f.store, terms));
      }
    }
    const GateId prod = factors.empty() ? f.store.constant(1) : balanced_product(f.store, factors);
    evals.push_back(f.store.mul(f.store.constant(w[k]), prod));
  }
  const auto sum = detail::balanced_sum(f.store, evals);
  f.root = sum ? *sum : f.store.constant(0);
  return f;
}

FormulaFamily chsym_formula_interpolated(int n, int d, PassLog* log) {
  const Formula raw = chsym_interpolation_formula(n, d);
  const HomogenizeResult h = homogenize_formula_ex(raw, d);
  if (log) {
    log->record("raw_nodes", static_cast<double>(metrics(raw).nodes));
    log->record("homogenized_nodes", static_cast<double>(metrics(h.formula).nodes));
  }
  AbecedarianizeOptions opts;
  opts.check_input = false;
  return abecedarianize_formula(h.formula, BucketingSystem::singletons(n), opts, log);
}

int amplification_count(int d, int dprime, int D) {
  if (d < 1 || dprime < 2) throw PreconditionError("amplification needs d >= 1 and d' >= 2");
  int rounds = 0;
  long long deg = d;
  while (deg < D) {
    deg *= dprime;
    ++rounds;
  }
  return rounds;
}

namespace {

class Pipeline {
 public:
  explicit Pipeline(const PipelineConfig& cfg) : cfg_(cfg) {
    opts_.semantic = cfg.semantic_checks;
    opts_.limits = cfg.limits;
  }

  StageReport& begin(std::string id, std::string description, const Formula& f) {
    StageReport r;
    r.id = std::move(id);
    r.description = std::move(description);
    r.metrics = metrics(f);
    result.stages.push_back(std::move(r));
    return result.stages.back();
  }

  void require(const ValidationReport& rep, const std::string& what) {
    StageReport& s = result.stages.back();
    if (!rep.ok) {
      const Violation& v = rep.violations.front();
      throw StageFailure(s.id, what + " failed: " + v.rule + " at " + v.location + ": " + v.message);
    }
    s.checks.push_back(what);
  }

  void require_equal(const NcPolynomial& got, const NcPolynomial& want, const std::string& what) {
    StageReport& s = result.stages.back();
    if (!(got == want)) throw StageFailure(s.id, "expansion differs from the " + what + " oracle");
    s.checks.push_back("equals " + what);
  }

  NcPolynomial expand_family(const FormulaFamily& fam) const { return expand(fam, cfg_.limits); }
  NcPolynomial expand_formula(const Formula& f) const { return expand(f, cfg_.limits); }

  const PipelineConfig& cfg_;
  CheckOptions opts_;
  PipelineResult result;
};

std::string params(const char* name, int n, int d) {
  return std::string(name) + "(" + std::to_string(n) + "," + std::to_string(d) + ")";
}

}  // namespace

PipelineResult separation_pipeline(int n, const PipelineConfig& cfg) {
  if (n < 4 || n > 8 || (n & (n - 1)) != 0) {
    throw PreconditionError("pipeline needs n = 4 or n = 8, got " + std::to_string(n));
  }
  int logn = 0;
  while ((1 << logn) < n) ++logn;
  const int half = n / 2;
  const int d = logn;
  const int dlink = logn;
  const int rounds = cfg.target_degree ? amplification_count(d, dlink, *cfg.target_degree)
                                       : cfg.amplifications;
  if (rounds < 0) throw PreconditionError("amplification count must be non-negative");

  Pipeline p(cfg);
  const BucketingSystem rows = BucketingSystem::linked_rows(half);
  const BucketingSystem singles = BucketingSystem::singletons(half);
  const NcPolynomial lchsym = oracle_polynomial({PolyKind::Lchsym, half, dlink});

  Formula seed = cfg.seed ? *cfg.seed : lchsym_formula(half, dlink);
  p.begin("seed", params("lchsym", half, dlink) + " seed formula", seed);
  p.require_equal(p.expand_formula(seed), lchsym, params("lchsym", half, dlink));
  p.require(check_formula_annotations(seed, rows, p.opts_), "abecedarian");

  Formula reduced = depth_reduce(seed);
  p.begin("depth-reduce", "balanced rebuild", reduced);
  p.require_equal(p.expand_formula(reduced), lchsym, params("lchsym", half, dlink));
  p.require(check_formula_annotations(reduced, rows, p.opts_), "abecedarian");

  Formula hom = homogenize_formula(reduced, dlink);
  p.begin("homogenize", "degree-" + std::to_string(dlink) + " component", hom);
  p.require_equal(p.expand_formula(hom), lchsym, params("lchsym", half, dlink));
  p.require(check_homogeneous(hom), "homogeneous");
  p.require(check_formula_annotations(hom, rows, p.opts_), "abecedarian");

  Formula linked = link_formula(hom);
  p.begin("link", "zero leaves that break the chain", linked);
  p.require_equal(p.expand_formula(linked), lchsym, params("lchsym", half, dlink));
  p.require(check_homogeneous(linked), "homogeneous");
  p.require(check_linked(linked, p.opts_), "linked");

  FormulaFamily fam = chsym_formula_interpolated(half, d);
  int degree = d;
  {
    const Formula whole = fam.to_formula();
    p.begin("base", params("chsym", half, d) + " by interpolation", whole);
    p.require_equal(p.expand_family(fam), oracle_polynomial({PolyKind::Chsym, half, d}), params("chsym", half, d));
    p.require(check_homogeneous(whole), "homogeneous");
    p.require(check_formula_abecedarian(fam, singles, p.opts_), "abecedarian");
  }

  for (int r = 1; r <= rounds; ++r) {
    AmplifyOptions ao;
    ao.limits = cfg.limits;
    fam = amplify_degree(fam, linked, ao);
    degree *= dlink;
    const Formula whole = fam.to_formula();
    p.begin("amplify-" + std::to_string(r), params("chsym", half, degree), whole);
    p.require_equal(p.expand_family(fam), oracle_polynomial({PolyKind::Chsym, half, degree}),
                    params("chsym", half, degree));
    p.require(check_homogeneous(whole), "homogeneous");
    p.require(check_formula_abecedarian(fam, singles, p.opts_), "abecedarian");
  }

  const int en = half + degree - 1;
  Formula esym = chsym_to_esym(fam.to_formula());
  p.begin("chsym2esym", params("esym", en, degree), esym);
  p.require_equal(p.expand_formula(esym), oracle_polynomial({PolyKind::Esym, en, degree}), params("esym", en, degree));
  p.require(check_homogeneous(esym), "homogeneous");
  p.require(check_multilinear(esym, p.opts_), "multilinear");

  p.result.final_formula = std::move(esym);
  p.result.esym_n = en;
  p.result.esym_d = degree;
  return std::move(p.result);
}

}  // namespace abekit
