#include "abekit/validators.hpp"

#include <algorithm>
#include <set>

#include "abekit/errors.hpp"
#include "abekit/semantics.hpp"

namespace abekit {

void ValidationReport::add(std::string location, std::string rule, std::string message, bool semantic) {
  ok = false;
  violations.push_back({std::move(location), std::move(rule), std::move(message), semantic});
}

void ValidationReport::merge(const ValidationReport& other) {
  for (const auto& v : other.violations) add(v.location, v.rule, v.message, v.semantic);
}

bool ValidationReport::has_rule(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

ReportClass ValidationReport::classify() const {
  if (violations.empty()) return ReportClass::Ok;
  const bool structural = std::any_of(violations.begin(), violations.end(), [](const Violation& v) { return !v.semantic; });
  return structural ? ReportClass::Structural : ReportClass::SemanticOnly;
}

std::string to_string(ReportClass c) {
  switch (c) {
    case ReportClass::Ok:
      return "ok";
    case ReportClass::Structural:
      return "structural";
    case ReportClass::SemanticOnly:
      return "semantic-only";
  }
  return "?";
}

namespace {

std::string gate_location(const std::string& prefix, GateId id) { return prefix + "gate " + std::to_string(id); }

bool interval_in_range(const Interval& iv, int m) { return iv.a >= 1 && iv.a <= iv.b && iv.b <= m + 1; }

// Gates of the unannotated plus spine above the annotated summands.
std::set<GateId> plus_spine(const GateStore& store, GateId root) {
  std::set<GateId> spine;
  std::vector<GateId> stack{root};
  while (!stack.empty()) {
    const GateId id = stack.back();
    stack.pop_back();
    const Gate& g = store[id];
    if (g.op != Op::Add || g.interval) continue;
    spine.insert(id);
    stack.push_back(g.lhs);
    stack.push_back(g.rhs);
  }
  return spine;
}

struct GateRuleChecker {
  const GateStore& store;
  const BucketingSystem& buckets;
  const CheckOptions& opts;
  std::string prefix;
  ValidationReport& report;

  bool wildcard(GateId id) const { return store.is_zero(id); }

  std::optional<Interval> child(GateId id) const { return store[id].interval; }

  void check(const std::vector<GateId>& roots, const std::set<GateId>& spine) {
    const int m = buckets.size();
    const auto live = reachable(store, roots);
    bool covered = true;
    for (std::size_t i = 0; i < store.size(); ++i) {
      if (!live[i]) continue;
      const GateId id = static_cast<GateId>(i);
      const Gate& g = store[id];
      const std::string where = gate_location(prefix, id);
      if (spine.contains(id)) continue;
      if (!g.interval) {
        report.add(where, "abc.missing-interval", "gate has no interval annotation");
        continue;
      }
      const Interval iv = *g.interval;
      if (!interval_in_range(iv, m)) {
        report.add(where, "abc.interval-range", to_string(iv) + " outside 1 <= a <= b <= " + std::to_string(m + 1));
        continue;
      }
      switch (g.op) {
        case Op::Var: {
          const Var v = store.var(g);
          const auto k = buckets.bucket_of(v);
          if (!k) {
            covered = false;
            report.add(where, "abc.leaf-type", to_string(v) + " is not covered by the bucketing system");
          } else if (iv.a != *k || iv.b <= *k) {
            report.add(where, "abc.leaf-type",
                       to_string(v) + " lies in bucket " + std::to_string(*k) + " but is annotated " + to_string(iv));
          }
          break;
        }
        case Op::Const:
          if (!wildcard(id) && !iv.is_constant()) {
            report.add(where, "abc.leaf-type", "nonzero constant annotated " + to_string(iv));
          }
          break;
        case Op::Add:
          check_plus(where, g, iv);
          break;
        case Op::Mul:
          check_times(where, g, iv);
          break;
      }
    }
    if (!opts.semantic || !covered) return;
    const auto poly = expand_gates(store, roots, opts.limits);
    for (std::size_t i = 0; i < store.size(); ++i) {
      if (!live[i]) continue;
      const Gate& g = store[static_cast<GateId>(i)];
      if (!g.interval || !interval_in_range(*g.interval, m)) continue;
      if (!is_of_type(poly[i], buckets, g.interval->a, g.interval->b)) {
        report.add(gate_location(prefix, static_cast<GateId>(i)), "abc.semantic-type",
                   "computed polynomial is not of type " + to_string(*g.interval), true);
      }
    }
  }

  void check_plus(const std::string& where, const Gate& g, const Interval& iv) {
    for (GateId c : {g.lhs, g.rhs}) {
      const auto ci = child(c);
      if (!ci || wildcard(c)) continue;
      if (*ci != iv) {
        report.add(where, "abc.plus-mismatch", "plus gate " + to_string(iv) + " has child " + to_string(*ci));
      }
    }
  }

  void check_times(const std::string& where, const Gate& g, const Interval& iv) {
    if (wildcard(g.lhs) || wildcard(g.rhs)) return;
    const auto l = child(g.lhs);
    const auto r = child(g.rhs);
    if (!l || !r) return;
    if (iv.is_constant()) {
      if (*l != iv || *r != iv) {
        report.add(where, "abc.times-constant",
                   "times gate " + to_string(iv) + " has children " + to_string(*l) + " and " + to_string(*r));
      }
      return;
    }
    const int a = iv.a;
    const int b = iv.b;
    const bool right_constant = *l == Interval{a, b} && *r == Interval{b, b};
    const bool left_constant = *l == Interval{a, a} && *r == Interval{a, b};
    const bool split = l->a == a && r->b == b && r->a >= a && r->a < b && l->b == r->a + 1;
    if (!right_constant && !left_constant && !split) {
      report.add(where, "abc.times-split",
                 "times gate " + to_string(iv) + " has children " + to_string(*l) + " and " + to_string(*r));
    }
  }
};

}  // namespace

ValidationReport check_circuit_abecedarian(const Circuit& c, const BucketingSystem& buckets, const CheckOptions& opts) {
  ValidationReport report;
  GateRuleChecker{c.store, buckets, opts, "", report}.check(c.outputs, {});
  return report;
}

ValidationReport check_formula_annotations(const Formula& f, const BucketingSystem& buckets, const CheckOptions& opts) {
  ValidationReport report;
  GateRuleChecker{f.store, buckets, opts, "", report}.check({f.root}, plus_spine(f.store, f.root));
  return report;
}

ValidationReport check_formula_abecedarian(const FormulaFamily& fam, const BucketingSystem& buckets,
                                           const CheckOptions& opts) {
  ValidationReport report;
  const int m = buckets.size();
  for (const auto& [i, comp] : fam.components) {
    const std::string prefix = "component " + std::to_string(i) + " ";
    if (i < 1 || i > m + 1) {
      report.add("component " + std::to_string(i), "abc.component-index",
                 "component index outside 1.." + std::to_string(m + 1));
      continue;
    }
    const Interval expected{i, m + 1};
    const auto& root_iv = comp.root_gate().interval;
    if (root_iv && *root_iv != expected && !comp.store.is_zero(comp.root)) {
      report.add(prefix + "root", "abc.root-interval",
                 "root annotated " + to_string(*root_iv) + ", expected " + to_string(expected));
    }
    GateRuleChecker{comp.store, buckets, opts, prefix, report}.check({comp.root}, {});
  }
  return report;
}

namespace {

ValidationReport homogeneity(const GateStore& store, const std::vector<GateId>& roots) {
  ValidationReport report;
  const auto live = reachable(store, roots);
  std::vector<int> deg(store.size(), -1);
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (!live[i]) continue;
    const GateId id = static_cast<GateId>(i);
    const Gate& g = store[id];
    switch (g.op) {
      case Op::Const:
        deg[i] = store.is_zero(id) ? -1 : 0;
        break;
      case Op::Var:
        deg[i] = 1;
        break;
      case Op::Add: {
        const int l = deg[g.lhs];
        const int r = deg[g.rhs];
        if (l >= 0 && r >= 0 && l != r) {
          report.add(gate_location("", id), "hom.plus-degree",
                     "plus gate mixes degrees " + std::to_string(l) + " and " + std::to_string(r));
        }
        deg[i] = std::max(l, r);
        break;
      }
      case Op::Mul:
        deg[i] = (deg[g.lhs] < 0 || deg[g.rhs] < 0) ? -1 : deg[g.lhs] + deg[g.rhs];
        break;
    }
  }
  std::optional<int> top;
  for (GateId r : roots) {
    if (deg[r] < 0) continue;
    if (top && *top != deg[r]) {
      report.add(gate_location("", r), "hom.plus-degree",
                 "outputs mix degrees " + std::to_string(*top) + " and " + std::to_string(deg[r]));
    }
    top = std::max(top.value_or(0), deg[r]);
  }
  if (report.ok) report.degree = top;
  return report;
}

template <typename MonomialRule>
ValidationReport per_gate_monomials(const Formula& f, const CheckOptions& opts, const std::string& rule,
                                    MonomialRule&& bad) {
  ValidationReport report;
  const auto poly = expand_gates(f.store, {f.root}, opts.limits);
  const auto live = reachable(f.store, {f.root});
  for (std::size_t i = 0; i < f.store.size(); ++i) {
    if (!live[i]) continue;
    for (const auto& [w, c] : poly[i].terms()) {
      if (auto msg = bad(w)) {
        report.add(gate_location("", static_cast<GateId>(i)), rule, *msg, true);
        break;
      }
    }
  }
  return report;
}

}  // namespace

ValidationReport check_homogeneous(const Formula& f) { return homogeneity(f.store, {f.root}); }

ValidationReport check_homogeneous(const Circuit& c) { return homogeneity(c.store, c.outputs); }

ValidationReport check_linked(const Formula& f, const CheckOptions& opts) {
  const auto live = reachable(f.store, {f.root});
  for (std::size_t i = 0; i < f.store.size(); ++i) {
    const Gate& g = f.store[static_cast<GateId>(i)];
    if (live[i] && g.op == Op::Var && f.store.var(g).kind() != VarKind::Linked) {
      throw PreconditionError("linked check needs doubly indexed variables, found " + to_string(f.store.var(g)));
    }
  }
  return per_gate_monomials(f, opts, "link.chain", [](const Word& w) -> std::optional<std::string> {
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      if (w[k].second() != w[k + 1].first()) {
        return "monomial " + to_string(w) + " breaks the chain at " + to_string(w[k]) + " " + to_string(w[k + 1]);
      }
    }
    return std::nullopt;
  });
}

ValidationReport check_multilinear(const Formula& f, const CheckOptions& opts) {
  return per_gate_monomials(f, opts, "ml.repeated-variable", [](const Word& w) -> std::optional<std::string> {
    Word sorted = w;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup == sorted.end()) return std::nullopt;
    return "monomial " + to_string(w) + " repeats " + to_string(*dup);
  });
}

ValidationReport check_abp_abecedarian(const Abp& a, const BucketingSystem& buckets, const CheckOptions& opts) {
  ValidationReport report;
  const int m = buckets.size();
  bool labelled = true;
  for (int v = 0; v < a.vertex_count(); ++v) {
    const std::string where = "vertex " + std::to_string(v);
    if (!a.bucket(v)) {
      labelled = false;
      report.add(where, "abp.missing-label", "vertex has no bucket label");
    } else if (*a.bucket(v) < 1 || *a.bucket(v) > m) {
      labelled = false;
      report.add(where, "abp.label-range", "bucket label " + std::to_string(*a.bucket(v)) + " outside 1.." +
                                               std::to_string(m));
    }
  }
  if (!labelled) return report;
  bool covered = true;
  for (std::size_t k = 0; k < a.edges().size(); ++k) {
    const auto& e = a.edges()[k];
    const std::string where = "edge " + std::to_string(k) + " (" + std::to_string(e.from) + "->" +
                              std::to_string(e.to) + ")";
    const int lo = *a.bucket(e.from);
    const int hi = *a.bucket(e.to);
    if (lo > hi) {
      report.add(where, "abp.decreasing-edge",
                 "edge runs from bucket " + std::to_string(lo) + " down to bucket " + std::to_string(hi));
    }
    if (e.label.constant != 0) {
      report.add(where, "abp.constant-label", "edge label has constant term " + to_string(e.label.constant));
    }
    for (const auto& [v, c] : e.label.linear) {
      const auto k2 = buckets.bucket_of(v);
      if (!k2) {
        covered = false;
        report.add(where, "abp.bucket-range", to_string(v) + " is not covered by the bucketing system");
      } else if (*k2 < lo || *k2 > hi) {
        report.add(where, "abp.bucket-range",
                   to_string(v) + " lies in bucket " + std::to_string(*k2) + " outside " + std::to_string(lo) +
                       ".." + std::to_string(hi));
      }
    }
  }
  if (!opts.semantic || !covered) return report;
  const auto pairs = expand_abp_pairs(a, opts.limits);
  for (int u = 0; u < a.vertex_count(); ++u) {
    for (int v = 0; v < a.vertex_count(); ++v) {
      if (!pairs[u][v]) continue;
      const int lo = *a.bucket(u);
      const int hi = *a.bucket(v);
      if (lo > hi) continue;
      if (!is_of_type(*pairs[u][v], buckets, lo, hi + 1)) {
        report.add("pair " + std::to_string(u) + "->" + std::to_string(v), "abp.semantic-type",
                   "path polynomial is not of type " + to_string(Interval{lo, hi + 1}), true);
      }
    }
  }
  return report;
}

}  // namespace abekit
