#include <cmath>

#include "abekit/errors.hpp"
#include "abekit/transforms.hpp"
#include "detail.hpp"

namespace abekit {

namespace {

// copies[v][a][b] for 1 <= a <= b <= m+1; slot 0 unused.
using Copies = std::vector<std::vector<std::optional<GateId>>>;

class CircuitCopier {
 public:
  CircuitCopier(const GateStore& in, const BucketingSystem& buckets, GateStore& out)
      : in_(in), buckets_(buckets), out_(out), m_(buckets.size()) {}

  void run(const std::vector<GateId>& roots) {
    const auto live = reachable(in_, roots);
    copies_.assign(in_.size(), {});
    for (GateId id = 0; id < in_.size(); ++id) {
      if (live[id]) build(id);
    }
  }

  const std::optional<GateId>& at(GateId v, int a, int b) const { return copies_[v][a][b]; }

 private:
  void build(GateId id) {
    const Gate& g = in_[id];
    Copies& c = copies_[id];
    c.assign(m_ + 2, std::vector<std::optional<GateId>>(m_ + 2));
    switch (g.op) {
      case Op::Const:
        if (!in_.is_zero(id)) {
          for (int a = 1; a <= m_ + 1; ++a) c[a][a] = out_.constant(in_.value(g), Interval{a, a});
        }
        return;
      case Op::Var: {
        const int k = buckets_.require_bucket(in_.var(g));
        for (int b = k + 1; b <= m_ + 1; ++b) c[k][b] = out_.variable(in_.var(g), Interval{k, b});
        return;
      }
      case Op::Add:
        for (int a = 1; a <= m_ + 1; ++a) {
          for (int b = a; b <= m_ + 1; ++b) {
            const auto& l = copies_[g.lhs][a][b];
            const auto& r = copies_[g.rhs][a][b];
            if (l && r) {
              c[a][b] = out_.add(*l, *r, Interval{a, b});
            } else {
              c[a][b] = l ? l : r;
            }
          }
        }
        return;
      case Op::Mul:
        break;
    }
    const Copies& l = copies_[g.lhs];
    const Copies& r = copies_[g.rhs];
    for (int a = 1; a <= m_ + 1; ++a) {
      if (l[a][a] && r[a][a]) c[a][a] = out_.mul(*l[a][a], *r[a][a], Interval{a, a});
      for (int b = a + 1; b <= m_ + 1; ++b) {
        const Interval iv{a, b};
        std::vector<GateId> terms;
        if (l[a][a] && r[a][b]) terms.push_back(out_.mul(*l[a][a], *r[a][b], iv));
        if (l[a][b] && r[b][b]) terms.push_back(out_.mul(*l[a][b], *r[b][b], iv));
        for (int cc = a; cc < b; ++cc) {
          if (l[a][cc + 1] && r[cc][b]) terms.push_back(out_.mul(*l[a][cc + 1], *r[cc][b], iv));
        }
        c[a][b] = detail::balanced_sum(out_, std::move(terms), iv);
      }
    }
  }

  const GateStore& in_;
  const BucketingSystem& buckets_;
  GateStore& out_;
  int m_;
  std::vector<Copies> copies_;
};

void warn_dropped(const NcPolynomial& f, const BucketingSystem& buckets, PassLog* log, const char* what) {
  const NcPolynomial kept = abecedarian_part(f, buckets);
  if (kept == f) return;
  const std::size_t dropped = f.term_count() - kept.term_count();
  log->warn(std::string(what) + " input is not abecedarian; " + std::to_string(dropped) +
            " monomial(s) fit no slice and are dropped");
}

}  // namespace

Circuit abecedarianize_circuit(const Circuit& c, const BucketingSystem& buckets, PassLog* log) {
  const int m = buckets.size();
  Circuit out;
  CircuitCopier copier(c.store, buckets, out.store);
  copier.run(c.outputs);
  for (GateId o : c.outputs) {
    for (int i = 1; i <= m + 1; ++i) {
      if (const auto& g = copier.at(o, i, m + 1)) out.outputs.push_back(*g);
    }
  }
  if (log) {
    try {
      warn_dropped(expand(c), buckets, log, "circuit");
    } catch (const GuardExceeded&) {
      log->warn("circuit too large to expand; dropped monomials not reported");
    }
    log->record("input_gates", static_cast<double>(metrics(c).nodes));
    log->record("output_gates", static_cast<double>(out.store.size()));
  }
  return out;
}

Abp abecedarianize_abp(const Abp& a, const BucketingSystem& buckets, PassLog* log) {
  const int m = buckets.size();
  const int n = a.vertex_count();
  Abp out;
  std::vector<std::vector<int>> copy(n, std::vector<int>(m + 1, -1));
  for (int v = 0; v < n; ++v) {
    for (int k = 1; k <= m; ++k) copy[v][k] = out.add_vertex(k);
  }
  for (const AbpEdge& e : a.edges()) {
    if (!e.label.is_linear()) {
      throw PreconditionError("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                              " has a constant term; linearize the labels first");
    }
    std::vector<AffineForm> part(m + 1);
    for (const auto& [var, coef] : e.label.linear) part[buckets.require_bucket(var)].add(var, coef);
    for (int k = 1; k <= m; ++k) {
      if (part[k].is_zero()) continue;
      for (int b = k; b <= m; ++b) out.add_edge(copy[e.from][k], copy[e.to][b], part[k]);
    }
  }
  for (int s : a.starts()) {
    for (int k = 1; k <= m; ++k) out.add_start(copy[s][k]);
  }
  for (int t : a.terminals()) out.add_terminal(copy[t][m]);
  Abp trimmed = trim(out);
  if (log) {
    try {
      warn_dropped(expand(a), buckets, log, "ABP");
    } catch (const GuardExceeded&) {
      log->warn("ABP too large to expand; dropped monomials not reported");
    }
    log->record("input_vertices", n);
    log->record("output_vertices", trimmed.vertex_count());
  }
  return trimmed;
}

FormulaFamily abecedarianize_formula(const Formula& f, const BucketingSystem& buckets,
                                     const AbecedarianizeOptions& opts, PassLog* log) {
  const int m = buckets.size();
  const Formula plain = strip_annotations(prune_zeros(f));
  if (opts.check_input) {
    try {
      const NcPolynomial p = expand(plain, opts.limits);
      if (!is_abecedarian_poly(p, buckets)) {
        throw PreconditionError("formula does not compute an abecedarian polynomial");
      }
    } catch (const GuardExceeded&) {
      if (log) log->warn("formula too large to expand; abecedarian input not verified");
    }
  }

  Formula reduced = depth_reduce(plain);
  if (metrics(reduced).depth > metrics(plain).depth) reduced = plain;
  const Metrics rm = metrics(reduced);

  const Circuit c = abecedarianize_circuit(to_circuit(reduced), buckets);
  FormulaFamily fam;
  fam.m = m;
  std::size_t nodes = 0;
  for (GateId o : c.outputs) {
    const int i = c.store[o].interval->a;
    Formula comp = prune_zeros(extract_tree(c.store, o));
    if (comp.store.is_zero(comp.root)) continue;
    nodes += metrics(comp).nodes;
    fam.components.emplace(i, std::move(comp));
  }
  if (log) {
    log->record("reduced_nodes", static_cast<double>(rm.nodes));
    log->record("reduced_depth", rm.depth);
    log->record("output_nodes", static_cast<double>(nodes));
    log->record("bound", abecedarianize_formula_bound(rm.nodes, rm.depth, m));
  }
  return fam;
}

double abecedarianize_formula_bound(std::size_t s, int r, int m) {
  double binom = 1.0;
  for (int k = 1; k <= m; ++k) binom = binom * (4.0 * r + k) / k;
  return static_cast<double>(s) * m * m * binom;
}

}  // namespace abekit
