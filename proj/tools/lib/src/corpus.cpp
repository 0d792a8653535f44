#include "abekit/tools/corpus.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "abekit/semantics.hpp"

namespace abekit::tools {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Rational small_constant(Rng& rng) {
  static const Rational pool[] = {Rational(1), Rational(2), Rational(-1), Rational(3), Rational(1, 2), Rational(-2)};
  return pool[uniform(rng, 0, 5)];
}

int odd_split(Rng& rng, int size) {
  // left part of a size-node tree: odd, leaving an odd right part
  const int pairs = (size - 1) / 2;
  return 2 * uniform(rng, 0, pairs - 1) + 1;
}

int random_odd(Rng& rng, int max_nodes) { return 2 * uniform(rng, 0, (std::max(max_nodes, 1) - 1) / 2) + 1; }

// Joins xs by addition along a random bracketing.
GateId random_sum(Rng& rng, GateStore& s, std::vector<GateId> xs, std::optional<Interval> iv = {}) {
  while (xs.size() > 1) {
    const std::size_t i = uniform(rng, 0, static_cast<int>(xs.size()) - 2);
    xs[i] = s.add(xs[i], xs[i + 1], iv);
    xs.erase(xs.begin() + i + 1);
  }
  return xs.front();
}

template <class Gen>
Formula with_degree_cap(Rng& rng, const CorpusOptions& opts, Gen gen) {
  for (;;) {
    Formula f;
    f.root = gen(f.store, random_odd(rng, opts.max_nodes));
    if (structural_degrees(f.store)[f.root] <= opts.max_degree) return f;
  }
}

}  // namespace

Formula random_formula(Rng& rng, const CorpusOptions& opts) {
  return with_degree_cap(rng, opts, [&](GateStore& s, int size) {
    std::function<GateId(int)> gen = [&](int n) -> GateId {
      if (n == 1) {
        if (coin(rng, 0.75)) return s.variable(Var::plain(uniform(rng, 1, opts.vars)));
        return s.constant(small_constant(rng));
      }
      const int l = odd_split(rng, n);
      const GateId a = gen(l);
      const GateId b = gen(n - 1 - l);
      return coin(rng, 0.55) ? s.add(a, b) : s.mul(a, b);
    };
    return gen(size);
  });
}

Formula random_abecedarian_formula(Rng& rng, const CorpusOptions& opts) {
  return with_degree_cap(rng, opts, [&](GateStore& s, int size) {
    std::function<GateId(int, int, int)> gen = [&](int n, int lo, int hi) -> GateId {
      if (n == 1) {
        if (coin(rng, 0.75)) return s.variable(Var::plain(uniform(rng, lo, hi)));
        return s.constant(small_constant(rng));
      }
      const int l = odd_split(rng, n);
      if (coin(rng, 0.5)) {
        const GateId a = gen(l, lo, hi);
        return s.add(a, gen(n - 1 - l, lo, hi));
      }
      const int c = uniform(rng, lo, hi);
      const GateId a = gen(l, lo, c);
      return s.mul(a, gen(n - 1 - l, c, hi));
    };
    return gen(size, 1, opts.vars);
  });
}

Circuit random_circuit(Rng& rng, const CorpusOptions& opts, bool abecedarian) {
  struct Info {
    int degree;
    int lo;
    int hi;
  };
  Circuit c;
  std::vector<Info> info;
  const int total = uniform(rng, 1, std::max(opts.max_nodes, 1));
  const int leaves = std::min(total, std::max(1, total / 3 + 1));
  for (int i = 0; i < leaves; ++i) {
    if (coin(rng, 0.8)) {
      const int k = uniform(rng, 1, opts.vars);
      c.store.variable(Var::plain(k));
      info.push_back({1, k, k});
    } else {
      c.store.constant(small_constant(rng));
      info.push_back({0, opts.vars + 1, 0});
    }
  }
  auto pick = [&]() -> GateId {
    const int n = static_cast<int>(c.store.size());
    if (coin(rng, 0.6)) return static_cast<GateId>(uniform(rng, std::max(0, n - 6), n - 1));
    return static_cast<GateId>(uniform(rng, 0, n - 1));
  };
  while (static_cast<int>(c.store.size()) < total) {
    const GateId a = pick();
    const GateId b = pick();
    const Info& x = info[a];
    const Info& y = info[b];
    const bool fits = x.degree + y.degree <= opts.max_degree && (!abecedarian || x.hi <= y.lo);
    if (coin(rng, 0.5) && fits) {
      c.store.mul(a, b);
      info.push_back({x.degree + y.degree, std::min(x.lo, y.lo), std::max(x.hi, y.hi)});
    } else {
      c.store.add(a, b);
      info.push_back({std::max(x.degree, y.degree), std::min(x.lo, y.lo), std::max(x.hi, y.hi)});
    }
  }
  const GateId last = static_cast<GateId>(c.store.size() - 1);
  c.outputs.push_back(last);
  if (last > 0 && coin(rng, 0.4)) c.outputs.push_back(static_cast<GateId>(uniform(rng, 0, last - 1)));
  return c;
}

Abp random_abp(Rng& rng, const CorpusOptions& opts, bool abecedarian) {
  Abp a;
  const int n = uniform(rng, 2, std::min(7, opts.max_degree + 1));
  std::vector<int> label(n);
  for (int& l : label) l = uniform(rng, 1, opts.vars);
  std::sort(label.begin(), label.end());
  for (int v = 0; v < n; ++v) a.add_vertex(abecedarian ? std::optional<int>(label[v]) : std::nullopt);

  auto edge_label = [&](int u, int v) {
    AffineForm f;
    const int terms = uniform(rng, 1, 2);
    for (int t = 0; t < terms; ++t) {
      const int k = abecedarian ? uniform(rng, label[u], label[v]) : uniform(rng, 1, opts.vars);
      f.add(Var::plain(k), small_constant(rng));
    }
    if (!abecedarian && coin(rng, 0.2)) f.constant = small_constant(rng);
    return f;
  };
  int edges = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if ((v == u + 1 || coin(rng, 0.3)) && edges < opts.max_nodes) {
        a.add_edge(u, v, edge_label(u, v));
        ++edges;
      }
    }
  }
  a.add_start(0);
  if (n > 2 && coin(rng, 0.3)) a.add_start(1);
  a.add_terminal(n - 1);
  if (n > 2 && coin(rng, 0.3)) a.add_terminal(n - 2);
  return a;
}

Formula random_chsym_formula(Rng& rng, int n, int d) {
  Formula f;
  if (d == 0) {
    f.root = f.store.constant(1);
    return f;
  }
  std::function<GateId(int, int, int)> h = [&](int lo, int hi, int k) -> GateId {
    std::vector<GateId> terms;
    if (k == 1) {
      for (int c = lo; c <= hi; ++c) terms.push_back(f.store.variable(Var::plain(c)));
      return random_sum(rng, f.store, terms);
    }
    const bool first = coin(rng, 0.5);
    for (int c = lo; c <= hi; ++c) {
      if (first) {
        const GateId x = f.store.variable(Var::plain(c));
        terms.push_back(f.store.mul(x, h(c, hi, k - 1)));
      } else {
        const GateId rest = h(lo, c, k - 1);
        terms.push_back(f.store.mul(rest, f.store.variable(Var::plain(c))));
      }
    }
    return random_sum(rng, f.store, terms);
  };
  f.root = h(1, n, d);
  return f;
}

Formula random_lchsym_formula(Rng& rng, int n, int d) {
  Formula f;
  std::function<GateId(int, int, int, int)> pair = [&](int l, int i, int r, int j) -> GateId {
    const Interval iv{i, j + 1};
    if (r == l + 1) return f.store.variable(Var::linked(i, j), iv);
    const int mid = uniform(rng, l + 1, r - 1);
    std::vector<GateId> terms;
    for (int k = i; k <= j; ++k) {
      const GateId left = pair(l, i, mid, k);
      terms.push_back(f.store.mul(left, pair(mid, k, r, j), iv));
    }
    return random_sum(rng, f.store, terms, iv);
  };
  std::vector<GateId> tops;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) tops.push_back(pair(0, i, d, j));
  }
  f.root = random_sum(rng, f.store, tops);
  return f;
}

Formula left_comb(int leaves, int vars) {
  Formula f;
  GateId acc = f.store.variable(Var::plain(1));
  for (int i = 1; i < leaves; ++i) acc = f.store.mul(acc, f.store.variable(Var::plain(i % vars + 1)));
  f.root = acc;
  return f;
}

}  // namespace abekit::tools
