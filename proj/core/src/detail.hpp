#pragma once

#include <optional>
#include <vector>

#include "abekit/model.hpp"

namespace abekit::detail {

/// Rebuilds the tree under `root` into `out` in id order. `replace(id, out)`
/// may return a substitute for any gate; other gates are copied with their
/// annotation. Gates under a replaced gate are still visited but end up dead.
template <class Fn>
GateId rebuild(const GateStore& in, GateId root, GateStore& out, Fn&& replace) {
  const auto live = reachable(in, {root});
  std::vector<GateId> map(in.size(), 0);
  for (GateId i = 0; i <= root; ++i) {
    if (!live[i]) continue;
    if (std::optional<GateId> r = replace(i, out)) {
      map[i] = *r;
      continue;
    }
    const Gate& g = in[i];
    switch (g.op) {
      case Op::Const:
        map[i] = out.constant(in.value(g), g.interval);
        break;
      case Op::Var:
        map[i] = out.variable(in.var(g), g.interval);
        break;
      case Op::Add:
      case Op::Mul:
        map[i] = out.binary(g.op, map[g.lhs], map[g.rhs], g.interval);
        break;
    }
  }
  return map[root];
}

/// Balanced binary sum; nullopt for an empty list.
inline std::optional<GateId> balanced_sum(GateStore& s, std::vector<GateId> xs, std::optional<Interval> iv = {}) {
  if (xs.empty()) return std::nullopt;
  while (xs.size() > 1) {
    std::vector<GateId> next;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) next.push_back(s.add(xs[i], xs[i + 1], iv));
    if (xs.size() % 2) next.push_back(xs.back());
    xs = std::move(next);
  }
  return xs.front();
}

/// True when every variable leaf under the root carries an interval.
inline bool leaves_annotated(const Formula& f) {
  const auto live = reachable(f.store, {f.root});
  bool any = false;
  for (GateId i = 0; i < f.store.size(); ++i) {
    if (!live[i]) continue;
    const Gate& g = f.store[i];
    if (g.interval) any = true;
    if (g.op == Op::Var && !g.interval) return false;
  }
  return any;
}

}  // namespace abekit::detail
