#include <map>

#include "abekit/errors.hpp"
#include "abekit/transforms.hpp"
#include "detail.hpp"

namespace abekit {

namespace {

class PairBuilder {
 public:
  PairBuilder(const Abp& a, std::vector<int> layer, bool labelled)
      : a_(a), layer_(std::move(layer)), labelled_(labelled) {
    int depth = 0;
    for (int l : layer_) depth = std::max(depth, l);
    by_layer_.resize(depth + 1);
    for (int v = 0; v < a_.vertex_count(); ++v) {
      if (layer_[v] >= 0) by_layer_[layer_[v]].push_back(v);
    }
    for (const AbpEdge& e : a_.edges()) {
      if (layer_[e.from] < 0 || layer_[e.to] < 0 || e.label.is_zero()) continue;
      auto& slot = edge_[{e.from, e.to}];
      slot.constant += e.label.constant;
      for (const auto& [v, c] : e.label.linear) slot.add(v, c);
    }
  }

  std::optional<GateId> pair(int u, int w) {
    const auto key = std::make_pair(u, w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<GateId> g;
    const int lu = layer_[u];
    const int lw = layer_[w];
    if (lw == lu + 1) {
      if (auto it = edge_.find(key); it != edge_.end()) g = label(it->second, u, w);
    } else {
      const int mid = (lu + lw) / 2;
      std::vector<GateId> terms;
      for (int v : by_layer_[mid]) {
        const auto l = pair(u, v);
        if (!l) continue;
        const auto r = pair(v, w);
        if (!r) continue;
        terms.push_back(store.mul(*l, *r, interval(u, w)));
      }
      g = detail::balanced_sum(store, std::move(terms), interval(u, w));
    }
    memo_.emplace(key, g);
    return g;
  }

  GateStore store;

 private:
  std::optional<Interval> interval(int u, int w) const {
    if (!labelled_) return std::nullopt;
    return Interval{*a_.bucket(u), *a_.bucket(w) + 1};
  }

  std::optional<GateId> label(const AffineForm& f, int u, int w) {
    if (f.is_zero()) return std::nullopt;
    const auto iv = interval(u, w);
    std::optional<Interval> civ;
    if (iv) civ = Interval{iv->a, iv->a};
    std::vector<GateId> terms;
    if (f.constant != 0) terms.push_back(store.constant(f.constant, civ));
    for (const auto& [v, c] : f.linear) {
      const GateId x = store.variable(v, iv);
      terms.push_back(c == 1 ? x : store.mul(store.constant(c, civ), x, iv));
    }
    return detail::balanced_sum(store, std::move(terms), iv);
  }

  const Abp& a_;
  std::vector<int> layer_;
  bool labelled_;
  std::vector<std::vector<int>> by_layer_;
  std::map<std::pair<int, int>, AffineForm> edge_;
  std::map<std::pair<int, int>, std::optional<GateId>> memo_;
};

}  // namespace

Formula abp_to_formula(const Abp& input, bool normalize) {
  Abp a = trim(input);
  auto layers = abp_layers(a);
  if (!layers) {
    if (!normalize) throw PreconditionError("ABP is not layered; normalize it first");
    a = layer_normalize(a);
    layers = abp_layers(a);
    if (!layers) throw Error("layer normalization produced a non-layered ABP");
  }
  bool labelled = a.vertex_count() > 0;
  for (int v = 0; v < a.vertex_count(); ++v) labelled = labelled && a.bucket(v).has_value();

  PairBuilder pb(a, *layers, labelled);
  std::vector<GateId> tops;
  for (int s : a.starts()) {
    for (int t : a.terminals()) {
      if ((*layers)[s] < 0 || (*layers)[t] <= (*layers)[s]) continue;
      if (auto g = pb.pair(s, t)) tops.push_back(*g);
    }
  }
  const auto sum = detail::balanced_sum(pb.store, tops);
  if (!sum) return Formula::constant(0);
  return extract_tree(pb.store, *sum);
}

FormulaFamily abp_to_family(const Abp& a, const BucketingSystem& buckets) {
  return collect_family(strip_annotations(abp_to_formula(a, true)), buckets);
}

}  // namespace abekit
