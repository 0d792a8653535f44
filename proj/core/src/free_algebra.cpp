#include "abekit/free_algebra.hpp"

#include <charconv>
#include <unordered_set>

#include "abekit/errors.hpp"

namespace abekit {

namespace {

std::uint32_t pack(VarKind kind, int first, int second) {
  if (first < 0 || first > Var::kMaxIndex || second < 0 || second > Var::kMaxIndex) {
    throw PreconditionError("variable index out of range");
  }
  return (static_cast<std::uint32_t>(kind) << 30) | (static_cast<std::uint32_t>(first) << 15) |
         static_cast<std::uint32_t>(second);
}

std::optional<int> parse_index(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value < 0 || value > Var::kMaxIndex) return std::nullopt;
  return value;
}

void check_slice_range(const BucketingSystem& buckets, int a, int b) {
  const int m = buckets.size();
  if (a < 1 || a > b || b > m + 1) {
    throw PreconditionError("sub-polynomial range [" + std::to_string(a) + "," + std::to_string(b) +
                            ") outside 1 <= a <= b <= " + std::to_string(m + 1));
  }
}

bool word_is_abecedarian(const Word& w, const BucketingSystem& buckets) {
  int prev = 0;
  for (Var v : w) {
    const int k = buckets.require_bucket(v);
    if (k < prev) return false;
    prev = k;
  }
  return true;
}

}  // namespace

Var Var::plain(int i) { return Var(pack(VarKind::Plain, i, 0)); }
Var Var::linked(int i, int j) { return Var(pack(VarKind::Linked, i, j)); }
Var Var::positional(int position, int index) { return Var(pack(VarKind::Positional, position, index)); }

std::string to_string(Var v) {
  switch (v.kind()) {
    case VarKind::Plain:
      return "x" + std::to_string(v.first());
    case VarKind::Linked:
      return "x" + std::to_string(v.first()) + "_" + std::to_string(v.second());
    case VarKind::Positional:
      return "x^" + std::to_string(v.first()) + "_" + std::to_string(v.second());
  }
  return "x?";
}

std::optional<Var> parse_var(std::string_view text) {
  if (text.size() < 2 || text.front() != 'x') return std::nullopt;
  text.remove_prefix(1);
  const bool positional = text.front() == '^';
  if (positional) text.remove_prefix(1);
  const auto sep = text.find('_');
  if (sep == std::string_view::npos) {
    if (positional) return std::nullopt;
    const auto i = parse_index(text);
    if (!i) return std::nullopt;
    return Var::plain(*i);
  }
  const auto lhs = parse_index(text.substr(0, sep));
  const auto rhs = parse_index(text.substr(sep + 1));
  if (!lhs || !rhs) return std::nullopt;
  return positional ? Var::positional(*lhs, *rhs) : Var::linked(*lhs, *rhs);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += to_string(w[i]);
  }
  return out;
}

NcPolynomial NcPolynomial::constant(const Rational& c) { return monomial(Word{}, c); }

NcPolynomial NcPolynomial::variable(Var v) { return monomial(Word{v}); }

NcPolynomial NcPolynomial::monomial(Word w, const Rational& c) {
  NcPolynomial p;
  if (c != 0) p.terms_.emplace(std::move(w), c);
  return p;
}

int NcPolynomial::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

Rational NcPolynomial::coefficient(const Word& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NcPolynomial::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

NcPolynomial& NcPolynomial::operator+=(const NcPolynomial& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NcPolynomial& NcPolynomial::operator-=(const NcPolynomial& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NcPolynomial& NcPolynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scalar;
  return *this;
}

NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
  NcPolynomial out;
  Word w;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      w.assign(wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

std::string to_string(const NcPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    if (w.empty()) {
      out += to_string(c);
    } else if (c == 1) {
      out += to_string(w);
    } else {
      out += to_string(c) + "*" + to_string(w);
    }
  }
  return out;
}

NcPolynomial poly_add(const NcPolynomial& p, const NcPolynomial& q) { return p + q; }

NcPolynomial poly_mul(const NcPolynomial& p, const NcPolynomial& q) { return p * q; }

NcPolynomial homogeneous_component(const NcPolynomial& f, int k) {
  if (k < 0) throw PreconditionError("negative degree for homogeneous component");
  NcPolynomial out;
  for (const auto& [w, c] : f.terms()) {
    if (static_cast<int>(w.size()) == k) out.add_term(w, c);
  }
  return out;
}

void enforce_limits(const NcPolynomial& p, const ExpansionLimits& limits) {
  if (p.term_count() > limits.max_terms) {
    throw GuardExceeded("expansion exceeded " + std::to_string(limits.max_terms) + " terms");
  }
  if (p.degree() > limits.max_degree) {
    throw GuardExceeded("expansion exceeded degree " + std::to_string(limits.max_degree));
  }
}

BucketingSystem::BucketingSystem(std::vector<std::vector<Var>> buckets) : buckets_(std::move(buckets)) {
  for (std::size_t i = 0; i < buckets_.size(); ++i) {
    if (buckets_[i].empty()) throw PreconditionError("bucket " + std::to_string(i + 1) + " is empty");
    for (Var v : buckets_[i]) {
      if (!index_.emplace(v.code(), static_cast<int>(i) + 1).second) {
        throw PreconditionError("variable " + to_string(v) + " listed in more than one bucket");
      }
    }
  }
}

BucketingSystem BucketingSystem::singletons(int n) {
  std::vector<std::vector<Var>> b;
  for (int i = 1; i <= n; ++i) b.push_back({Var::plain(i)});
  return BucketingSystem(std::move(b));
}

BucketingSystem BucketingSystem::linked_rows(int n) {
  std::vector<std::vector<Var>> b(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) b[i - 1].push_back(Var::linked(i, j));
  }
  return BucketingSystem(std::move(b));
}

BucketingSystem BucketingSystem::by_position(int n, int d) {
  std::vector<std::vector<Var>> b(d);
  for (int k = 1; k <= d; ++k) {
    for (int i = 1; i <= n; ++i) b[k - 1].push_back(Var::positional(k, i));
  }
  return BucketingSystem(std::move(b));
}

BucketingSystem BucketingSystem::by_subscript(int n, int d) {
  std::vector<std::vector<Var>> b(n);
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= d; ++k) b[i - 1].push_back(Var::positional(k, i));
  }
  return BucketingSystem(std::move(b));
}

const std::vector<Var>& BucketingSystem::bucket(int index) const {
  if (index < 1 || index > size()) throw PreconditionError("bucket index " + std::to_string(index) + " out of range");
  return buckets_[index - 1];
}

std::optional<int> BucketingSystem::bucket_of(Var v) const {
  const auto it = index_.find(v.code());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int BucketingSystem::require_bucket(Var v) const {
  const auto k = bucket_of(v);
  if (!k) throw PreconditionError("variable " + to_string(v) + " is not covered by the bucketing system");
  return *k;
}

bool is_abecedarian_poly(const NcPolynomial& f, const BucketingSystem& buckets) {
  bool ok = true;
  for (const auto& [w, c] : f.terms()) {
    if (!word_is_abecedarian(w, buckets)) ok = false;
  }
  return ok;
}

NcPolynomial abecedarian_part(const NcPolynomial& f, const BucketingSystem& buckets) {
  NcPolynomial out;
  for (const auto& [w, c] : f.terms()) {
    if (word_is_abecedarian(w, buckets)) out.add_term(w, c);
  }
  return out;
}

NcPolynomial type_slice(const NcPolynomial& f, const BucketingSystem& buckets, int a, int b) {
  check_slice_range(buckets, a, b);
  if (a == b) return NcPolynomial::constant(f.constant_term());
  NcPolynomial out;
  for (const auto& [w, c] : f.terms()) {
    if (w.empty() || !word_is_abecedarian(w, buckets)) continue;
    const int first = buckets.require_bucket(w.front());
    const int last = buckets.require_bucket(w.back());
    if (first == a && last < b) out.add_term(w, c);
  }
  return out;
}

bool is_of_type(const NcPolynomial& f, const BucketingSystem& buckets, int a, int b) {
  return type_slice(f, buckets, a, b) == f;
}

NcPolynomial subpoly_extract(const NcPolynomial& f, const BucketingSystem& buckets, int a, int b) {
  check_slice_range(buckets, a, b);
  if (!is_abecedarian_poly(f, buckets)) throw PreconditionError("polynomial is not abecedarian");
  return type_slice(f, buckets, a, b);
}

}  // namespace abekit
