#pragma once

// Exact arithmetic in the free (non-commutative) polynomial ring over the
// rationals, together with the bucket-ordering predicates and slices that the
// rest of the toolkit is built on.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "abekit/rational.hpp"

namespace abekit {

/// Naming family of a variable.
///   Plain       x_i
///   Linked      x_{i,j}       (doubly indexed; the bucket is usually i)
///   Positional  x^{(k)}_i     (superscript is a position index)
enum class VarKind : std::uint8_t { Plain = 0, Linked = 1, Positional = 2 };

/// A variable packed into 32 bits: two kind bits and two 15-bit indices.
class Var {
 public:
  static constexpr int kMaxIndex = (1 << 15) - 1;

  constexpr Var() = default;

  static Var plain(int i);
  static Var linked(int i, int j);
  /// x^{(position)}_index
  static Var positional(int position, int index);
  static constexpr Var from_code(std::uint32_t code) { return Var(code); }

  constexpr VarKind kind() const { return static_cast<VarKind>(code_ >> 30); }
  /// Plain: i. Linked: i. Positional: the superscript position.
  constexpr int first() const { return static_cast<int>((code_ >> 15) & kMaxIndex); }
  /// Plain: 0. Linked: j. Positional: the subscript index.
  constexpr int second() const { return static_cast<int>(code_ & kMaxIndex); }
  constexpr std::uint32_t code() const { return code_; }

  constexpr auto operator<=>(const Var&) const = default;

 private:
  constexpr explicit Var(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

/// "x3", "x1_2", "x^2_3".
std::string to_string(Var v);
/// Inverse of to_string; nullopt when the text is not a variable name.
std::optional<Var> parse_var(std::string_view text);

/// An ordered product of variables. The empty word is the constant monomial.
using Word = std::vector<Var>;

std::string to_string(const Word& w);

/// Sparse polynomial in the free algebra: Word -> nonzero rational.
class NcPolynomial {
 public:
  using Terms = std::map<Word, Rational>;

  NcPolynomial() = default;

  static NcPolynomial constant(const Rational& c);
  static NcPolynomial variable(Var v);
  static NcPolynomial monomial(Word w, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  /// Length of the longest word; -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Word& w) const;
  Rational constant_term() const { return coefficient(Word{}); }

  /// Accumulates c into the coefficient of w, dropping the term if it cancels.
  void add_term(const Word& w, const Rational& c);

  NcPolynomial& operator+=(const NcPolynomial& other);
  NcPolynomial& operator-=(const NcPolynomial& other);
  NcPolynomial& operator*=(const Rational& scalar);

  friend NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b) { return a += b; }
  friend NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b) { return a -= b; }
  friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b);
  friend NcPolynomial operator*(NcPolynomial a, const Rational& s) { return a *= s; }
  friend bool operator==(const NcPolynomial& a, const NcPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

std::string to_string(const NcPolynomial& p);

NcPolynomial poly_add(const NcPolynomial& p, const NcPolynomial& q);
NcPolynomial poly_mul(const NcPolynomial& p, const NcPolynomial& q);

/// Sum of the terms of f whose word length equals k.
NcPolynomial homogeneous_component(const NcPolynomial& f, int k);

/// Budget for symbolic expansion; expansion is exponential and meant for
/// desk-scale instances only.
struct ExpansionLimits {
  int max_degree = 12;
  std::size_t max_terms = 1'000'000;
};

/// Throws GuardExceeded if p is over either limit.
void enforce_limits(const NcPolynomial& p, const ExpansionLimits& limits);

/// Ordered partition (X_1, ..., X_m) of a variable universe. Indices are 1-based.
class BucketingSystem {
 public:
  BucketingSystem() = default;
  /// Throws PreconditionError on an empty bucket or a variable listed twice.
  explicit BucketingSystem(std::vector<std::vector<Var>> buckets);

  /// X_i = {x_i} for i in [n].
  static BucketingSystem singletons(int n);
  /// X_i = {x_{i,j} : j in [n]}.
  static BucketingSystem linked_rows(int n);
  /// X_k = {x^{(k)}_i : i in [n]} for k in [d].
  static BucketingSystem by_position(int n, int d);
  /// X_i = {x^{(k)}_i : k in [d]} for i in [n].
  static BucketingSystem by_subscript(int n, int d);

  /// m, the number of buckets.
  int size() const { return static_cast<int>(buckets_.size()); }
  const std::vector<Var>& bucket(int index) const;
  const std::vector<std::vector<Var>>& buckets() const { return buckets_; }

  std::optional<int> bucket_of(Var v) const;
  /// Throws PreconditionError when v is not covered.
  int require_bucket(Var v) const;
  bool covers(Var v) const { return index_.contains(v.code()); }

 private:
  std::vector<std::vector<Var>> buckets_;
  std::unordered_map<std::uint32_t, int> index_;
};

/// True iff in every monomial the bucket indices of consecutive variables never
/// decrease. Throws PreconditionError on a variable outside B.
bool is_abecedarian_poly(const NcPolynomial& f, const BucketingSystem& buckets);

/// The terms of f that are abecedarian w.r.t. B.
NcPolynomial abecedarian_part(const NcPolynomial& f, const BucketingSystem& buckets);

/// f[a,b) without the abecedarian precondition: for a == b the constant term,
/// otherwise the abecedarian monomials whose first variable lies in X_a and
/// whose last variable lies in X_a..X_{b-1}. Requires 1 <= a <= b <= m+1.
NcPolynomial type_slice(const NcPolynomial& f, const BucketingSystem& buckets, int a, int b);

/// True iff f = f[a,b), i.e. f is of type [a,b).
bool is_of_type(const NcPolynomial& f, const BucketingSystem& buckets, int a, int b);

/// f[a,b) for an abecedarian f. Throws PreconditionError on out-of-range
/// indices or a non-abecedarian f.
NcPolynomial subpoly_extract(const NcPolynomial& f, const BucketingSystem& buckets, int a, int b);

}  // namespace abekit
