#pragma once

// Brute-force reference values for tests. Nothing here calls into the
// library's own enumerators.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "abekit/free_algebra.hpp"

namespace abekit::ref {

// Every word of length len over letters 1..n, in lexicographic order.
inline void for_each_word(int n, int len, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> w(len, 1);
  for (;;) {
    fn(w);
    int k = len - 1;
    while (k >= 0 && w[k] == n) w[k--] = 1;
    if (k < 0) return;
    ++w[k];
  }
}

inline NcPolynomial brute_chsym(int n, int d) {
  NcPolynomial p;
  for_each_word(n, d, [&](const std::vector<int>& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i - 1] > w[i]) return;
    Word word;
    for (int i : w) word.push_back(Var::plain(i));
    p.add_term(word, 1);
  });
  return p;
}

inline NcPolynomial brute_esym(int n, int d) {
  NcPolynomial p;
  for_each_word(n, d, [&](const std::vector<int>& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i - 1] >= w[i]) return;
    Word word;
    for (int i : w) word.push_back(Var::plain(i));
    p.add_term(word, 1);
  });
  return p;
}

// Subsets of {1..n} of size d, read in increasing order. Cheaper than
// brute_esym when n^d is large.
inline NcPolynomial subset_esym(int n, int d) {
  NcPolynomial p;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != d) continue;
    Word w;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) w.push_back(Var::plain(i + 1));
    p.add_term(w, 1);
  }
  return p;
}

// Chains i_0 <= i_1 <= ... <= i_d, read as x_{i_0,i_1} x_{i_1,i_2} ...
inline NcPolynomial brute_lchsym(int n, int d) {
  NcPolynomial p;
  for_each_word(n, d + 1, [&](const std::vector<int>& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i - 1] > w[i]) return;
    Word word;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) word.push_back(Var::linked(w[k], w[k + 1]));
    p.add_term(word, 1);
  });
  return p;
}

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Random polynomial with at most `terms` words of length <= max_len over x_1..x_vars.
inline NcPolynomial random_poly(std::mt19937_64& rng, int vars, int max_len, int terms) {
  std::uniform_int_distribution<int> len(0, max_len), var(1, vars), coef(-3, 3);
  NcPolynomial p;
  for (int t = 0; t < terms; ++t) {
    Word w;
    for (int k = len(rng); k > 0; --k) w.push_back(Var::plain(var(rng)));
    p.add_term(w, coef(rng));
  }
  return p;
}

}  // namespace abekit::ref
