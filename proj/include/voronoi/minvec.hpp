#pragma once

// Exact enumeration of short lattice vectors of positive definite forms.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "voronoi/forms.hpp"
#include "voronoi/lattice.hpp"

namespace voronoi {

struct ShortVector {
  VectorZ vec;
  Rational value;
};

template <class T>
struct BasicMinData {
  BasicSymForm<T> form;
  Rational min_norm;
  std::vector<VectorZ> vectors;  // one sign-canonical vector per ± pair, lex sorted
};

using MinData = BasicMinData<Integer>;
using RationalMinData = BasicMinData<Rational>;

namespace detail {

/// Exact square-completion of a positive definite Gram matrix:
/// q(y) = Σ_i d_i (y_i + Σ_{j>i} u_ij y_j)².
struct Completion {
  VectorQ d;
  MatrixQ u;
};

inline Completion complete_squares(const MatrixQ& g) {
  const std::size_t n = g.rows();
  Completion c{VectorQ(n), MatrixQ::identity(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Rational di = g(i, i);
    for (std::size_t k = 0; k < i; ++k) di -= c.d[k] * c.u(k, i) * c.u(k, i);
    if (di <= 0) throw NotPositiveDefinite();
    c.d[i] = di;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s = g(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= c.d[k] * c.u(k, i) * c.u(k, j);
      c.u(i, j) = s / di;
    }
  }
  return c;
}

inline Integer floor_rational(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

/// Visits every nonzero y with q(y) <= bound in the coordinates of `gram`
/// (both signs). The callback receives y and q(y).
inline void fincke_pohst(const MatrixQ& gram, const Rational& bound,
                         const std::function<void(const VectorZ&, const Rational&)>& visit) {
  const std::size_t n = gram.rows();
  const Completion c = complete_squares(gram);
  VectorZ y(n, Integer(0));

  // Level i: coordinates i+1..n-1 are fixed; `used` is their contribution.
  std::function<void(std::size_t, const Rational&)> level = [&](std::size_t i, const Rational& used) {
    const Rational budget = bound - used;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (y[j] != 0) center -= c.u(i, j) * y[j];
    auto cost = [&](const Integer& v) -> Rational {
      const Rational t = Rational(v) - center;
      return c.d[i] * t * t;
    };
    const Integer start = floor_rational(center + Rational(1, 2));
    if (cost(start) > budget) return;
    Integer lo = start, hi = start;
    while (cost(lo - 1) <= budget) --lo;
    while (cost(hi + 1) <= budget) ++hi;
    for (Integer v = lo; v <= hi; ++v) {
      y[i] = v;
      const Rational total = used + cost(v);
      if (i == 0) {
        if (!is_zero(y)) visit(y, total);
      } else {
        level(i - 1, total);
      }
    }
    y[i] = 0;
  };
  level(n - 1, Rational(0));
}

template <class T>
MatrixQ gram_of(const BasicSymForm<T>& q) {
  return to_rational(q).matrix();
}

}  // namespace detail

/// All sign-canonical nonzero x with q(x) <= bound, sorted by (value, lex).
template <class T>
std::vector<ShortVector> vectors_up_to(const BasicSymForm<T>& q, const Rational& bound) {
  if (bound <= 0) throw DomainError("vectors_up_to: bound must be positive");
  const MatrixQ gram = detail::gram_of(q);
  if (!is_positive_definite(q)) throw NotPositiveDefinite();
  const LllResult red = lll_reduce(gram);
  std::vector<ShortVector> out;
  detail::fincke_pohst(red.gram, bound, [&](const VectorZ& y, const Rational& value) {
    VectorZ x = red.transform * y;
    if (!is_sign_canonical(x)) return;
    out.push_back({std::move(x), value});
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.value != b.value) return a.value < b.value;
    return lex_less(a.vec, b.vec);
  });
  return out;
}

/// Minimal norm and the complete set of minimal vector pairs.
template <class T>
BasicMinData<T> min_data(const BasicSymForm<T>& q) {
  if (!is_positive_definite(q)) throw NotPositiveDefinite();
  const MatrixQ gram = detail::gram_of(q);
  const LllResult red = lll_reduce(gram);
  Rational bound = red.gram(0, 0);
  for (std::size_t i = 1; i < red.gram.rows(); ++i) bound = std::min(bound, red.gram(i, i));
  std::vector<VectorZ> found;
  detail::fincke_pohst(red.gram, bound, [&](const VectorZ& y, const Rational& value) {
    if (value < bound) {
      bound = value;
      found.clear();
    }
    if (value == bound) {
      VectorZ x = red.transform * y;
      if (is_sign_canonical(x)) found.push_back(std::move(x));
    }
  });
  std::sort(found.begin(), found.end(), lex_less);
  return {q, bound, std::move(found)};
}

/// Smallest B such that the vectors of norm <= B span Q^g, with those vectors.
/// The set depends only on the isometry class of q.
template <class T>
std::pair<Rational, std::vector<ShortVector>> spanning_short_vectors(const BasicSymForm<T>& q) {
  const LllResult red = lll_reduce(detail::gram_of(q));
  Rational cap = 0;
  for (std::size_t i = 0; i < red.gram.rows(); ++i) cap = std::max(cap, red.gram(i, i));
  auto all = vectors_up_to(q, cap);
  std::vector<VectorZ> chosen;
  Rational bound = cap;
  std::size_t r = 0;
  for (const auto& sv : all) {
    chosen.push_back(sv.vec);
    const std::size_t nr = rank(MatrixZ::from_rows(chosen));
    if (nr > r) {
      r = nr;
      if (r == q.dim()) {
        bound = sv.value;
        break;
      }
    } else {
      chosen.pop_back();
    }
  }
  std::vector<ShortVector> kept;
  for (auto& sv : all)
    if (sv.value <= bound) kept.push_back(std::move(sv));
  return {bound, std::move(kept)};
}

}  // namespace voronoi
