#pragma once

// Integral lattice machinery: Hermite echelon forms with unimodular
// transforms, saturated integral kernels, and exact LLL on Gram matrices.

#include <cstddef>
#include <utility>
#include <vector>

#include "voronoi/arith.hpp"

namespace voronoi {

struct EchelonForm {
  MatrixZ echelon;    // W * A, in Hermite normal form
  MatrixZ transform;  // W, unimodular
  std::size_t rank = 0;
};

namespace detail {

inline void row_combine(MatrixZ& m, std::size_t r, std::size_t i, const Integer& s, const Integer& t,
                        const Integer& u, const Integer& v) {
  // (row_r, row_i) <- (s row_r + t row_i, u row_r + v row_i)
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer a = m(r, j), b = m(i, j);
    m(r, j) = s * a + t * b;
    m(i, j) = u * a + v * b;
  }
}

inline void row_negate(MatrixZ& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

inline void row_axpy(MatrixZ& m, std::size_t dst, const Integer& q, std::size_t src) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

}  // namespace detail

/// Row Hermite normal form: W A = H with W unimodular, pivots positive and the
/// entries above each pivot reduced into [0, pivot).
inline EchelonForm hermite_form(const MatrixZ& a) {
  EchelonForm out{a, MatrixZ::identity(a.rows()), 0};
  MatrixZ& e = out.echelon;
  MatrixZ& w = out.transform;
  std::size_t r = 0;
  for (std::size_t c = 0; c < e.cols() && r < e.rows(); ++c) {
    for (std::size_t i = r + 1; i < e.rows(); ++i) {
      if (e(i, c) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), e(r, c).get_mpz_t(), e(i, c).get_mpz_t());
      const Integer u = -e(i, c) / g;
      const Integer v = e(r, c) / g;
      detail::row_combine(e, r, i, s, t, u, v);
      detail::row_combine(w, r, i, s, t, u, v);
    }
    if (e(r, c) == 0) continue;
    if (e(r, c) < 0) {
      detail::row_negate(e, r);
      detail::row_negate(w, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), e(i, c).get_mpz_t(), e(r, c).get_mpz_t());
      if (q == 0) continue;
      detail::row_axpy(e, i, q, r);
      detail::row_axpy(w, i, q, r);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

/// Rows of the Hermite normal form of the lattice spanned by the given rows,
/// zero rows dropped.
inline std::vector<VectorZ> hermite_basis(const std::vector<VectorZ>& rows) {
  if (rows.empty()) return {};
  const auto h = hermite_form(MatrixZ::from_rows(rows));
  std::vector<VectorZ> out;
  for (std::size_t i = 0; i < h.rank; ++i) out.push_back(h.echelon.row(i));
  return out;
}

/// Integral kernel {x in Z^n : A x = 0}. The returned basis is saturated and in
/// Hermite normal form.
inline std::vector<VectorZ> integer_kernel(const MatrixZ& a) {
  const auto h = hermite_form(a.transpose());
  std::vector<VectorZ> kernel;
  for (std::size_t i = h.rank; i < h.transform.rows(); ++i) kernel.push_back(h.transform.row(i));
  return hermite_basis(kernel);
}

/// Unimodular U whose last columns span the integral kernel of A (a saturated
/// lattice) and whose first rank(A) columns complete it to a basis of Z^n.
/// Vectors in the row space of A are then carried to the first coordinates by Uᵀ.
inline MatrixZ kernel_standardizer(const MatrixZ& a) {
  const auto h = hermite_form(a.transpose());
  return h.transform.transpose();
}

/// Saturation of the lattice spanned by `vectors` inside Z^n: the Z-basis of
/// (Q-span) ∩ Z^n, in Hermite normal form.
inline std::vector<VectorZ> saturate(const std::vector<VectorZ>& vectors, std::size_t n) {
  if (vectors.empty()) return {};
  // Orthogonal complement twice.
  const auto perp = integer_kernel(MatrixZ::from_rows(vectors));
  if (perp.empty()) {
    std::vector<VectorZ> id;
    for (std::size_t i = 0; i < n; ++i) id.push_back(MatrixZ::identity(n).row(i));
    return id;
  }
  return integer_kernel(MatrixZ::from_rows(perp));
}

struct LllResult {
  MatrixZ transform;  // T, unimodular; reduced = Tᵀ G T
  MatrixQ gram;
};

/// Exact LLL reduction (delta = 3/4) of a positive definite Gram matrix.
inline LllResult lll_reduce(const MatrixQ& gram_in) {
  const std::size_t n = gram_in.rows();
  MatrixQ g = gram_in;
  MatrixZ t = MatrixZ::identity(n);
  if (n <= 1) return {t, g};

  MatrixQ mu(n, n);
  VectorQ bstar(n);
  auto gso = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rational s = g(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * bstar[k];
        mu(i, j) = s / bstar[j];
      }
      Rational b = g(i, i);
      for (std::size_t k = 0; k < i; ++k) b -= mu(i, k) * mu(i, k) * bstar[k];
      if (b <= 0) throw NotPositiveDefinite("LLL input is not positive definite");
      bstar[i] = b;
    }
  };
  // b_k <- b_k - q b_j
  auto reduce = [&](std::size_t k, std::size_t j, const Integer& q) {
    const Rational qq = q;
    const Rational gkk = g(k, k) - 2 * qq * g(k, j) + qq * qq * g(j, j);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      g(k, i) -= qq * g(j, i);
      g(i, k) = g(k, i);
    }
    g(k, k) = gkk;
    for (std::size_t i = 0; i < n; ++i) t(i, k) -= q * t(i, j);
  };
  auto swap_basis = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < n; ++i) std::swap(g(a, i), g(b, i));
    for (std::size_t i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(t(i, a), t(i, b));
  };
  auto round_nearest = [](const Rational& x) {
    Rational shifted = x + Rational(1, 2);
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return r;
  };

  const Rational delta(3, 4);
  gso();
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      const Integer q = round_nearest(mu(k, jj));
      if (q != 0) {
        reduce(k, jj, q);
        gso();
      }
    }
    if (bstar[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar[k - 1]) {
      ++k;
    } else {
      swap_basis(k, k - 1);
      gso();
      k = k > 1 ? k - 1 : 1;
    }
  }
  return {t, g};
}

}  // namespace voronoi
