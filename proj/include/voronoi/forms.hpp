#pragma once

// Exact symmetric forms: q(x) = xᵀ A x with A the stored Gram matrix.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "voronoi/arith.hpp"
#include "voronoi/lattice.hpp"

namespace voronoi {

/// Symmetric g×g form over T (Integer or Rational), g ≥ 1.
template <class T>
class BasicSymForm {
 public:
  using scalar_type = T;

  BasicSymForm() : m_(Matrix<T>::identity(1)) {}
  explicit BasicSymForm(Matrix<T> m) : m_(std::move(m)) {
    if (m_.rows() == 0) throw DomainError("form dimension must be at least 1");
    if (!m_.is_square()) throw DimensionMismatch("form matrix is not square");
    if (!m_.is_symmetric()) throw DomainError("form matrix is not symmetric");
  }
  BasicSymForm(std::initializer_list<std::initializer_list<T>> init) : BasicSymForm(Matrix<T>(init)) {}

  static BasicSymForm identity(std::size_t g) { return BasicSymForm(Matrix<T>::identity(g)); }

  std::size_t dim() const { return m_.rows(); }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix<T>& matrix() const { return m_; }

  friend bool operator==(const BasicSymForm& a, const BasicSymForm& b) { return a.m_ == b.m_; }
  friend bool operator!=(const BasicSymForm& a, const BasicSymForm& b) { return !(a == b); }
  friend bool operator<(const BasicSymForm& a, const BasicSymForm& b) { return a.m_ < b.m_; }

 private:
  Matrix<T> m_;
};

using SymForm = BasicSymForm<Integer>;
using RationalSymForm = BasicSymForm<Rational>;

inline RationalSymForm to_rational(const SymForm& q) { return RationalSymForm(to_rational(q.matrix())); }
inline RationalSymForm to_rational(const RationalSymForm& q) { return q; }

/// Element of GL_g(Z).
class Unimodular {
 public:
  Unimodular() : m_(MatrixZ::identity(1)) {}
  explicit Unimodular(MatrixZ m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) throw DimensionMismatch("unimodular matrix must be square");
    const Integer d = determinant(m_);
    if (d != 1 && d != -1) throw DomainError("matrix is not unimodular (det " + d.get_str() + ")");
  }
  static Unimodular identity(std::size_t n) { return Unimodular(MatrixZ::identity(n)); }

  std::size_t dim() const { return m_.rows(); }
  const MatrixZ& matrix() const { return m_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  Unimodular inverse() const { return Unimodular(to_integral(voronoi::inverse(to_rational(m_)))); }
  Unimodular transpose() const { return Unimodular(m_.transpose()); }
  VectorZ apply(const VectorZ& x) const { return m_ * x; }

  friend Unimodular operator*(const Unimodular& a, const Unimodular& b) {
    return Unimodular(a.m_ * b.m_);
  }
  friend bool operator==(const Unimodular& a, const Unimodular& b) { return a.m_ == b.m_; }
  friend bool operator<(const Unimodular& a, const Unimodular& b) { return a.m_ < b.m_; }

 private:
  MatrixZ m_;
};

/// Uᵀ q U, i.e. the form x ↦ q(Ux).
template <class T>
BasicSymForm<T> transform(const BasicSymForm<T>& q, const Unimodular& u) {
  if (q.dim() != u.dim()) throw DimensionMismatch("transform: dimension mismatch");
  Matrix<T> um(u.dim(), u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < u.dim(); ++j) um(i, j) = u(i, j);
  return BasicSymForm<T>(um.transpose() * q.matrix() * um);
}

template <class T>
T evaluate(const BasicSymForm<T>& q, const VectorZ& x) {
  if (x.size() != q.dim()) throw DimensionMismatch("evaluate: vector length differs from form dimension");
  T s = 0;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (x[i] == 0) continue;
    T row = 0;
    for (std::size_t j = 0; j < q.dim(); ++j) row += q(i, j) * x[j];
    s += row * x[i];
  }
  return s;
}

/// Bilinear value xᵀ A y.
template <class T>
T bilinear(const BasicSymForm<T>& q, const VectorZ& x, const VectorZ& y) {
  if (x.size() != q.dim() || y.size() != q.dim()) throw DimensionMismatch("bilinear: length mismatch");
  T s = 0;
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j) s += q(i, j) * x[i] * y[j];
  return s;
}

/// ⟨p, f⟩ = Σ p_ij f_ij, so trace_pair(q, x xᵀ) == q(x).
template <class A, class B>
Rational trace_pair(const BasicSymForm<A>& p, const BasicSymForm<B>& f) {
  if (p.dim() != f.dim()) throw DimensionMismatch("trace_pair: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) s += Rational(p(i, j)) * Rational(f(i, j));
  return s;
}

inline SymForm rank1(const VectorZ& x) {
  if (x.empty()) throw DimensionMismatch("rank1: empty vector");
  if (is_zero(x)) throw ZeroVector("rank1: zero vector");
  MatrixZ m(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = x[i] * x[j];
  return SymForm(std::move(m));
}

struct PsdRank {
  bool is_psd = false;
  std::size_t rank = 0;
  std::vector<VectorZ> kernel_basis;  // saturated, Hermite normal form
};

/// Semidefiniteness, rank and integral radical of a rational symmetric form.
/// Elimination is LDLᵀ over Q pivoting on the largest remaining diagonal entry
/// (lowest index on ties).
inline PsdRank psd_rank(const RationalSymForm& f) {
  const std::size_t n = f.dim();
  MatrixQ a = f.matrix();
  std::vector<bool> done(n, false);
  bool psd = true;
  std::size_t positive = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (p == n || a(i, i) > a(p, p)) p = i;
    }
    if (a(p, p) < 0) {
      psd = false;
      break;
    }
    if (a(p, p) == 0) {
      // Largest remaining diagonal is zero: the rest must vanish identically.
      for (std::size_t i = 0; i < n && psd; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && a(i, j) != 0) {
            psd = false;
            break;
          }
      break;
    }
    done[p] = true;
    ++positive;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, p) == 0) continue;
      const Rational l = a(i, p) / a(p, p);
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        a(i, j) -= l * a(p, j);
      }
    }
  }

  PsdRank out;
  out.is_psd = psd;
  out.rank = psd ? positive : rank(f.matrix());
  Integer den = 1;
  for (const auto& x : f.matrix().data()) den = lcm(den, x.get_den());
  MatrixZ scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = Rational(f(i, j) * den).get_num();
  out.kernel_basis = integer_kernel(scaled);
  return out;
}

inline PsdRank psd_rank(const SymForm& f) { return psd_rank(to_rational(f)); }

template <class T>
bool is_positive_definite(const BasicSymForm<T>& f) {
  const auto r = psd_rank(to_rational(f));
  return r.is_psd && r.rank == f.dim();
}

/// A_g root form: 2 on the diagonal, -1 next to it.
inline SymForm root_form(std::size_t g) {
  MatrixZ m(g, g);
  for (std::size_t i = 0; i < g; ++i) {
    m(i, i) = 2;
    if (i + 1 < g) m(i, i + 1) = m(i + 1, i) = -1;
  }
  return SymForm(std::move(m));
}

template <class T>
BasicSymForm<T> direct_sum(const BasicSymForm<T>& p, const BasicSymForm<T>& q) {
  const std::size_t m = p.dim(), n = q.dim();
  Matrix<T> r(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r(i, j) = p(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(m + i, m + j) = q(i, j);
  return BasicSymForm<T>(std::move(r));
}

template <class T>
BasicSymForm<T> scale(const T& c, const BasicSymForm<T>& q) {
  return BasicSymForm<T>(c * q.matrix());
}

/// The primitive integral form on the ray of q (q ≠ 0).
inline SymForm primitive_form(const RationalSymForm& q) {
  Integer den = 1;
  for (const auto& x : q.matrix().data()) den = lcm(den, x.get_den());
  MatrixZ m(q.dim(), q.dim());
  Integer g = 0;
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j) {
      m(i, j) = Rational(q(i, j) * den).get_num();
      g = gcd(g, m(i, j));
    }
  if (g == 0) throw DomainError("primitive_form: zero form");
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j) m(i, j) /= g;
  return SymForm(std::move(m));
}

inline SymForm primitive_form(const SymForm& q) { return primitive_form(to_rational(q)); }

/// Σ coeffs[i] · rays[i] rays[i]ᵀ == target, with positive coefficients.
struct ConicCombination {
  std::vector<VectorZ> rays;
  std::vector<Rational> coeffs;
  RationalSymForm target;

  RationalSymForm sum() const {
    const std::size_t g = target.dim();
    MatrixQ s(g, g);
    for (std::size_t k = 0; k < rays.size(); ++k)
      for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) s(i, j) += coeffs[k] * rays[k][i] * rays[k][j];
    return RationalSymForm(std::move(s));
  }

  Rational total() const {
    Rational t = 0;
    for (const auto& c : coeffs) t += c;
    return t;
  }

  bool holds() const {
    if (rays.size() != coeffs.size()) return false;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (coeffs[k] <= 0 || rays[k].size() != target.dim()) return false;
    }
    return sum() == target;
  }
};

}  // namespace voronoi
