#pragma once

// Brute-force reference computations used to cross-check the library.
// Deliberately self-contained: plain vectors of gmpxx numbers, no library code.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using VecZ = std::vector<Z>;
using MatZ = std::vector<VecZ>;
using MatQ = std::vector<std::vector<Q>>;

inline MatQ to_q(const MatZ& a) {
  MatQ m(a.size(), std::vector<Q>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = a[i][j];
  return m;
}

inline Z value(const MatZ& a, const VecZ& x) {
  Z s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += a[i][j] * x[i] * x[j];
  return s;
}

inline Z pairing(const MatZ& a, const VecZ& x, const VecZ& y) {
  Z s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += a[i][j] * x[i] * y[j];
  return s;
}

/// Row echelon rank over Q.
inline std::size_t rank(MatQ m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const Q f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

inline Q det(MatQ m) {
  const std::size_t n = m.size();
  Q d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Q f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return d;
}

/// Unique solution of m x = b, if any.
inline std::optional<std::vector<Q>> solve(MatQ m, std::vector<Q> b) {
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(b[p], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Q f = m[i][c] / m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  if (pivots.size() != cols) return std::nullopt;
  std::vector<Q> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = b[i] / m[i][pivots[i]];
  return x;
}

inline bool positive_definite(const MatZ& a) {
  for (std::size_t k = 1; k <= a.size(); ++k) {
    MatQ minor(k, std::vector<Q>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[i][j];
    if (det(minor) <= 0) return false;
  }
  return true;
}

inline bool sign_canonical(const VecZ& v) {
  for (const auto& x : v)
    if (x != 0) return x > 0;
  return false;
}

/// Every x in the box |x_i| <= b_i, visited once.
inline void box(const std::vector<long>& b, const std::function<void(const VecZ&)>& visit) {
  VecZ x(b.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == b.size()) {
      visit(x);
      return;
    }
    for (long v = -b[i]; v <= b[i]; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

/// Box containing all x with q(x) <= bound: |x_i|² <= bound · (q⁻¹)_ii.
inline std::vector<long> box_for(const MatZ& a, const Q& bound) {
  const std::size_t n = a.size();
  std::vector<long> b(n);
  const Q d = det(to_q(a));
  for (std::size_t i = 0; i < n; ++i) {
    MatQ minor;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<Q> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != i) row.push_back(a[r][c]);
      minor.push_back(row);
    }
    const Q inv_ii = n == 1 ? Q(1) / d : det(minor) / d;
    const Q s = bound * inv_ii;
    long k = 0;
    while (Q((k + 1) * (k + 1)) <= s) ++k;
    b[i] = k;
  }
  return b;
}

struct ShortVectors {
  Z min;
  std::vector<VecZ> vectors;  // sign-canonical, sorted
};

inline ShortVectors brute_min(const MatZ& a) {
  Z m0 = a[0][0];
  for (std::size_t i = 1; i < a.size(); ++i) m0 = std::min(m0, a[i][i]);
  ShortVectors out{m0, {}};
  box(box_for(a, Q(m0)), [&](const VecZ& x) {
    if (!sign_canonical(x)) return;
    const Z v = value(a, x);
    if (v < out.min) {
      out.min = v;
      out.vectors.clear();
    }
    if (v == out.min) out.vectors.push_back(x);
  });
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

/// All nonzero x (both signs) with q(x) <= bound.
inline std::vector<VecZ> brute_short(const MatZ& a, const Z& bound) {
  std::vector<VecZ> out;
  box(box_for(a, Q(bound)), [&](const VecZ& x) {
    const Z v = value(a, x);
    if (v > 0 && v <= bound) out.push_back(x);
  });
  return out;
}

inline std::size_t sym_rank(const std::vector<VecZ>& vs, std::size_t g) {
  MatQ rows;
  for (const auto& x : vs) {
    std::vector<Q> r;
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = i; j < g; ++j) r.push_back(Q(x[i] * x[j]));
    rows.push_back(r);
  }
  return rows.empty() ? 0 : rank(rows);
}

inline bool perfect(const MatZ& a) {
  const std::size_t g = a.size();
  return sym_rank(brute_min(a).vectors, g) == g * (g + 1) / 2;
}

/// Integer matrices U (as column lists) with Uᵀ A U == B and det ±1.
/// `visit` returns true to stop.
inline void brute_isometries(const MatZ& a, const MatZ& b, const std::function<bool(const MatZ&)>& visit) {
  const std::size_t n = a.size();
  Z top = 0;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, b[i][i]);
  const auto pool = brute_short(a, top);
  MatZ cols;
  std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
    if (j == n) {
      MatQ u(n, std::vector<Q>(n));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) u[r][c] = cols[c][r];
      const Q d = det(u);
      if (d != 1 && d != -1) return false;
      return visit(cols);
    }
    for (const auto& x : pool) {
      if (value(a, x) != b[j][j]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = pairing(a, cols[i], x) == b[i][j];
      if (!ok) continue;
      cols.push_back(x);
      if (rec(j + 1)) return true;
      cols.pop_back();
    }
    return false;
  };
  rec(0);
}

inline std::size_t automorphism_count(const MatZ& a) {
  std::size_t n = 0;
  brute_isometries(a, a, [&](const MatZ&) {
    ++n;
    return false;
  });
  return n;
}

inline bool equivalent(const MatZ& a, const MatZ& b) {
  bool found = false;
  brute_isometries(a, b, [&](const MatZ&) {
    found = true;
    return true;
  });
  return found;
}

/// Perfect forms of dimension g with 1 <= a_ii <= bound and 2|a_ij| <= a_ii
/// (i < j), made primitive and classified up to GL_g(Z) by brute force.
inline std::vector<MatZ> exhaustive_perfect_classes(std::size_t g, long bound) {
  std::vector<MatZ> reps;
  MatZ a(g, VecZ(g));
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < g; ++i) slots.push_back({i, i});
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) slots.push_back({i, j});
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == slots.size()) {
      if (!positive_definite(a) || !perfect(a)) return;
      Z c = 0;
      for (const auto& row : a)
        for (const auto& x : row) c = gcd(c, x);
      MatZ p = a;
      for (auto& row : p)
        for (auto& x : row) x /= c;
      for (const auto& r : reps)
        if (equivalent(r, p)) return;
      reps.push_back(p);
      return;
    }
    const auto [i, j] = slots[k];
    if (i == j) {
      for (long v = 1; v <= bound; ++v) {
        a[i][i] = v;
        rec(k + 1);
      }
      return;
    }
    const long lim = std::min(bound, static_cast<long>(a[i][i].get_si() / 2));
    for (long v = -lim; v <= lim; ++v) {
      a[i][j] = a[j][i] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return reps;
}

}  // namespace oracle
