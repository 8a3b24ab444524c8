#pragma once

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "oracles.hpp"
#include "voronoi.hpp"

namespace testing_support {

using namespace voronoi;

inline SymForm form(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t n = rows.size();
  MatrixZ m(n, n);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return SymForm(std::move(m));
}

inline VectorZ vec(std::initializer_list<long> xs) {
  VectorZ v;
  for (long x : xs) v.push_back(x);
  return v;
}

inline SymForm a2() { return form({{2, -1}, {-1, 2}}); }
inline SymForm a3() { return form({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}); }
inline SymForm d4() { return form({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}); }
inline SymForm identity_form(std::size_t g) { return SymForm(MatrixZ::identity(g)); }
inline SymForm scalar(long c) { return form({{c}}); }

inline oracle::MatZ to_oracle(const SymForm& q) {
  oracle::MatZ a(q.dim(), oracle::VecZ(q.dim()));
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j) a[i][j] = q(i, j);
  return a;
}

inline SymForm from_oracle(const oracle::MatZ& a) {
  MatrixZ m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
  return SymForm(std::move(m));
}

/// Seed from $VORONOI_TEST_SEED or the given default; always logged.
inline std::uint64_t seed_for(const std::string& suite, std::uint64_t fallback) {
  std::uint64_t s = fallback;
  if (const char* env = std::getenv("VORONOI_TEST_SEED")) s = std::strtoull(env, nullptr, 10);
  std::cout << "[seed] " << suite << " = " << s << std::endl;
  return s;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Product of random elementary moves and sign flips.
inline Unimodular random_unimodular(std::mt19937_64& rng, std::size_t g, std::size_t moves = 6) {
  MatrixZ u = MatrixZ::identity(g);
  if (g == 1) {
    if (rng() % 2) u(0, 0) = -1;
    return Unimodular(u);
  }
  for (std::size_t k = 0; k < moves; ++k) {
    const std::size_t i = rng() % g;
    std::size_t j = rng() % g;
    if (i == j) j = (j + 1) % g;
    const long c = uniform(rng, -2, 2);
    switch (rng() % 3) {
      case 0:
        for (std::size_t r = 0; r < g; ++r) u(r, i) += c * u(r, j);
        break;
      case 1:
        for (std::size_t r = 0; r < g; ++r) std::swap(u(r, i), u(r, j));
        break;
      default:
        for (std::size_t r = 0; r < g; ++r) u(r, i) = -u(r, i);
    }
  }
  return Unimodular(u);
}

/// Positive definite AᵀA + I with small random A.
inline SymForm random_pd(std::mt19937_64& rng, std::size_t g, long span = 2) {
  MatrixZ a(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) a(i, j) = uniform(rng, -span, span);
  MatrixZ m = a.transpose() * a;
  for (std::size_t i = 0; i < g; ++i) m(i, i) += 1;
  return SymForm(std::move(m));
}

/// psd Σ x xᵀ over 1..rows random nonzero vectors.
inline SymForm random_psd(std::mt19937_64& rng, std::size_t g, std::size_t rows) {
  MatrixZ m(g, g);
  for (std::size_t k = 0; k < rows; ++k) {
    VectorZ x(g);
    do {
      for (auto& v : x) v = uniform(rng, -2, 2);
    } while (is_zero(x));
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) m(i, j) += x[i] * x[j];
  }
  return SymForm(std::move(m));
}

}  // namespace testing_support
