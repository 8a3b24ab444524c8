#pragma once

// Polyhedral cones in the space of symmetric forms, exact double description.

#include <algorithm>
#include <bitset>
#include <cstddef>
#include <vector>

#include "voronoi/forms.hpp"

namespace voronoi {

/// Upper bound on the number of rays of a domain; enough for g <= 7.
inline constexpr std::size_t kMaxRays = 256;
using RayMask = std::bitset<kMaxRays>;

inline std::size_t sym_dim(std::size_t g) { return g * (g + 1) / 2; }

/// Coordinates of x xᵀ pairing with `normal_coordinates` by the plain dot
/// product: (x_i², 2 x_i x_j for i < j).
inline VectorZ ray_coordinates(const VectorZ& x) {
  const std::size_t g = x.size();
  VectorZ c;
  c.reserve(sym_dim(g));
  for (std::size_t i = 0; i < g; ++i) c.push_back(x[i] * x[i]);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) c.push_back(2 * x[i] * x[j]);
  return c;
}

/// (H_ii, H_ij for i < j): ⟨H, x xᵀ⟩ = normal_coordinates(H) · ray_coordinates(x).
template <class T>
std::vector<T> normal_coordinates(const BasicSymForm<T>& h) {
  const std::size_t g = h.dim();
  std::vector<T> c;
  c.reserve(sym_dim(g));
  for (std::size_t i = 0; i < g; ++i) c.push_back(h(i, i));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) c.push_back(h(i, j));
  return c;
}

template <class T>
BasicSymForm<T> form_from_normal(const std::vector<T>& c, std::size_t g) {
  Matrix<T> m(g, g);
  std::size_t k = 0;
  for (std::size_t i = 0; i < g; ++i) m(i, i) = c[k++];
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) {
      m(i, j) = m(j, i) = c[k++];
    }
  return BasicSymForm<T>(std::move(m));
}

/// Dimension of the linear span of the rank-1 forms x xᵀ.
inline std::size_t span_dimension(const std::vector<VectorZ>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<VectorZ> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(ray_coordinates(v));
  return rank(MatrixZ::from_rows(rows));
}

struct ConeFacet {
  VectorZ normal;    // primitive integral, nonnegative on every generator
  RayMask incident;  // generators on which the normal vanishes
};

/// Facets of the pointed, full-dimensional cone spanned by `generators` in
/// Z^dim, by the double description method (generators inserted in order).
/// Facets are returned sorted lexicographically by normal.
inline std::vector<ConeFacet> cone_facets(const std::vector<VectorZ>& generators, std::size_t dim) {
  const std::size_t m = generators.size();
  if (m > kMaxRays) throw SearchOverflow("cone_facets: too many generators");
  if (rank(MatrixZ::from_rows(generators)) != dim) throw DomainError("cone_facets: cone is not full-dimensional");
  if (dim == 1) {
    // A half-line has the origin as its only proper face.
    return {};
  }

  struct DDRay {
    VectorZ v;
    RayMask zeros;
  };

  // Initial simplicial cone from the first independent constraints.
  std::vector<std::size_t> basis;
  {
    std::vector<VectorZ> rows;
    for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
      rows.push_back(generators[i]);
      if (rank(MatrixZ::from_rows(rows)) == basis.size() + 1) {
        basis.push_back(i);
      } else {
        rows.pop_back();
      }
    }
  }
  std::vector<VectorZ> brows;
  for (auto i : basis) brows.push_back(generators[i]);
  const MatrixQ binv = inverse(to_rational(MatrixZ::from_rows(brows)));
  RayMask processed;
  for (auto i : basis) processed.set(i);

  std::vector<DDRay> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    DDRay r{primitive_integral(binv.column(k)), RayMask()};
    for (std::size_t j = 0; j < dim; ++j)
      if (j != k) r.zeros.set(basis[j]);
    rays.push_back(std::move(r));
  }

  for (std::size_t idx = 0; idx < m; ++idx) {
    if (processed.test(idx)) continue;
    const VectorZ& a = generators[idx];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(a, rays[k].v);
      if (val[k] > 0)
        pos.push_back(k);
      else if (val[k] < 0)
        neg.push_back(k);
      else
        zer.push_back(k);
    }
    std::vector<DDRay> next;
    next.reserve(pos.size() + zer.size());
    for (auto k : pos) next.push_back(rays[k]);
    for (auto k : zer) {
      DDRay r = rays[k];
      r.zeros.set(idx);
      next.push_back(std::move(r));
    }
    const std::size_t need = dim >= 2 ? dim - 2 : 0;
    for (auto p : pos) {
      for (auto n : neg) {
        const RayMask common = rays[p].zeros & rays[n].zeros;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          if ((common & rays[k].zeros) == common) adjacent = false;
        }
        if (!adjacent) continue;
        VectorZ v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = val[p] * rays[n].v[j] - val[n] * rays[p].v[j];
        DDRay r{make_primitive(std::move(v)), common};
        r.zeros.set(idx);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    processed.set(idx);
  }

  std::vector<ConeFacet> facets;
  facets.reserve(rays.size());
  for (auto& r : rays) facets.push_back({std::move(r.v), r.zeros});
  std::sort(facets.begin(), facets.end(),
            [](const ConeFacet& a, const ConeFacet& b) { return lex_less(a.normal, b.normal); });
  return facets;
}

}  // namespace voronoi
