#pragma once

// Face lattices of perfect domains and the GL_g(Z)-orbit poset of the faces
// of the perfect-cone decomposition, labeled by rank.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "voronoi/cone.hpp"
#include "voronoi/isometry.hpp"
#include "voronoi/voronoi.hpp"

namespace voronoi {

struct Face {
  std::size_t class_id = 0;
  std::vector<std::size_t> ray_subset;  // sorted indices into the domain rays
  std::size_t dim = 0;
  std::size_t barycenter_rank = 0;      // rank of Σ x xᵀ over the face rays

  RayMask mask() const {
    RayMask m;
    for (auto i : ray_subset) m.set(i);
    return m;
  }
};

struct FaceLattice {
  std::vector<Face> faces;                       // nonzero faces, sorted by (dim, ray_subset)
  std::vector<std::vector<std::size_t>> covers;  // faces of dimension dim - 1 inside each face
};

inline std::vector<VectorZ> face_vectors(const PerfectDomain& d, const std::vector<std::size_t>& subset) {
  std::vector<VectorZ> out;
  out.reserve(subset.size());
  for (auto i : subset) out.push_back(d.rays[i]);
  return out;
}

inline SymForm barycenter(const std::vector<VectorZ>& rays, std::size_t g) {
  MatrixZ s(g, g);
  for (const auto& x : rays)
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) s(i, j) += x[i] * x[j];
  return SymForm(std::move(s));
}

/// All nonzero faces of D with their cover relations. Faces are generated as
/// intersections of facets, starting from the whole domain.
inline FaceLattice face_lattice(const PerfectDomain& d, std::size_t class_id = 0) {
  std::unordered_map<RayMask, std::size_t> seen;
  std::vector<RayMask> masks{d.all_rays()};
  seen.emplace(masks.front(), 0);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    for (const auto& f : d.facet_rays) {
      const RayMask m = masks[k] & f;
      if (m.none() || m == masks[k]) continue;
      if (seen.emplace(m, masks.size()).second) masks.push_back(m);
    }
  }

  FaceLattice lat;
  lat.faces.reserve(masks.size());
  for (const auto& m : masks) {
    Face f;
    f.class_id = class_id;
    for (std::size_t i = 0; i < d.rays.size(); ++i)
      if (m.test(i)) f.ray_subset.push_back(i);
    const auto vecs = face_vectors(d, f.ray_subset);
    f.dim = span_dimension(vecs);
    f.barycenter_rank = psd_rank(barycenter(vecs, d.dim())).rank;
    lat.faces.push_back(std::move(f));
  }
  std::sort(lat.faces.begin(), lat.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.ray_subset < b.ray_subset;
  });
  std::unordered_map<RayMask, std::size_t> index;
  for (std::size_t i = 0; i < lat.faces.size(); ++i) index.emplace(lat.faces[i].mask(), i);
  lat.covers.resize(lat.faces.size());
  for (std::size_t i = 0; i < lat.faces.size(); ++i) {
    const RayMask m = lat.faces[i].mask();
    std::set<std::size_t> kids;
    for (const auto& f : d.facet_rays) {
      const RayMask sub = m & f;
      if (sub.none() || sub == m) continue;
      const std::size_t j = index.at(sub);
      if (lat.faces[j].dim + 1 == lat.faces[i].dim) kids.insert(j);
    }
    lat.covers[i].assign(kids.begin(), kids.end());
  }
  return lat;
}

inline std::vector<Face> faces(const PerfectDomain& d, std::size_t class_id = 0) {
  return face_lattice(d, class_id).faces;
}

/// A ray configuration moved into the first coordinates: Uᵀ x has its last
/// g - rank coordinates zero for every ray x, and `config` holds the rest.
struct StandardFace {
  std::size_t rank = 0;
  Unimodular standardizer;
  std::vector<VectorZ> config;  // sign-canonical, lex sorted, in Z^rank
};

inline StandardFace standardize(const std::vector<VectorZ>& rays, std::size_t g) {
  StandardFace s;
  if (rays.empty()) {
    s.standardizer = Unimodular::identity(g);
    return s;
  }
  const MatrixZ a = MatrixZ::from_rows(rays);
  s.standardizer = Unimodular(kernel_standardizer(a));
  s.rank = rank(a);
  const MatrixZ ut = s.standardizer.matrix().transpose();
  for (const auto& x : rays) {
    const VectorZ y = ut * x;
    for (std::size_t i = s.rank; i < g; ++i)
      if (y[i] != 0) throw Error("standardize: kernel not moved to the last coordinates");
    s.config.push_back(canonical_sign(VectorZ(y.begin(), y.begin() + s.rank)));
  }
  std::sort(s.config.begin(), s.config.end(), lex_less);
  return s;
}

/// The pairing adj(B) with B = Σ x xᵀ; preserved by every map between configurations.
inline MatrixZ config_pairing(const std::vector<VectorZ>& config, std::size_t r) {
  const SymForm b = barycenter(config, r);
  const MatrixQ inv = inverse(to_rational(b.matrix()));
  const Rational det = determinant(to_rational(b.matrix()));
  return to_integral(det * inv);
}

inline std::string config_key(const std::vector<VectorZ>& config, std::size_t r, std::size_t dim) {
  std::string key = std::to_string(r) + "|" + std::to_string(dim) + "|" + std::to_string(config.size()) + "|";
  if (r == 0) return key;
  const SymForm b = barycenter(config, r);
  key += determinant(b.matrix()).get_str() + "|";
  const MatrixZ p = config_pairing(config, r);
  std::vector<Integer> vals;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const VectorZ pi = p * config[i];
    for (std::size_t j = i; j < config.size(); ++j) vals.push_back(abs(dot(pi, config[j])));
  }
  std::sort(vals.begin(), vals.end());
  for (const auto& v : vals) key += v.get_str() + ",";
  return key;
}

/// U ∈ GL_r(Z) with U(b) = a as sets of rays, if the configurations are equivalent.
inline std::optional<Unimodular> configs_equivalent(const std::vector<VectorZ>& a, const std::vector<VectorZ>& b,
                                                    std::size_t r) {
  if (a.size() != b.size()) return std::nullopt;
  if (r == 0) return Unimodular::identity(1);
  const MatrixZ pa = config_pairing(a, r), pb = config_pairing(b, r);
  IsometrySearch search({pa, with_negatives(a)}, {pb, with_negatives(b)}, true);
  return search.first();
}

struct StrataNode {
  std::size_t id = 0;
  std::size_t rank = 0;
  std::size_t dim = 0;
  bool minimal = false;             // no proper face of the same rank
  std::vector<VectorZ> config;      // standardized representative in Z^rank
  std::string key;
  std::vector<std::size_t> occurrences;  // faces per class domain lying in this orbit
  std::size_t example_class = 0;
  std::vector<std::size_t> example_face;  // ray indices in that class domain
};

struct StrataPoset {
  std::size_t g = 0;
  std::vector<StrataNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (upper, lower) cover relations

  std::vector<std::size_t> children(std::size_t n) const {
    std::vector<std::size_t> out;
    for (const auto& [u, l] : edges)
      if (u == n) out.push_back(l);
    return out;
  }
  std::vector<std::size_t> parents(std::size_t n) const {
    std::vector<std::size_t> out;
    for (const auto& [u, l] : edges)
      if (l == n) out.push_back(u);
    return out;
  }

  /// Node equivalent to the given standardized configuration, with the witness
  /// mapping the argument onto the node representative.
  std::optional<std::pair<std::size_t, Unimodular>> locate(const std::vector<VectorZ>& config, std::size_t rank,
                                                           std::size_t dim) const {
    const std::string key = config_key(config, rank, dim);
    for (const auto& n : nodes) {
      if (n.key != key) continue;
      if (auto u = configs_equivalent(n.config, config, rank)) return std::make_pair(n.id, *u);
    }
    return std::nullopt;
  }
};

/// GL_g(Z)-orbit poset of all faces (including the zero face) of the perfect
/// domains of an enumeration.
inline StrataPoset strata_poset(const Enumeration& e) {
  const std::size_t g = e.g;
  std::vector<StrataNode> nodes;
  std::map<std::string, std::vector<std::size_t>> by_key;
  auto classify = [&](const std::vector<VectorZ>& rays, std::size_t dim) -> std::size_t {
    const StandardFace s = standardize(rays, g);
    const std::string key = config_key(s.config, s.rank, dim);
    auto& bucket = by_key[key];
    for (auto id : bucket)
      if (configs_equivalent(nodes[id].config, s.config, s.rank)) return id;
    StrataNode n;
    n.id = nodes.size();
    n.rank = s.rank;
    n.dim = dim;
    n.config = s.config;
    n.key = key;
    n.occurrences.assign(e.classes.size(), 0);
    nodes.push_back(std::move(n));
    bucket.push_back(nodes.size() - 1);
    return nodes.size() - 1;
  };

  const std::size_t zero = classify({}, 0);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& c : e.classes) {
    const FaceLattice lat = face_lattice(c.domain, c.id);
    std::vector<std::size_t> node_of(lat.faces.size());
    for (std::size_t i = 0; i < lat.faces.size(); ++i) {
      const Face& f = lat.faces[i];
      node_of[i] = classify(face_vectors(c.domain, f.ray_subset), f.dim);
      StrataNode& n = nodes[node_of[i]];
      if (n.example_face.empty()) {
        n.example_class = c.id;
        n.example_face = f.ray_subset;
      }
      ++n.occurrences[c.id];
    }
    for (std::size_t i = 0; i < lat.faces.size(); ++i) {
      if (lat.faces[i].dim == 1) edges.insert({node_of[i], zero});
      for (auto j : lat.covers[i]) edges.insert({node_of[i], node_of[j]});
    }
  }
  nodes[zero].occurrences.assign(e.classes.size(), 1);

  // Canonical order: (rank, dim, ray count, key, configuration).
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = nodes[a];
    const auto& y = nodes[b];
    if (x.rank != y.rank) return x.rank < y.rank;
    if (x.dim != y.dim) return x.dim < y.dim;
    if (x.config.size() != y.config.size()) return x.config.size() < y.config.size();
    if (x.key != y.key) return x.key < y.key;
    return std::lexicographical_compare(x.config.begin(), x.config.end(), y.config.begin(), y.config.end(), lex_less);
  });
  std::vector<std::size_t> new_id(nodes.size());
  StrataPoset p;
  p.g = g;
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_id[order[k]] = k;
    p.nodes.push_back(nodes[order[k]]);
    p.nodes.back().id = k;
  }
  std::set<std::pair<std::size_t, std::size_t>> remapped;
  for (const auto& [u, l] : edges) remapped.insert({new_id[u], new_id[l]});
  p.edges.assign(remapped.begin(), remapped.end());
  for (auto& n : p.nodes) {
    n.minimal = true;
    for (auto c : p.children(n.id))
      if (p.nodes[c].rank == n.rank) n.minimal = false;
  }
  return p;
}

inline StrataPoset strata_poset(std::size_t g, const EnumerateOptions& opt = {}) {
  return strata_poset(enumerate_perfect(g, opt));
}

/// Matches the rank <= max_rank part of `big` against `small` as labeled
/// posets. Returns the node map (big id -> small id) on success.
inline std::optional<std::map<std::size_t, std::size_t>> restricted_isomorphism(const StrataPoset& big,
                                                                                const StrataPoset& small,
                                                                                std::size_t max_rank) {
  std::map<std::size_t, std::size_t> map;
  std::set<std::size_t> used;
  for (const auto& n : big.nodes) {
    if (n.rank > max_rank) continue;
    auto hit = small.locate(n.config, n.rank, n.dim);
    if (!hit) return std::nullopt;
    const auto& m = small.nodes[hit->first];
    if (m.rank != n.rank || m.dim != n.dim || m.minimal != n.minimal) return std::nullopt;
    if (!used.insert(hit->first).second) return std::nullopt;
    map[n.id] = hit->first;
  }
  if (used.size() != small.nodes.size()) return std::nullopt;
  std::set<std::pair<std::size_t, std::size_t>> image;
  for (const auto& [u, l] : big.edges) {
    if (!map.count(u) || !map.count(l)) continue;
    image.insert({map.at(u), map.at(l)});
  }
  std::set<std::pair<std::size_t, std::size_t>> target(small.edges.begin(), small.edges.end());
  if (image != target) return std::nullopt;
  return map;
}

struct CodimComplementResult {
  bool holds = true;
  std::vector<std::size_t> checked;  // nodes of maximal rank-r cones
  std::vector<std::vector<std::size_t>> over_cones;
};

/// Over-cones of every maximal rank-r cone in the poset: each must have one
/// more dimension, rank r + 1, and all of them must form a single orbit.
inline CodimComplementResult codim_complement_check(const StrataPoset& p, std::size_t r) {
  CodimComplementResult out;
  if (r == 0) return out;
  if (r >= p.g) throw DomainError("codim_complement_check: need r < g");
  for (const auto& n : p.nodes) {
    if (n.rank != r || n.dim != sym_dim(r)) continue;
    out.checked.push_back(n.id);
    const auto ups = p.parents(n.id);
    out.over_cones.push_back(ups);
    if (ups.size() != 1) out.holds = false;
    for (auto u : ups)
      if (p.nodes[u].dim != n.dim + 1 || p.nodes[u].rank != r + 1) out.holds = false;
  }
  if (out.checked.empty()) out.holds = false;
  return out;
}

}  // namespace voronoi
