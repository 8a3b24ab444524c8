#pragma once

// GL_g(Z)-equivalence of positive definite forms: backtracking isometry
// search, automorphism groups by an orbit-stabilizer chain, fingerprints.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "voronoi/forms.hpp"
#include "voronoi/minvec.hpp"

namespace voronoi {

/// A finite vector set closed under negation together with the integral
/// bilinear pairing that the sought maps must preserve.
struct VectorSystem {
  MatrixZ gram;
  std::vector<VectorZ> vectors;
};

/// Both signs of every vector, ordered by (norm, lex) of the canonical sign.
inline std::vector<VectorZ> with_negatives(const std::vector<VectorZ>& canonical) {
  std::vector<VectorZ> out;
  out.reserve(2 * canonical.size());
  for (const auto& v : canonical) {
    out.push_back(v);
    out.push_back(negate(v));
  }
  return out;
}

/// Enumerates U ∈ GL_n(Z) with Uᵀ·A·U == B and U(S_B) ⊆ S_A.
///
/// A basis b_1..b_n is drawn from S_B; images c_i ∈ S_A are chosen with
/// matching Gram entries and U = C·B⁻¹ is kept when integral. When the sets
/// are the full short-vector shells of the two forms the set condition holds
/// automatically, otherwise it is checked.
class IsometrySearch {
 public:
  IsometrySearch(VectorSystem a, VectorSystem b, bool check_set_map)
      : a_(std::move(a)), b_(std::move(b)), check_set_(check_set_map) {
    n_ = a_.gram.rows();
    if (b_.gram.rows() != n_) throw DimensionMismatch("isometry search: dimension mismatch");
    std::vector<VectorZ> rows;
    for (std::size_t i = 0; i < b_.vectors.size() && basis_.size() < n_; ++i) {
      rows.push_back(b_.vectors[i]);
      if (rank(MatrixZ::from_rows(rows)) == basis_.size() + 1)
        basis_.push_back(b_.vectors[i]);
      else
        rows.pop_back();
    }
    if (basis_.size() != n_) throw DomainError("isometry search: vectors do not span");
    basis_inverse_ = inverse(to_rational(MatrixZ::from_columns(basis_)));
    target_gram_ = MatrixZ(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const VectorZ bi = b_.gram * basis_[i];
      for (std::size_t j = 0; j < n_; ++j) target_gram_(i, j) = dot(bi, basis_[j]);
    }
    images_.reserve(a_.vectors.size());
    for (const auto& v : a_.vectors) {
      VectorZ av = a_.gram * v;
      Integer norm = dot(v, av);
      images_.push_back({v, std::move(av), std::move(norm)});
    }
    if (check_set_) b_set_.insert(b_.vectors.begin(), b_.vectors.end());
    a_set_.insert(a_.vectors.begin(), a_.vectors.end());
  }

  const std::vector<VectorZ>& basis() const { return basis_; }

  /// Indices into S_A that are admissible images of basis vector `level`
  /// given the images already fixed for the earlier basis vectors.
  std::vector<std::size_t> candidates(std::size_t level, const std::vector<std::size_t>& fixed) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < images_.size(); ++k)
      if (consistent(k, level, fixed)) out.push_back(k);
    return out;
  }

  const VectorZ& image_vector(std::size_t k) const { return images_[k].v; }

  /// Runs the search; `visit` returns true to stop. `prefix` fixes the images
  /// (indices into S_A) of the first basis vectors. Returns true if stopped.
  bool run(const std::function<bool(const Unimodular&)>& visit, std::vector<std::size_t> prefix = {}) const {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      std::vector<std::size_t> head(prefix.begin(), prefix.begin() + i);
      if (!consistent(prefix[i], i, head)) return false;
    }
    return descend(prefix, visit);
  }

  std::optional<Unimodular> first() const {
    std::optional<Unimodular> found;
    run([&](const Unimodular& u) {
      found = u;
      return true;
    });
    return found;
  }

 private:
  struct Image {
    VectorZ v;
    VectorZ av;
    Integer norm;
  };

  bool consistent(std::size_t k, std::size_t level, const std::vector<std::size_t>& fixed) const {
    if (images_[k].norm != target_gram_(level, level)) return false;
    for (std::size_t j = 0; j < level; ++j)
      if (dot(images_[k].v, images_[fixed[j]].av) != target_gram_(level, j)) return false;
    return true;
  }

  bool descend(std::vector<std::size_t>& chosen, const std::function<bool(const Unimodular&)>& visit) const {
    const std::size_t level = chosen.size();
    if (level == n_) return finish(chosen, visit);
    for (std::size_t k = 0; k < images_.size(); ++k) {
      if (!consistent(k, level, chosen)) continue;
      chosen.push_back(k);
      const bool stop = descend(chosen, visit);
      chosen.pop_back();
      if (stop) return true;
    }
    return false;
  }

  bool finish(const std::vector<std::size_t>& chosen, const std::function<bool(const Unimodular&)>& visit) const {
    MatrixQ c(n_, n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) c(i, j) = images_[chosen[j]].v[i];
    const MatrixQ uq = c * basis_inverse_;
    if (!is_integral(uq)) return false;
    const MatrixZ um = to_integral(uq);
    const Integer det = determinant(um);
    if (det != 1 && det != -1) return false;
    if (um.transpose() * a_.gram * um != b_.gram) return false;
    if (check_set_) {
      for (const auto& v : b_.vectors)
        if (!a_set_.count(um * v)) return false;
    }
    return visit(Unimodular(um));
  }

  VectorSystem a_, b_;
  bool check_set_;
  std::size_t n_ = 0;
  std::vector<VectorZ> basis_;
  MatrixQ basis_inverse_;
  MatrixZ target_gram_;
  std::vector<Image> images_;
  std::set<VectorZ, LexLess> a_set_, b_set_;
};

/// Invariants of the GL_g(Z)-class of a positive definite integral form.
struct Fingerprint {
  std::size_t dim = 0;
  Integer det;
  Rational min_norm;
  std::size_t pair_count = 0;
  std::vector<Integer> min_gram;  // sorted |q(v,w)| over pairs v < w of minimal vectors
  Rational span_bound;            // smallest B whose shell spans
  std::vector<std::pair<Rational, std::size_t>> shells;  // (norm, pair count) up to span_bound

  friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
    return a.dim == b.dim && a.det == b.det && a.min_norm == b.min_norm && a.pair_count == b.pair_count &&
           a.min_gram == b.min_gram && a.span_bound == b.span_bound && a.shells == b.shells;
  }
  friend bool operator!=(const Fingerprint& a, const Fingerprint& b) { return !(a == b); }

  std::string key() const {
    std::string s = std::to_string(dim) + "|" + det.get_str() + "|" + min_norm.get_str() + "|" +
                    std::to_string(pair_count) + "|";
    for (const auto& x : min_gram) s += x.get_str() + ",";
    s += "|" + span_bound.get_str() + "|";
    for (const auto& [v, c] : shells) s += v.get_str() + ":" + std::to_string(c) + ",";
    return s;
  }
  std::uint64_t hash() const { return fnv1a(key()); }
};

inline Fingerprint fingerprint(const SymForm& q) {
  const MinData md = min_data(q);
  Fingerprint f;
  f.dim = q.dim();
  f.det = determinant(q.matrix());
  f.min_norm = md.min_norm;
  f.pair_count = md.vectors.size();
  for (std::size_t i = 0; i < md.vectors.size(); ++i)
    for (std::size_t j = i + 1; j < md.vectors.size(); ++j) f.min_gram.push_back(abs(bilinear(q, md.vectors[i], md.vectors[j])));
  std::sort(f.min_gram.begin(), f.min_gram.end());
  auto [bound, shell] = spanning_short_vectors(q);
  f.span_bound = bound;
  for (const auto& sv : shell) {
    if (!f.shells.empty() && f.shells.back().first == sv.value)
      ++f.shells.back().second;
    else
      f.shells.push_back({sv.value, 1});
  }
  return f;
}

inline VectorSystem short_vector_system(const SymForm& q) {
  auto [bound, shell] = spanning_short_vectors(q);
  std::vector<VectorZ> canon;
  canon.reserve(shell.size());
  for (auto& sv : shell) canon.push_back(std::move(sv.vec));
  return {q.matrix(), with_negatives(canon)};
}

/// U with Uᵀ q1 U == q2 if the forms are GL_g(Z)-equivalent.
inline std::optional<Unimodular> are_equivalent(const SymForm& q1, const SymForm& q2) {
  if (q1.dim() != q2.dim()) throw DimensionMismatch("are_equivalent: dimension mismatch");
  if (!is_positive_definite(q1) || !is_positive_definite(q2)) throw NotPositiveDefinite();
  if (fingerprint(q1) != fingerprint(q2)) return std::nullopt;
  IsometrySearch search(short_vector_system(q1), short_vector_system(q2), false);
  auto u = search.first();
  if (u && transform(q1, *u) != q2) throw Error("are_equivalent: unsound witness");
  return u;
}

struct AutomorphismGroup {
  std::vector<Unimodular> generators;  // each satisfies Uᵀ q U == q
  Integer order;
};

/// Automorphism group of q via the stabilizer chain of a basis drawn from the
/// spanning short-vector shell.
inline AutomorphismGroup automorphisms(const SymForm& q) {
  if (!is_positive_definite(q)) throw NotPositiveDefinite();
  const VectorSystem sys = short_vector_system(q);
  IsometrySearch search(sys, sys, false);
  const auto& basis = search.basis();
  std::vector<std::size_t> fixed;
  auto index_of = [&](const VectorZ& v) {
    for (std::size_t k = 0; k < sys.vectors.size(); ++k)
      if (sys.vectors[k] == v) return k;
    throw Error("automorphisms: basis vector missing from shell");
  };
  AutomorphismGroup group{{}, Integer(1)};
  std::set<Unimodular> gens;
  const Unimodular id = Unimodular::identity(q.dim());
  for (std::size_t level = 0; level < basis.size(); ++level) {
    std::size_t orbit = 0;
    for (std::size_t k : search.candidates(level, fixed)) {
      auto prefix = fixed;
      prefix.push_back(k);
      std::optional<Unimodular> found;
      search.run(
          [&](const Unimodular& u) {
            found = u;
            return true;
          },
          prefix);
      if (!found) continue;
      ++orbit;
      if (!(*found == id)) gens.insert(*found);
    }
    group.order *= static_cast<unsigned long>(orbit);
    fixed.push_back(index_of(basis[level]));
  }
  group.generators.assign(gens.begin(), gens.end());
  for (const auto& g : group.generators)
    if (transform(q, g) != q) throw Error("automorphisms: unsound generator");
  return group;
}

/// Closes a generating set into the full group (small groups only).
inline std::vector<Unimodular> group_elements(const std::vector<Unimodular>& generators, std::size_t dim,
                                              std::size_t limit = 1000000) {
  std::set<Unimodular> seen{Unimodular::identity(dim)};
  std::vector<Unimodular> frontier{Unimodular::identity(dim)};
  while (!frontier.empty()) {
    std::vector<Unimodular> next;
    for (const auto& x : frontier)
      for (const auto& g : generators) {
        Unimodular y = x * g;
        if (seen.insert(y).second) {
          if (seen.size() > limit) throw SearchOverflow("group_elements: group too large");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace voronoi
