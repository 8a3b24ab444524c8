#pragma once

// Perfect forms, their Voronoi domains, the facet-crossing neighbor step,
// enumeration of perfect forms up to GL_g(Z), and reduction of psd forms into
// the perfect-cone decomposition.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "voronoi/cone.hpp"
#include "voronoi/forms.hpp"
#include "voronoi/isometry.hpp"
#include "voronoi/minvec.hpp"
#include "voronoi/parallel.hpp"

namespace voronoi {

/// D(q): the cone spanned by x xᵀ over the minimal vectors of a perfect q.
struct PerfectDomain {
  SymForm form;
  Rational min_norm;
  std::vector<VectorZ> rays;        // minimal vectors, sign-canonical, lex sorted
  std::size_t span_dim = 0;
  std::vector<SymForm> facet_normals;  // primitive integral, ⟨H, x xᵀ⟩ >= 0 on rays
  std::vector<RayMask> facet_rays;     // rays on which each normal vanishes

  std::size_t dim() const { return form.dim(); }
  RayMask all_rays() const {
    RayMask m;
    for (std::size_t i = 0; i < rays.size(); ++i) m.set(i);
    return m;
  }
};

inline bool is_perfect(const SymForm& q) {
  const MinData md = min_data(q);
  return span_dimension(md.vectors) == sym_dim(q.dim());
}

inline PerfectDomain domain(const SymForm& q) {
  const MinData md = min_data(q);
  PerfectDomain d;
  d.form = q;
  d.min_norm = md.min_norm;
  d.rays = md.vectors;
  d.span_dim = span_dimension(d.rays);
  if (d.span_dim != sym_dim(q.dim())) throw NotPerfect();
  std::vector<VectorZ> gens;
  gens.reserve(d.rays.size());
  for (const auto& x : d.rays) gens.push_back(ray_coordinates(x));
  for (auto& f : cone_facets(gens, d.span_dim)) {
    d.facet_normals.push_back(form_from_normal(f.normal, q.dim()));
    d.facet_rays.push_back(f.incident);
  }
  return d;
}

/// Domain of Wᵀ R W obtained from the domain of R without recomputation.
/// Ray i of the result is canonical(W⁻¹ r_i); facet masks are unchanged.
inline PerfectDomain transform_domain(const PerfectDomain& d, const Unimodular& w) {
  PerfectDomain out;
  out.form = transform(d.form, w);
  out.min_norm = d.min_norm;
  out.span_dim = d.span_dim;
  const Unimodular winv = w.inverse();
  out.rays.reserve(d.rays.size());
  for (const auto& r : d.rays) out.rays.push_back(canonical_sign(winv.apply(r)));
  for (const auto& h : d.facet_normals) out.facet_normals.push_back(transform(h, w));
  out.facet_rays = d.facet_rays;
  return out;
}

struct NeighborOptions {
  std::size_t max_iterations = 100000;
  Rational max_step = Rational(Integer(1) << 64);
};

/// q + ρH for the least ρ > 0 at which a vector with H[v] < 0 becomes minimal,
/// where H >= 0 on Min(q) and m = min(q). Bracketing on ρ, solved exactly.
inline RationalSymForm contiguous_form(const RationalSymForm& q, const RationalSymForm& h, const Rational& m,
                                       const NeighborOptions& opt = {}) {
  Rational lo = 0, hi = 1;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    const RationalSymForm f(q.matrix() + hi * h.matrix());
    if (!is_positive_definite(f)) {
      hi = (lo + hi) / 2;
      continue;
    }
    const RationalMinData md = min_data(f);
    if (md.min_norm == m) {
      const bool fresh = std::any_of(md.vectors.begin(), md.vectors.end(),
                                     [&](const VectorZ& v) { return evaluate(h, v) < 0; });
      if (fresh) return f;
      lo = hi;
      hi *= 2;
      if (hi > opt.max_step) throw FacetUnbounded("neighbor: no crossing below step " + opt.max_step.get_str());
      continue;
    }
    // Some vector dropped below m: the crossing happens where it reaches m.
    Rational best = hi;
    for (const auto& v : md.vectors) {
      const Rational hv = evaluate(h, v);
      if (hv >= 0) throw Error("neighbor: inconsistent descent vector");
      const Rational step = (evaluate(q, v) - m) / (-hv);
      if (step < best) best = step;
    }
    if (!(best > lo)) throw Error("neighbor: step bracket collapsed");
    hi = best;
  }
  throw SearchOverflow("neighbor: iteration limit reached");
}

/// The perfect form across facet `facet` of D(q), scaled to a primitive
/// integral matrix.
inline SymForm neighbor(const PerfectDomain& d, std::size_t facet, const NeighborOptions& opt = {}) {
  if (facet >= d.facet_normals.size()) throw DomainError("neighbor: facet index out of range");
  return primitive_form(contiguous_form(to_rational(d.form), to_rational(d.facet_normals[facet]), d.min_norm, opt));
}

/// Orbits of the facets of D(q) under the automorphism group generators.
/// Each orbit is sorted and orbits are ordered by their smallest facet index.
inline std::vector<std::vector<std::size_t>> facet_orbits(const PerfectDomain& d,
                                                          const std::vector<Unimodular>& generators) {
  const std::size_t nf = d.facet_rays.size();
  std::map<VectorZ, std::size_t, LexLess> ray_index;
  for (std::size_t i = 0; i < d.rays.size(); ++i) ray_index[d.rays[i]] = i;
  std::map<std::string, std::size_t> facet_index;
  for (std::size_t j = 0; j < nf; ++j) facet_index[d.facet_rays[j].to_string()] = j;

  std::vector<std::size_t> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& u : generators) {
    std::vector<std::size_t> perm(d.rays.size());
    for (std::size_t i = 0; i < d.rays.size(); ++i) {
      auto it = ray_index.find(canonical_sign(u.apply(d.rays[i])));
      if (it == ray_index.end()) throw Error("facet_orbits: generator does not preserve minimal vectors");
      perm[i] = it->second;
    }
    for (std::size_t j = 0; j < nf; ++j) {
      RayMask image;
      for (std::size_t i = 0; i < d.rays.size(); ++i)
        if (d.facet_rays[j].test(i)) image.set(perm[i]);
      auto it = facet_index.find(image.to_string());
      if (it == facet_index.end()) throw Error("facet_orbits: image is not a facet");
      const std::size_t a = find(j), b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < nf; ++j) groups[find(j)].push_back(j);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

struct NeighborEdge {
  std::size_t facet = 0;     // facet index in the class domain (orbit representative)
  std::size_t class_id = 0;  // class of the form across that facet
  Unimodular witness;        // Wᵀ · neighbor · W == representative of class_id
};

struct PerfectClass {
  std::size_t id = 0;
  SymForm representative;
  Rational min_norm;
  Fingerprint fingerprint;
  Integer aut_order;
  std::vector<Unimodular> aut_generators;
  PerfectDomain domain;
  std::vector<std::vector<std::size_t>> facet_orbits;
  std::vector<NeighborEdge> neighbors;  // one per facet orbit, same order
};

struct Enumeration {
  std::size_t g = 0;
  std::vector<PerfectClass> classes;

  /// Index of the class equivalent to q, with W such that Wᵀ q W == representative.
  std::optional<std::pair<std::size_t, Unimodular>> classify(const SymForm& q) const {
    const Fingerprint fp = fingerprint(q);
    for (const auto& c : classes) {
      if (c.fingerprint != fp) continue;
      if (auto w = are_equivalent(q, c.representative)) return std::make_pair(c.id, *w);
    }
    return std::nullopt;
  }
};

struct EnumerateOptions {
  bool force = false;
  std::size_t jobs = 1;
  std::size_t max_dim = 6;
};

inline PerfectClass make_class(std::size_t id, const SymForm& rep) {
  PerfectClass c;
  c.id = id;
  c.representative = rep;
  c.domain = domain(rep);
  c.min_norm = c.domain.min_norm;
  c.fingerprint = fingerprint(rep);
  const AutomorphismGroup aut = automorphisms(rep);
  c.aut_order = aut.order;
  c.aut_generators = aut.generators;
  c.facet_orbits = facet_orbits(c.domain, c.aut_generators);
  return c;
}

/// Perfect forms of dimension g up to GL_g(Z)-equivalence, by breadth-first
/// search over facet crossings starting at the A_g root form.
inline Enumeration enumerate_perfect(std::size_t g, const EnumerateOptions& opt = {}) {
  if (g == 0) throw DomainError("enumerate_perfect: dimension must be positive");
  if (g > opt.max_dim && !opt.force)
    throw DimensionTooLarge("enumerate_perfect: g = " + std::to_string(g) + " exceeds " +
                            std::to_string(opt.max_dim) + " (use force)");
  Enumeration e;
  e.g = g;
  e.classes.push_back(make_class(0, primitive_form(root_form(g))));
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cid = queue.front();
    queue.pop_front();
    const auto orbits = e.classes[cid].facet_orbits;
    const PerfectDomain dom = e.classes[cid].domain;
    std::vector<SymForm> crossed(orbits.size());
    parallel_for(orbits.size(), opt.jobs, [&](std::size_t k) { crossed[k] = neighbor(dom, orbits[k].front()); });
    std::vector<NeighborEdge> edges;
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      const SymForm& n = crossed[k];
      if (auto hit = e.classify(n)) {
        edges.push_back({orbits[k].front(), hit->first, hit->second});
        continue;
      }
      const LllResult red = lll_reduce(to_rational(n.matrix()));
      const Unimodular t(red.transform);
      const std::size_t id = e.classes.size();
      e.classes.push_back(make_class(id, transform(n, t)));
      edges.push_back({orbits[k].front(), id, t});
      queue.push_back(id);
    }
    e.classes[cid].neighbors = std::move(edges);
  }
  return e;
}

struct Reduction {
  std::size_t class_id = 0;
  Unimodular transform;                   // form == transformᵀ · representative · transform
  SymForm form;                           // perfect form whose domain contains f
  Rational min_norm;                      // min(form)
  RayMask face;                           // minimal face of D(form) containing f
  std::vector<VectorZ> face_rays;
  ConicCombination combination;
  std::vector<Rational> objective;        // ⟨q, f⟩ / min(q) along the descent
};

/// Locates psd forms in the decomposition by Voronoi descent. Holds a cache of
/// neighbor crossings per (class, facet).
class Reducer {
 public:
  explicit Reducer(const Enumeration& e, std::size_t max_steps = 100000) : e_(e), max_steps_(max_steps) {}

  Reduction reduce(const RationalSymForm& f) {
    if (f.dim() != e_.g) throw DimensionMismatch("reduce: form dimension differs from enumeration");
    const PsdRank pr = psd_rank(f);
    if (!pr.is_psd) throw NotPSD();
    if (pr.rank == 0) throw DomainError("reduce: zero form");

    Reduction out;
    out.class_id = 0;
    out.transform = Unimodular::identity(e_.g);
    for (std::size_t step = 0;; ++step) {
      if (step > max_steps_) throw SearchOverflow("reduce: step limit reached");
      const PerfectClass& c = e_.classes[out.class_id];
      const PerfectDomain d = transform_domain(c.domain, out.transform);
      out.objective.push_back(trace_pair(d.form, f) / d.min_norm);
      std::optional<std::size_t> worst;
      Rational worst_value = 0;
      for (std::size_t j = 0; j < d.facet_normals.size(); ++j) {
        const Rational v = trace_pair(d.facet_normals[j], f);
        if (v < worst_value) {
          worst_value = v;
          worst = j;
        }
      }
      if (!worst) {
        out.form = d.form;
        out.min_norm = d.min_norm;
        finish(d, f, out);
        return out;
      }
      const auto& [next_class, v] = crossing(out.class_id, *worst);
      out.transform = v.inverse() * out.transform;
      out.class_id = next_class;
    }
  }

  /// Class across facet j of the class representative, with V such that
  /// Vᵀ · neighbor · V == representative of that class.
  const std::pair<std::size_t, Unimodular>& crossing(std::size_t class_id, std::size_t facet) {
    const auto key = std::make_pair(class_id, facet);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    const SymForm n = neighbor(e_.classes[class_id].domain, facet);
    auto hit = e_.classify(n);
    if (!hit) throw Error("reduce: neighbor form is not in the enumeration");
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(key, *hit).first->second;
  }

 private:
  static void finish(const PerfectDomain& d, const RationalSymForm& f, Reduction& out) {
    auto zero_face = [&](const RationalSymForm& x) {
      RayMask mask = d.all_rays();
      for (std::size_t j = 0; j < d.facet_normals.size(); ++j)
        if (trace_pair(d.facet_normals[j], x) == 0) mask &= d.facet_rays[j];
      return mask;
    };
    out.face = zero_face(f);
    for (std::size_t i = 0; i < d.rays.size(); ++i)
      if (out.face.test(i)) out.face_rays.push_back(d.rays[i]);

    // Peel off rays until the residual vanishes; each step drops a facet-defined face.
    ConicCombination comb{{}, {}, f};
    MatrixQ residual = f.matrix();
    RayMask mask = out.face;
    while (true) {
      bool nonzero = std::any_of(residual.data().begin(), residual.data().end(), [](const Rational& x) { return x != 0; });
      if (!nonzero) break;
      std::size_t r0 = 0;
      while (r0 < d.rays.size() && !mask.test(r0)) ++r0;
      if (r0 == d.rays.size()) throw Error("reduce: residual outside the cone");
      const RationalSymForm ray = to_rational(rank1(d.rays[r0]));
      const RationalSymForm res(residual);
      std::optional<Rational> t;
      for (std::size_t j = 0; j < d.facet_normals.size(); ++j) {
        const Rational hr = trace_pair(d.facet_normals[j], ray);
        if (hr <= 0) continue;
        const Rational ratio = trace_pair(d.facet_normals[j], res) / hr;
        if (!t || ratio < *t) t = ratio;
      }
      if (!t) t = residual(0, 0) / ray(0, 0);  // a single-ray domain (g = 1)
      if (*t <= 0) throw Error("reduce: non-positive coefficient");
      comb.rays.push_back(d.rays[r0]);
      comb.coeffs.push_back(*t);
      residual = residual - (*t) * ray.matrix();
      if (std::any_of(residual.data().begin(), residual.data().end(), [](const Rational& x) { return x != 0; })) {
        mask &= zero_face(RationalSymForm(residual));
        mask.reset(r0);
      }
    }
    if (!comb.holds()) throw Error("reduce: combination does not reproduce the input");
    out.combination = std::move(comb);
  }

  const Enumeration& e_;
  std::size_t max_steps_;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, Unimodular>> cache_;
};

inline Reduction reduce(const RationalSymForm& f, const Enumeration& e) {
  Reducer r(e);
  return r.reduce(f);
}

}  // namespace voronoi
