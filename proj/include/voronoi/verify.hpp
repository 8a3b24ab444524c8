#pragma once

// Checkers for the structure of the perfect-cone decomposition. Each returns
// a certificate whose payload can be re-checked with plain form arithmetic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "voronoi/codec.hpp"
#include "voronoi/facelattice.hpp"
#include "voronoi/voronoi.hpp"

namespace voronoi {

namespace claims {
inline const std::string kRays = "BC-RAYS";
inline const std::string kInterior = "BC-INTERIOR";
inline const std::string kProduct = "PRODUCT";
inline const std::string kClosure = "CLOSURE";
inline const std::string kCodim1 = "CODIM1";
inline const std::vector<std::string> kAll = {kRays, kInterior, kProduct, kClosure, kCodim1};
}  // namespace claims

struct Certificate {
  std::string claim;
  Json inputs = Json::object();
  bool pass = false;
  std::string detail;
  Json witness = Json::object();

  Json to_json() const {
    return Json{{"claim", claim}, {"inputs", inputs}, {"verdict", pass ? "PASS" : "FAIL"}, {"detail", detail},
                {"witness", witness}};
  }
  static Certificate from_json(const Json& j) {
    Certificate c;
    c.claim = j.at("claim").get<std::string>();
    c.inputs = j.at("inputs");
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict != "PASS" && verdict != "FAIL") throw Error("certificate: bad verdict '" + verdict + "'");
    c.pass = verdict == "PASS";
    c.detail = j.value("detail", "");
    c.witness = j.at("witness");
    return c;
  }
};

namespace detail {

inline std::set<VectorZ, LexLess> canonical_set(const std::vector<VectorZ>& vs) {
  std::set<VectorZ, LexLess> out;
  for (const auto& v : vs) out.insert(canonical_sign(v));
  return out;
}

inline VectorZ embed(const VectorZ& v, std::size_t offset, std::size_t total) {
  VectorZ out(total, Integer(0));
  for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
  return out;
}

inline RationalSymForm rational_barycenter(const std::vector<VectorZ>& rays, std::size_t g) {
  return to_rational(barycenter(rays, g));
}

}  // namespace detail

// ---------------------------------------------------------------- BC-RAYS

inline Certificate check_rank1_rays(const Enumeration& e) {
  Certificate c;
  c.claim = claims::kRays;
  c.inputs = Json{{"g", e.g}};
  c.pass = true;
  Json classes = Json::array();
  for (const auto& cl : e.classes) {
    for (const auto& x : cl.domain.rays) {
      const bool ok = is_primitive(x) && psd_rank(rank1(x)).rank == 1 &&
                      Rational(evaluate(cl.representative, x)) == cl.min_norm;
      if (!ok) {
        c.pass = false;
        c.detail = "class " + std::to_string(cl.id) + ": ray " + to_string(x) + " is not a primitive minimal vector";
      }
    }
    classes.push_back(Json{{"id", cl.id},
                           {"form", to_json(cl.representative)},
                           {"min_norm", to_json(cl.min_norm)},
                           {"rays", to_json(cl.domain.rays)}});
  }
  if (c.pass) c.detail = std::to_string(e.classes.size()) + " classes, every ray primitive of rank 1";
  c.witness = Json{{"classes", classes}};
  return c;
}

// ------------------------------------------------------------ BC-INTERIOR

/// Hull support value of f: the least ⟨q, f⟩ / min(q) over perfect q, which
/// equals the total weight of f written on the minimal vectors of the
/// perfect form whose domain contains it. PASS iff the value exceeds 1.
inline Certificate check_interior(const SymForm& f, Reducer& reducer) {
  const PsdRank pr = psd_rank(f);
  if (!pr.is_psd) throw NotPSD();
  if (pr.rank == 0) throw RankTooLow("check_interior: zero form");
  const Reduction red = reducer.reduce(to_rational(f));
  const Rational value = red.combination.total();
  Certificate c;
  c.claim = claims::kInterior;
  c.inputs = Json{{"form", to_json(f)}, {"rank", pr.rank}};
  c.pass = value > 1;
  c.detail = "hull value " + value.get_str() + (c.pass ? " > 1" : " <= 1");
  c.witness = Json{{"value", to_json(value)},
                   {"perfect_form", to_json(red.form)},
                   {"min_norm", to_json(red.min_norm)},
                   {"class_id", red.class_id},
                   {"combination", to_json(red.combination)}};
  return c;
}

inline Certificate check_interior(const SymForm& f, const Enumeration& e) {
  Reducer r(e);
  return check_interior(f, r);
}

/// Deterministic psd test forms Aᵀ A with small random integer A of 1..g+1 rows.
inline std::vector<SymForm> interior_corpus(std::size_t g, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SymForm> out;
  while (out.size() < count) {
    const std::size_t rows = 1 + rng() % (g + 1);
    std::vector<VectorZ> a;
    for (std::size_t k = 0; k < rows; ++k) {
      VectorZ v(g);
      for (auto& x : v) x = static_cast<long>(rng() % 5) - 2;
      if (!is_zero(v)) a.push_back(std::move(v));
    }
    if (a.empty()) continue;
    out.push_back(barycenter(a, g));
  }
  return out;
}

/// Runs check_interior over a corpus: rank >= 2 forms must PASS and rank-1
/// primitive forms must FAIL.
inline Certificate check_interior_corpus(const std::vector<SymForm>& corpus, Reducer& reducer) {
  Certificate c;
  c.claim = claims::kInterior;
  c.pass = true;
  Json cases = Json::array();
  std::size_t interior = 0, extreme = 0;
  for (const auto& f : corpus) {
    const Certificate one = check_interior(f, reducer);
    const std::size_t rk = psd_rank(f).rank;
    bool expected;
    if (rk >= 2) {
      expected = one.pass;
      ++interior;
    } else {
      Integer content = 0;
      for (const auto& x : f.matrix().data()) content = gcd(content, x);
      const bool primitive_rank1 = content == 1;
      expected = primitive_rank1 ? !one.pass : true;
      if (primitive_rank1) ++extreme;
    }
    if (!expected) {
      c.pass = false;
      c.detail = "unexpected verdict for " + to_string(f.matrix());
    }
    cases.push_back(one.to_json());
  }
  c.inputs = Json{{"forms", corpus.size()}};
  if (c.pass)
    c.detail = std::to_string(interior) + " rank>=2 forms inside, " + std::to_string(extreme) +
               " primitive rank-1 forms on the boundary";
  c.witness = Json{{"cases", cases}};
  return c;
}

// ---------------------------------------------------------------- PRODUCT

/// A perfect form Q with min(Q) == min(r) and Min(r) ⊆ Min(Q), found by
/// pushing r along directions that vanish on its minimal vectors.
inline SymForm perfect_extension(const SymForm& r, std::size_t max_rounds = 1000) {
  RationalSymForm q = to_rational(r);
  const Rational m = min_data(r).min_norm;
  const std::size_t g = r.dim();
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const RationalMinData md = min_data(q);
    if (span_dimension(md.vectors) == sym_dim(g)) return primitive_form(q);
    std::vector<VectorZ> rows;
    for (const auto& x : md.vectors) rows.push_back(ray_coordinates(x));
    const auto ns = null_space(to_rational(MatrixZ::from_rows(rows)));
    RationalSymForm h = form_from_normal(ns.front(), g);
    if (psd_rank(h).is_psd) h = RationalSymForm(Rational(-1) * h.matrix());
    q = contiguous_form(q, h, m);
  }
  throw SearchOverflow("perfect_extension: round limit reached");
}

/// r = p ⊕ q: Min(r) is the union of the embedded minimal vectors and the cone
/// they span is a face of some maximal perfect domain in dimension m + n.
inline Certificate check_product(const SymForm& p, const SymForm& q, const Enumeration& e) {
  const MinData mp = min_data(p), mq = min_data(q);
  if (span_dimension(mp.vectors) != sym_dim(p.dim()) || span_dimension(mq.vectors) != sym_dim(q.dim()))
    throw NotPerfect();
  if (mp.min_norm != mq.min_norm) throw MinNormMismatch();
  const std::size_t g = p.dim() + q.dim();
  if (e.g != g) throw DimensionMismatch("check_product: enumeration dimension differs from m + n");
  const SymForm r = direct_sum(p, q);
  const Rational m = mp.min_norm;

  Certificate c;
  c.claim = claims::kProduct;
  c.inputs = Json{{"p", to_json(p)}, {"q", to_json(q)}};

  std::vector<VectorZ> expected;
  for (const auto& x : mp.vectors) expected.push_back(detail::embed(x, 0, g));
  for (const auto& y : mq.vectors) expected.push_back(detail::embed(y, p.dim(), g));
  const MinData mr = min_data(r);
  if (mr.min_norm != m || detail::canonical_set(mr.vectors) != detail::canonical_set(expected)) {
    c.pass = false;
    c.detail = "Min(p + q) is not the union of the embedded minimal vectors";
    return c;
  }

  // Fast path: the minimal face containing the barycenter of the cone.
  const Reduction red = reduce(detail::rational_barycenter(mr.vectors, g), e);
  SymForm big = red.form;
  Unimodular t = red.transform;
  std::size_t cls = red.class_id;
  std::string route = "barycenter descent";
  if (detail::canonical_set(red.face_rays) != detail::canonical_set(mr.vectors)) {
    big = perfect_extension(r);
    auto hit = e.classify(big);
    if (!hit) throw Error("check_product: extension is not an enumerated class");
    cls = hit->first;
    t = hit->second.inverse();
    route = "perfection of p + q";
  }
  const MinData mb = min_data(big);
  // H = min(Q)·r - m·Q is >= 0 on Min(Q) and vanishes exactly on Min(r).
  const SymForm h(mb.min_norm.get_num() * m.get_den() * r.matrix() - m.get_num() * mb.min_norm.get_den() * big.matrix());
  const auto face = detail::canonical_set(mr.vectors);
  bool ok = transform(e.classes[cls].representative, t) == big;
  std::size_t on_face = 0;
  for (const auto& x : mb.vectors) {
    const Integer v = evaluate(h, x);
    if (v < 0) ok = false;
    if (v == 0) {
      ++on_face;
      if (!face.count(x)) ok = false;
    }
  }
  if (on_face != face.size()) ok = false;
  c.pass = ok;
  c.detail = ok ? "face of the class-" + std::to_string(cls) + " domain (" + route + ")"
                : "no supporting functional cuts out Min(p + q)";
  c.witness = Json{{"sum", to_json(r)},
                   {"min_norm", to_json(m)},
                   {"face", to_json(mr.vectors)},
                   {"perfect_form", to_json(big)},
                   {"perfect_min_norm", to_json(mb.min_norm)},
                   {"perfect_min_vectors", to_json(mb.vectors)},
                   {"functional", to_json(h)},
                   {"class_id", cls},
                   {"class_representative", to_json(e.classes[cls].representative)},
                   {"transform", to_json(t)}};
  return c;
}

// ---------------------------------------------------------------- CLOSURE

struct ClosurePiece {
  std::vector<VectorZ> rays;
  StandardFace standard;
  std::optional<std::size_t> node;
  Unimodular to_node;  // maps the standardized config onto the node representative
};

namespace detail {

inline ClosurePiece closure_piece(std::vector<VectorZ> rays, std::size_t g, const StrataPoset& lower) {
  ClosurePiece piece;
  std::sort(rays.begin(), rays.end(), lex_less);
  piece.rays = std::move(rays);
  piece.standard = standardize(piece.rays, g);
  const std::size_t dim = span_dimension(piece.standard.config);
  if (auto hit = lower.locate(piece.standard.config, piece.standard.rank, dim)) {
    piece.node = hit->first;
    piece.to_node = hit->second;
  }
  return piece;
}

inline Json piece_json(const ClosurePiece& p, const StrataPoset& lower) {
  Json j{{"rays", to_json(p.rays)},
         {"rank", p.standard.rank},
         {"standardizer", to_json(p.standard.standardizer)},
         {"config", to_json(p.standard.config)}};
  if (p.node) {
    const auto& n = lower.nodes[*p.node];
    j["node"] = *p.node;
    j["node_config"] = to_json(n.config);
    j["node_map"] = to_json(p.to_node);
    j["minimal"] = n.minimal;
  }
  return j;
}

}  // namespace detail

/// Rays l_1..l_n of a face meeting C_r: take the longest prefix whose span
/// has rank r - 1, close it up to every ray in that span, and identify the
/// result (and every other maximal rank r - 1 section of the face) with a
/// face of the rank r - 1 decomposition.
inline Certificate check_closure(const std::vector<VectorZ>& face_rays, const StrataPoset& lower, bool input_minimal) {
  if (face_rays.empty()) throw NotMeetingInterior();
  const std::size_t r = face_rays.front().size();
  if (r < 2) throw NotMeetingInterior("check_closure: need r >= 2");
  if (lower.g + 1 != r) throw DimensionMismatch("check_closure: lower poset must have rank r - 1");
  if (psd_rank(barycenter(face_rays, r)).rank != r) throw NotMeetingInterior();

  std::vector<VectorZ> rays = face_rays;
  std::sort(rays.begin(), rays.end(), lex_less);
  std::size_t t = 0;
  while (t < rays.size() && rank(MatrixZ::from_rows(std::vector<VectorZ>(rays.begin(), rays.begin() + t + 1))) <= r - 1)
    ++t;
  const MatrixZ prefix = MatrixZ::from_rows(std::vector<VectorZ>(rays.begin(), rays.begin() + t));
  auto in_span = [&](const MatrixZ& basis, const VectorZ& x) {
    std::vector<VectorZ> rows;
    for (std::size_t i = 0; i < basis.rows(); ++i) rows.push_back(basis.row(i));
    const std::size_t before = rank(MatrixZ::from_rows(rows));
    rows.push_back(x);
    return rank(MatrixZ::from_rows(rows)) == before;
  };
  std::vector<VectorZ> closed;
  for (const auto& x : rays)
    if (in_span(prefix, x)) closed.push_back(x);

  // Every hyperplane section of rank r - 1, keyed by its ray set.
  std::set<std::vector<VectorZ>, std::function<bool(const std::vector<VectorZ>&, const std::vector<VectorZ>&)>>
      sections([](const std::vector<VectorZ>& a, const std::vector<VectorZ>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), lex_less);
      });
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (pick.size() == r - 1) {
      std::vector<VectorZ> rows;
      for (auto i : pick) rows.push_back(rays[i]);
      const MatrixZ basis = MatrixZ::from_rows(rows);
      if (rank(basis) != r - 1) return;
      std::vector<VectorZ> sec;
      for (const auto& x : rays)
        if (in_span(basis, x)) sec.push_back(x);
      sections.insert(sec);
      return;
    }
    for (std::size_t i = from; i < rays.size(); ++i) {
      pick.push_back(i);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);

  Certificate c;
  c.claim = claims::kClosure;
  c.inputs = Json{{"rays", to_json(face_rays)}, {"r", r}, {"input_minimal", input_minimal}};
  c.pass = true;
  auto accept = [&](const ClosurePiece& p) {
    if (p.standard.rank != r - 1 || !p.node) return false;
    const auto& n = lower.nodes[*p.node];
    if (n.rank != r - 1) return false;
    return !input_minimal || n.minimal;
  };
  const ClosurePiece main = detail::closure_piece(closed, r, lower);
  if (!accept(main)) {
    c.pass = false;
    c.detail = "boundary face from the prefix procedure does not match a rank " + std::to_string(r - 1) + " face";
  }
  Json others = Json::array();
  for (const auto& sec : sections) {
    const ClosurePiece p = detail::closure_piece(sec, r, lower);
    if (!accept(p) && c.pass) {
      c.pass = false;
      c.detail = "section " + to_string(MatrixZ::from_rows(sec)) + " does not match a rank " + std::to_string(r - 1) + " face";
    }
    others.push_back(detail::piece_json(p, lower));
  }
  if (c.pass)
    c.detail = "prefix t = " + std::to_string(t) + "; " + std::to_string(sections.size()) +
               " boundary sections, all faces of the rank " + std::to_string(r - 1) + " decomposition";
  c.witness = Json{{"t", t}, {"boundary", detail::piece_json(main, lower)}, {"sections", others}};
  return c;
}

/// Runs check_closure on every minimal node of rank g in `poset`.
inline std::vector<Certificate> check_closure_all(const StrataPoset& poset, const StrataPoset& lower) {
  std::vector<Certificate> out;
  for (const auto& n : poset.nodes)
    if (n.rank == poset.g && n.minimal) out.push_back(check_closure(n.config, lower, true));
  return out;
}

// ----------------------------------------------------------------- CODIM1

struct CodimOneOptions {
  std::optional<Integer> bound;      // default 2·(max diagonal of q)
  std::size_t max_candidates = 2000000;
};

/// Q_v(x) = λ q(x' - x_{r+1} v') + x_{r+1}² with λ = 1 / min(q) and v_{r+1} = 1.
inline RationalSymForm codim_one_form(const SymForm& q, const Rational& min_norm, const VectorZ& v) {
  const std::size_t r = q.dim();
  MatrixZ shear = MatrixZ::identity(r + 1);
  for (std::size_t i = 0; i < r; ++i) shear(i, r) = -v[i];
  MatrixZ one(1, 1);
  one(0, 0) = 1;
  const RationalSymForm base = direct_sum(scale(Rational(Rational(1) / min_norm), to_rational(q)),
                                          to_rational(SymForm(one)));
  return transform(base, Unimodular(shear));
}

/// Cells τ = cone(σ, v vᵀ) of the rank r + 1 decomposition with σ = D(q) in
/// the first r coordinates and v_{r+1} != 0, within |v_i| <= bound.
inline Certificate check_codim_one(const SymForm& q, const Enumeration& e, const CodimOneOptions& opt = {}) {
  const std::size_t r = q.dim();
  if (e.g != r + 1) throw DimensionMismatch("check_codim_one: enumeration must have dimension r + 1");
  const PerfectDomain sigma = domain(q);
  Integer bound = 0;
  for (std::size_t i = 0; i < r; ++i) bound = std::max(bound, q(i, i));
  bound *= 2;
  if (opt.bound) bound = *opt.bound;
  if (bound < 1) throw DomainError("check_codim_one: bound must be positive");

  std::vector<VectorZ> base;
  for (const auto& x : sigma.rays) base.push_back(detail::embed(x, 0, r + 1));

  const Integer width = 2 * bound + 1;
  Integer total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= width;
  total *= bound;
  if (total > Integer(static_cast<unsigned long>(opt.max_candidates)))
    throw SearchBoundExceeded("check_codim_one: " + total.get_str() + " candidates at bound " + bound.get_str());

  Reducer reducer(e);
  std::vector<VectorZ> cells;
  VectorZ v(r + 1);
  std::function<void(std::size_t)> sweep = [&](std::size_t i) {
    if (i == r + 1) {
      if (!is_primitive(v)) return;
      std::vector<VectorZ> rays = base;
      rays.push_back(v);
      const Reduction red = reducer.reduce(detail::rational_barycenter(rays, r + 1));
      if (detail::canonical_set(red.face_rays) == detail::canonical_set(rays)) cells.push_back(v);
      return;
    }
    const Integer lo = i == r ? Integer(1) : Integer(-bound);
    for (Integer x = lo; x <= bound; ++x) {
      v[i] = x;
      sweep(i + 1);
    }
  };
  sweep(0);

  Certificate c;
  c.claim = claims::kCodim1;
  c.inputs = Json{{"q", to_json(q)}, {"r", r}, {"bound", to_json(bound)}};
  c.pass = !cells.empty();
  c.detail = cells.empty() ? "no cells within the bound" : "";
  Json items = Json::array();
  const VectorZ& v0 = cells.empty() ? v : cells.front();
  const RationalSymForm q0 = cells.empty() ? RationalSymForm() : codim_one_form(q, sigma.min_norm, v0);
  for (const auto& w : cells) {
    Json item{{"v", to_json(w)}};
    if (w[r] != 1) {
      c.pass = false;
      c.detail = "cell with last coordinate " + w[r].get_str();
      items.push_back(item);
      continue;
    }
    const RationalSymForm qv = codim_one_form(q, sigma.min_norm, w);
    std::vector<VectorZ> rays = base;
    rays.push_back(w);
    const RationalMinData md = min_data(qv);
    if (md.min_norm != 1 || detail::canonical_set(md.vectors) != detail::canonical_set(rays)) {
      c.pass = false;
      c.detail = "defining form of cell " + to_string(w) + " has the wrong minimal vectors";
    }
    MatrixZ u = MatrixZ::identity(r + 1);
    for (std::size_t i = 0; i < r; ++i) u(i, r) = w[i] - v0[i];
    const Unimodular shear(u);
    if (transform(qv, shear) != q0 || shear.apply(v0) != w) {
      c.pass = false;
      c.detail = "shear does not map the first cell onto " + to_string(w);
    }
    item["defining_form"] = to_json(qv);
    item["shear"] = to_json(shear);
    items.push_back(item);
  }
  if (c.pass)
    c.detail = std::to_string(cells.size()) + " cells within |v_i| <= " + bound.get_str() + ", one parabolic orbit";
  c.witness = Json{{"lambda", to_json(Rational(1) / sigma.min_norm)},
                   {"sigma_rays", to_json(base)},
                   {"representative", to_json(v0)},
                   {"cells", items}};
  return c;
}

// ------------------------------------------------------------- re-checking

namespace detail {

inline bool recheck_interior_case(const Json& inputs, const Json& w, bool pass) {
  const SymForm f = form_from_json(inputs.at("form"));
  const ConicCombination comb = combination_from_json(w.at("combination"));
  if (!(comb.target == to_rational(f)) || !comb.holds()) return false;
  const SymForm q = form_from_json(w.at("perfect_form"));
  const Rational m = rational_from_json(w.at("min_norm"));
  for (const auto& x : comb.rays)
    if (Rational(evaluate(q, x)) != m) return false;
  // ⟨q', f⟩ / min(q') >= Σλ for every q', with equality at q.
  if (trace_pair(q, f) != m * comb.total()) return false;
  return (comb.total() > 1) == pass;
}

inline bool recheck_rays(const Certificate& c) {
  bool all = true;
  for (const auto& cl : c.witness.at("classes")) {
    const SymForm q = form_from_json(cl.at("form"));
    const Rational m = rational_from_json(cl.at("min_norm"));
    for (const auto& x : vectors_from_json(cl.at("rays")))
      if (!is_primitive(x) || psd_rank(rank1(x)).rank != 1 || Rational(evaluate(q, x)) != m) all = false;
  }
  return all == c.pass;
}

inline bool recheck_product(const Certificate& c) {
  if (!c.pass) return true;
  const auto& w = c.witness;
  const SymForm p = form_from_json(c.inputs.at("p")), q = form_from_json(c.inputs.at("q"));
  const SymForm r = form_from_json(w.at("sum"));
  if (!(direct_sum(p, q) == r)) return false;
  const Rational m = rational_from_json(w.at("min_norm"));
  const auto face = vectors_from_json(w.at("face"));
  for (const auto& x : face)
    if (Rational(evaluate(r, x)) != m) return false;
  const SymForm big = form_from_json(w.at("perfect_form"));
  const Rational mb = rational_from_json(w.at("perfect_min_norm"));
  const auto mins = vectors_from_json(w.at("perfect_min_vectors"));
  if (span_dimension(mins) != sym_dim(big.dim())) return false;
  const SymForm h = form_from_json(w.at("functional"));
  if (!(h == SymForm(mb.get_num() * m.get_den() * r.matrix() - m.get_num() * mb.get_den() * big.matrix()))) return false;
  const auto face_set = canonical_set(face);
  std::size_t zeros = 0;
  for (const auto& x : mins) {
    if (Rational(evaluate(big, x)) != mb) return false;
    const Integer v = evaluate(h, x);
    if (v < 0) return false;
    if (v == 0) {
      if (!face_set.count(canonical_sign(x))) return false;
      ++zeros;
    }
  }
  if (zeros != face_set.size()) return false;
  const SymForm rep = form_from_json(w.at("class_representative"));
  return transform(rep, unimodular_from_json(w.at("transform"))) == big;
}

inline bool recheck_piece(const Json& j, std::size_t r) {
  const auto rays = vectors_from_json(j.at("rays"));
  const std::size_t rk = j.at("rank").get<std::size_t>();
  if (rk + 1 != r || psd_rank(barycenter(rays, r)).rank != rk) return false;
  const Unimodular u = unimodular_from_json(j.at("standardizer"));
  const MatrixZ ut = u.matrix().transpose();
  std::vector<VectorZ> config;
  for (const auto& x : rays) {
    const VectorZ y = ut * x;
    for (std::size_t i = rk; i < r; ++i)
      if (y[i] != 0) return false;
    config.push_back(canonical_sign(VectorZ(y.begin(), y.begin() + rk)));
  }
  if (canonical_set(config) != canonical_set(vectors_from_json(j.at("config")))) return false;
  if (!j.contains("node")) return false;
  const Unimodular v = unimodular_from_json(j.at("node_map"));
  std::vector<VectorZ> image;
  for (const auto& x : config) image.push_back(v.apply(x));
  return canonical_set(image) == canonical_set(vectors_from_json(j.at("node_config")));
}

inline bool recheck_closure(const Certificate& c) {
  if (!c.pass) return true;
  const std::size_t r = c.inputs.at("r").get<std::size_t>();
  const bool minimal = c.inputs.at("input_minimal").get<bool>();
  auto ok = [&](const Json& piece) {
    return recheck_piece(piece, r) && (!minimal || piece.at("minimal").get<bool>());
  };
  if (!ok(c.witness.at("boundary"))) return false;
  for (const auto& s : c.witness.at("sections"))
    if (!ok(s)) return false;
  return true;
}

inline bool recheck_codim_one(const Certificate& c) {
  if (!c.pass) return true;
  const SymForm q = form_from_json(c.inputs.at("q"));
  const std::size_t r = q.dim();
  const Rational lambda = rational_from_json(c.witness.at("lambda"));
  const auto sigma = vectors_from_json(c.witness.at("sigma_rays"));
  const VectorZ v0 = vector_from_json(c.witness.at("representative"));
  std::optional<RationalSymForm> q0;
  for (const auto& item : c.witness.at("cells")) {
    const VectorZ v = vector_from_json(item.at("v"));
    const RationalSymForm qv = rational_form_from_json(item.at("defining_form"));
    // Q_v(x', x_{r+1}) = λ q(x' - x_{r+1} v') + x_{r+1}², checked entrywise.
    MatrixQ expect(r + 1, r + 1);
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j <= r; ++j) {
        auto coef = [&](std::size_t a, std::size_t k) -> Rational {
          if (a < r) return k == a ? Rational(1) : (k == r ? Rational(-v[a]) : Rational(0));
          return Rational(0);
        };
        Rational s = (i == r && j == r) ? Rational(1) : Rational(0);
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b) s += lambda * q(a, b) * coef(a, i) * coef(b, j);
        expect(i, j) = s;
      }
    if (!(qv.matrix() == expect)) return false;
    for (const auto& x : sigma)
      if (evaluate(qv, x) != 1) return false;
    if (evaluate(qv, v) != 1) return false;
    const Unimodular u = unimodular_from_json(item.at("shear"));
    for (std::size_t i = 0; i < r; ++i) {
      VectorZ e(r + 1, Integer(0));
      e[i] = 1;
      if (u.apply(e) != e) return false;
    }
    if (u.apply(v0) != v) return false;
    if (!q0) q0 = transform(qv, u);
    if (!(transform(qv, u) == *q0)) return false;
  }
  return true;
}

}  // namespace detail

/// Re-checks a certificate from its inputs and payload with form arithmetic
/// only. True iff the payload supports the recorded verdict.
inline bool reverify(const Certificate& c) {
  if (c.claim == claims::kRays) return detail::recheck_rays(c);
  if (c.claim == claims::kInterior) {
    if (c.witness.contains("cases")) {
      for (const auto& j : c.witness.at("cases")) {
        const Certificate one = Certificate::from_json(j);
        if (!detail::recheck_interior_case(one.inputs, one.witness, one.pass)) return false;
      }
      return true;
    }
    return detail::recheck_interior_case(c.inputs, c.witness, c.pass);
  }
  if (c.claim == claims::kProduct) return detail::recheck_product(c);
  if (c.claim == claims::kClosure) return detail::recheck_closure(c);
  if (c.claim == claims::kCodim1) return detail::recheck_codim_one(c);
  throw Error("reverify: unknown claim '" + c.claim + "'");
}

}  // namespace voronoi
