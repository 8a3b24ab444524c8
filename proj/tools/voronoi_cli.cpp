// Command-line front end: enumeration, short vectors, equivalence, reduction,
// faces, strata, certificates and DOT export.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "voronoi.hpp"

using namespace voronoi;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

struct Options {
  std::size_t jobs = 1;
  std::size_t g = 0;
  bool force = false;
  std::string form, form_a, form_b, out, dot, db, poset, claim = "all";
  std::optional<std::size_t> class_id;
  std::optional<long> bound;
  std::size_t max_g = 4;
  std::size_t corpus = 50;
};

EnumerateOptions enum_options(const Options& o) {
  EnumerateOptions e;
  e.force = o.force;
  e.jobs = o.jobs;
  return e;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(path, j);
}

SymForm form_arg(const std::string& path) { return form_from_json(read_json_file(path)); }

int cmd_enumerate(const Options& o) {
  Clock clock;
  const Enumeration e = cached_enumeration(o.g, enum_options(o));
  write_json_file(o.out.empty() ? "classes.json" : o.out, with_provenance(enumeration_to_json(e), clock.seconds()));
  write_text_file(o.dot.empty() ? "graph.dot" : o.dot, enumeration_dot(e));
  std::cout << "g=" << o.g << ": " << e.classes.size() << " perfect form class" << (e.classes.size() == 1 ? "" : "es")
            << "\n";
  for (const auto& c : e.classes)
    std::cout << "  class " << c.id << ": min " << c.min_norm << ", " << c.domain.rays.size() << " pairs, "
              << c.domain.facet_normals.size() << " facets in " << c.facet_orbits.size() << " orbits, |Aut| "
              << c.aut_order << "\n";
  return kOk;
}

int cmd_minvec(const Options& o) {
  const SymForm q = form_arg(o.form);
  const MinData md = min_data(q);
  emit(Json{{"version", kFormatVersion},
            {"form", to_json(q)},
            {"min_norm", to_json(md.min_norm)},
            {"pairs", md.vectors.size()},
            {"vectors", to_json(md.vectors)},
            {"perfect", span_dimension(md.vectors) == sym_dim(q.dim())}},
       o.out);
  return kOk;
}

int cmd_equiv(const Options& o) {
  const SymForm a = form_arg(o.form_a), b = form_arg(o.form_b);
  const auto u = are_equivalent(a, b);
  Json j{{"version", kFormatVersion}, {"equivalent", u.has_value()}};
  if (u) j["witness"] = to_json(*u);
  emit(j, o.out);
  return kOk;
}

int cmd_reduce(const Options& o) {
  const Json fj = read_json_file(o.form);
  const RationalSymForm f = rational_form_from_json(fj);
  const Enumeration e = cached_enumeration(f.dim(), enum_options(o));
  const Reduction r = reduce(f, e);
  Json objective = Json::array();
  for (const auto& v : r.objective) objective.push_back(to_json(v));
  emit(Json{{"version", kFormatVersion},
            {"class_id", r.class_id},
            {"transform", to_json(r.transform)},
            {"perfect_form", to_json(r.form)},
            {"min_norm", to_json(r.min_norm)},
            {"face_rays", to_json(r.face_rays)},
            {"combination", to_json(r.combination)},
            {"objective", objective}},
       o.out);
  return kOk;
}

int cmd_faces(const Options& o) {
  PerfectDomain d;
  std::size_t cid = 0;
  if (!o.form.empty()) {
    d = domain(form_arg(o.form));
  } else {
    if (o.g == 0) throw CLI::ValidationError("faces", "give --form or --g");
    const Enumeration e = cached_enumeration(o.g, enum_options(o));
    cid = o.class_id.value_or(0);
    if (cid >= e.classes.size()) throw CLI::ValidationError("--class", "no such class");
    d = e.classes[cid].domain;
  }
  const FaceLattice lat = face_lattice(d, cid);
  Json by_dim = Json::object();
  for (const auto& f : lat.faces)
    by_dim[std::to_string(f.dim)].push_back(Json{{"rays", f.ray_subset}, {"rank", f.barycenter_rank}});
  std::vector<std::size_t> fvec(sym_dim(d.dim()) + 1, 0);
  for (const auto& f : lat.faces) ++fvec[f.dim];
  emit(Json{{"version", kFormatVersion},
            {"form", to_json(d.form)},
            {"rays", to_json(d.rays)},
            {"f_vector", fvec},
            {"faces", by_dim}},
       o.out);
  return kOk;
}

int cmd_strata(const Options& o) {
  Clock clock;
  const StrataPoset p = strata_poset(cached_enumeration(o.g, enum_options(o)));
  write_json_file(o.out.empty() ? "poset.json" : o.out, with_provenance(poset_to_json(p), clock.seconds()));
  write_text_file(o.dot.empty() ? "poset.dot" : o.dot, poset_dot(p));
  std::cout << "g=" << o.g << ": " << p.nodes.size() << " face orbits, " << p.edges.size() << " cover relations\n";
  return kOk;
}

SymForm scaled_to(const SymForm& q, const Rational& from, const Rational& to) {
  const Rational c = to / from;
  if (c.get_den() != 1) throw Error("scaled_to: non-integral scale");
  return SymForm(c.get_num() * q.matrix());
}

std::vector<Certificate> run_claim(const std::string& claim, std::size_t g, const Options& o,
                                   std::map<std::size_t, Enumeration>& cache) {
  auto enumeration = [&](std::size_t n) -> const Enumeration& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, cached_enumeration(n, enum_options(o))).first;
    return it->second;
  };
  std::vector<Certificate> out;
  if (claim == claims::kRays) {
    out.push_back(check_rank1_rays(enumeration(g)));
  } else if (claim == claims::kInterior) {
    Reducer r(enumeration(g));
    out.push_back(check_interior_corpus(interior_corpus(g, o.corpus, 20240 + g), r));
  } else if (claim == claims::kProduct) {
    for (std::size_t m = g - 1; m >= (g + 1) / 2 && m >= 1; --m) {
      const std::size_t n = g - m;
      for (const auto& p : enumeration(m).classes)
        for (const auto& q : enumeration(n).classes) {
          if (m == n && q.id < p.id) continue;
          const Rational common = lcm(p.min_norm.get_num(), q.min_norm.get_num());
          out.push_back(check_product(scaled_to(p.representative, p.min_norm, common),
                                      scaled_to(q.representative, q.min_norm, common), enumeration(g)));
        }
    }
  } else if (claim == claims::kClosure) {
    if (g >= 2) {
      const StrataPoset upper = strata_poset(enumeration(g));
      const StrataPoset lower = strata_poset(enumeration(g - 1));
      for (auto& c : check_closure_all(upper, lower)) out.push_back(std::move(c));
    }
  } else if (claim == claims::kCodim1) {
    if (g >= 2) {
      CodimOneOptions opt;
      if (o.bound) opt.bound = Integer(*o.bound);
      for (const auto& c : enumeration(g - 1).classes)
        out.push_back(check_codim_one(c.representative, enumeration(g), opt));
    }
  } else {
    throw CLI::ValidationError("--claim", "unknown claim " + claim);
  }
  return out;
}

std::vector<std::string> claim_list(const std::string& claim) {
  if (claim == "all") return claims::kAll;
  return {claim};
}

int cmd_verify(const Options& o) {
  Clock clock;
  std::map<std::size_t, Enumeration> cache;
  std::vector<Certificate> certs;
  for (const auto& claim : claim_list(o.claim))
    for (auto& c : run_claim(claim, o.g, o, cache)) certs.push_back(std::move(c));
  bool ok = true;
  for (const auto& c : certs) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.claim << ": " << c.detail << "\n";
    ok = ok && c.pass;
  }
  write_json_file(o.out.empty() ? "certificates.json" : o.out,
                  with_provenance(certificates_to_json(o.g, certs), clock.seconds()));
  return ok ? kOk : kFail;
}

int cmd_export_dot(const Options& o) {
  if (!o.db.empty()) {
    write_text_file(o.out.empty() ? "graph.dot" : o.out, enumeration_dot(enumeration_from_json(read_json_file(o.db))));
  } else if (!o.poset.empty()) {
    write_text_file(o.out.empty() ? "poset.dot" : o.out, poset_dot(poset_from_json(read_json_file(o.poset))));
  } else {
    throw CLI::ValidationError("export-dot", "give --db or --poset");
  }
  return kOk;
}

int cmd_selftest(const Options& o) {
  static const std::size_t expected[] = {0, 1, 1, 1, 2, 3};
  std::map<std::size_t, Enumeration> cache;
  std::vector<std::pair<std::string, bool>> rows;
  std::printf("%-4s %-12s %-6s %s\n", "g", "check", "result", "detail");
  auto row = [&](std::size_t g, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%-4zu %-12s %-6s %s\n", g, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    rows.emplace_back(name, pass);
  };
  for (std::size_t g = 1; g <= o.max_g; ++g) {
    Clock clock;
    const Enumeration& e = cache.emplace(g, cached_enumeration(g, enum_options(o))).first->second;
    const bool count_ok = g >= std::size(expected) || e.classes.size() == expected[g];
    row(g, "enumerate", count_ok,
        std::to_string(e.classes.size()) + " classes in " + std::to_string(clock.seconds()) + " s");
    for (const auto& claim : claims::kAll) {
      for (const auto& c : run_claim(claim, g, o, cache)) row(g, claim, c.pass && reverify(c), c.detail);
    }
    if (g >= 2) {
      const auto iso = restricted_isomorphism(strata_poset(e), strata_poset(cache.at(g - 1)), g - 1);
      row(g, "STRATA", iso.has_value(), iso ? "rank <= " + std::to_string(g - 1) + " part matches g = " + std::to_string(g - 1)
                                            : "restricted poset differs");
    }
  }
  std::size_t failed = 0;
  for (const auto& [name, pass] : rows) failed += pass ? 0 : 1;
  std::printf("%zu checks, %zu failed\n", rows.size(), failed);
  return failed ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect quadratic forms and the perfect-cone decomposition"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* enumerate = app.add_subcommand("enumerate", "Classify perfect forms in dimension g");
  enumerate->add_option("--g", o.g, "Dimension")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--out", o.out, "Output database (classes.json)");
  enumerate->add_option("--dot", o.dot, "Neighbor graph (graph.dot)");
  enumerate->add_flag("--force", o.force, "Allow g > 6");

  auto* minvec = app.add_subcommand("minvec", "Minimal norm and minimal vectors of a form");
  minvec->add_option("--form", o.form, "Form JSON")->required()->check(CLI::ExistingFile);
  minvec->add_option("--out", o.out, "Output file (stdout)");

  auto* equiv = app.add_subcommand("equiv", "Test GL_g(Z)-equivalence of two forms");
  equiv->add_option("--a", o.form_a, "First form")->required()->check(CLI::ExistingFile);
  equiv->add_option("--b", o.form_b, "Second form")->required()->check(CLI::ExistingFile);
  equiv->add_option("--out", o.out, "Output file (stdout)");

  auto* red = app.add_subcommand("reduce", "Locate a psd form in the perfect-cone decomposition");
  red->add_option("--form", o.form, "Form JSON (rational entries allowed)")->required()->check(CLI::ExistingFile);
  red->add_option("--out", o.out, "Output file (stdout)");

  auto* faces = app.add_subcommand("faces", "Face lattice of a perfect domain");
  faces->add_option("--form", o.form, "Perfect form JSON")->check(CLI::ExistingFile);
  faces->add_option("--g", o.g, "Dimension (with --class)");
  faces->add_option("--class", o.class_id, "Class id from the enumeration");
  faces->add_option("--out", o.out, "Output file (stdout)");

  auto* strata = app.add_subcommand("strata", "GL_g(Z)-orbit poset of faces");
  strata->add_option("--g", o.g, "Dimension")->required()->check(CLI::PositiveNumber);
  strata->add_option("--out", o.out, "Output poset (poset.json)");
  strata->add_option("--dot", o.dot, "Output graph (poset.dot)");

  auto* verify = app.add_subcommand("verify", "Produce certificates");
  verify->add_option("--g", o.g, "Dimension")->required()->check(CLI::PositiveNumber);
  verify->add_option("--claim", o.claim, "BC-RAYS|BC-INTERIOR|PRODUCT|CLOSURE|CODIM1|all")
      ->check(CLI::IsMember({"BC-RAYS", "BC-INTERIOR", "PRODUCT", "CLOSURE", "CODIM1", "all"}));
  verify->add_option("--out", o.out, "Output (certificates.json)");
  verify->add_option("--bound", o.bound, "Coefficient bound for CODIM1");
  verify->add_option("--corpus", o.corpus, "Number of random forms for BC-INTERIOR");

  auto* dot = app.add_subcommand("export-dot", "Write DOT from a stored database or poset");
  dot->add_option("--db", o.db, "classes.json")->check(CLI::ExistingFile);
  dot->add_option("--poset", o.poset, "poset.json")->check(CLI::ExistingFile);
  dot->add_option("--out", o.out, "Output file");

  auto* selftest = app.add_subcommand("selftest", "Run the verification battery for small g");
  selftest->add_option("--max-g", o.max_g, "Largest dimension")->check(CLI::Range(1, 5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kOk : kUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(o);
    if (*minvec) return cmd_minvec(o);
    if (*equiv) return cmd_equiv(o);
    if (*red) return cmd_reduce(o);
    if (*faces) return cmd_faces(o);
    if (*strata) return cmd_strata(o);
    if (*verify) return cmd_verify(o);
    if (*dot) return cmd_export_dot(o);
    if (*selftest) return cmd_selftest(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
