#pragma once

// Versioned JSON databases, DOT export and the on-disk enumeration cache.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "voronoi/codec.hpp"
#include "voronoi/facelattice.hpp"
#include "voronoi/verify.hpp"
#include "voronoi/voronoi.hpp"

namespace voronoi {

inline constexpr const char* kToolVersion = "voronoi 1.0.0";

inline std::string hex_hash(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline void check_version(const Json& j) {
  if (!j.contains("version") || j.at("version") != kFormatVersion)
    throw Error("json: unsupported or missing format version");
}

/// Adds the provenance block, the only part of an output that varies between runs.
inline Json with_provenance(Json j, double wall_seconds) {
  j["provenance"] = Json{{"tool", kToolVersion}, {"wall_time_s", wall_seconds}};
  return j;
}

// ------------------------------------------------------------ enumerations

inline Json class_to_json(const PerfectClass& c) {
  Json gens = Json::array();
  for (const auto& u : c.aut_generators) gens.push_back(to_json(u));
  Json neighbors = Json::array();
  for (const auto& n : c.neighbors)
    neighbors.push_back(Json{{"facet", n.facet}, {"class_id", n.class_id}, {"witness", to_json(n.witness)}});
  return Json{{"id", c.id},
              {"representative", to_json(c.representative)},
              {"min_norm", to_json(c.min_norm)},
              {"fingerprint", hex_hash(c.fingerprint.hash())},
              {"aut_order", to_json(c.aut_order)},
              {"aut_generators", gens},
              {"rays", to_json(c.domain.rays)},
              {"facets", c.domain.facet_normals.size()},
              {"facet_orbits", c.facet_orbits},
              {"neighbors", neighbors}};
}

inline Json enumeration_to_json(const Enumeration& e) {
  Json classes = Json::array();
  for (const auto& c : e.classes) classes.push_back(class_to_json(c));
  return Json{{"version", kFormatVersion}, {"g", e.g}, {"classes", classes}};
}

/// Rebuilds an enumeration from JSON. Domains and invariants are recomputed
/// from the stored representatives and must agree with the stored values;
/// every neighbor witness is re-checked.
inline Enumeration enumeration_from_json(const Json& j) {
  check_version(j);
  Enumeration e;
  e.g = j.at("g").get<std::size_t>();
  for (const auto& cj : j.at("classes")) {
    const std::size_t id = cj.at("id").get<std::size_t>();
    if (id != e.classes.size()) throw Error("database: class ids are not consecutive");
    PerfectClass c = make_class(id, form_from_json(cj.at("representative")));
    if (c.representative.dim() != e.g) throw DimensionMismatch("database: class dimension differs from g");
    if (c.min_norm != rational_from_json(cj.at("min_norm")) || c.aut_order != integer_from_json(cj.at("aut_order")) ||
        c.domain.rays != vectors_from_json(cj.at("rays")) ||
        c.facet_orbits != cj.at("facet_orbits").get<std::vector<std::vector<std::size_t>>>() ||
        hex_hash(c.fingerprint.hash()) != cj.at("fingerprint").get<std::string>())
      throw Error("database: stored invariants of class " + std::to_string(id) + " do not match");
    c.aut_generators.clear();
    for (const auto& u : cj.at("aut_generators")) {
      Unimodular g = unimodular_from_json(u);
      if (transform(c.representative, g) != c.representative)
        throw Error("database: automorphism generator of class " + std::to_string(id) + " is unsound");
      c.aut_generators.push_back(std::move(g));
    }
    for (const auto& nj : cj.at("neighbors"))
      c.neighbors.push_back(
          {nj.at("facet").get<std::size_t>(), nj.at("class_id").get<std::size_t>(), unimodular_from_json(nj.at("witness"))});
    e.classes.push_back(std::move(c));
  }
  for (const auto& c : e.classes)
    for (const auto& n : c.neighbors) {
      if (n.class_id >= e.classes.size() || n.facet >= c.domain.facet_normals.size())
        throw Error("database: neighbor reference out of range");
      if (transform(neighbor(c.domain, n.facet), n.witness) != e.classes[n.class_id].representative)
        throw Error("database: neighbor witness of class " + std::to_string(c.id) + " does not verify");
    }
  return e;
}

// ------------------------------------------------------------------ posets

inline Json poset_to_json(const StrataPoset& p) {
  Json nodes = Json::array();
  for (const auto& n : p.nodes)
    nodes.push_back(Json{{"id", n.id},
                         {"rank", n.rank},
                         {"dim", n.dim},
                         {"minimal", n.minimal},
                         {"rays", n.config.size()},
                         {"config", to_json(n.config)},
                         {"occurrences", n.occurrences},
                         {"example_class", n.example_class},
                         {"example_face", n.example_face},
                         {"fingerprint", hex_hash(fnv1a(n.key))}});
  Json edges = Json::array();
  for (const auto& [u, l] : p.edges) edges.push_back(Json::array({u, l}));
  return Json{{"version", kFormatVersion}, {"g", p.g}, {"nodes", nodes}, {"edges", edges}};
}

inline StrataPoset poset_from_json(const Json& j) {
  check_version(j);
  StrataPoset p;
  p.g = j.at("g").get<std::size_t>();
  for (const auto& nj : j.at("nodes")) {
    StrataNode n;
    n.id = nj.at("id").get<std::size_t>();
    if (n.id != p.nodes.size()) throw Error("poset: node ids are not consecutive");
    n.rank = nj.at("rank").get<std::size_t>();
    n.dim = nj.at("dim").get<std::size_t>();
    n.minimal = nj.at("minimal").get<bool>();
    n.config = vectors_from_json(nj.at("config"));
    n.occurrences = nj.at("occurrences").get<std::vector<std::size_t>>();
    n.example_class = nj.at("example_class").get<std::size_t>();
    n.example_face = nj.at("example_face").get<std::vector<std::size_t>>();
    n.key = config_key(n.config, n.rank, n.dim);
    if (hex_hash(fnv1a(n.key)) != nj.at("fingerprint").get<std::string>())
      throw Error("poset: fingerprint of node " + std::to_string(n.id) + " does not match its configuration");
    p.nodes.push_back(std::move(n));
  }
  for (const auto& ej : j.at("edges")) {
    const auto u = ej.at(0).get<std::size_t>(), l = ej.at(1).get<std::size_t>();
    if (u >= p.nodes.size() || l >= p.nodes.size()) throw Error("poset: edge out of range");
    p.edges.emplace_back(u, l);
  }
  return p;
}

// ------------------------------------------------------------ certificates

inline Json certificates_to_json(std::size_t g, const std::vector<Certificate>& certs) {
  Json arr = Json::array();
  for (const auto& c : certs) arr.push_back(c.to_json());
  return Json{{"version", kFormatVersion}, {"g", g}, {"certificates", arr}};
}

inline std::vector<Certificate> certificates_from_json(const Json& j) {
  check_version(j);
  std::vector<Certificate> out;
  for (const auto& c : j.at("certificates")) out.push_back(Certificate::from_json(c));
  return out;
}

// --------------------------------------------------------------------- DOT

inline std::string enumeration_dot(const Enumeration& e) {
  std::ostringstream os;
  os << "digraph perfect_forms_g" << e.g << " {\n";
  for (const auto& c : e.classes)
    os << "  c" << c.id << " [label=\"class " << c.id << "\\nfp=" << hex_hash(c.fingerprint.hash()) << "\"];\n";
  for (const auto& c : e.classes)
    for (std::size_t k = 0; k < c.neighbors.size(); ++k)
      os << "  c" << c.id << " -> c" << c.neighbors[k].class_id << " [label=\"" << c.facet_orbits[k].size()
         << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string poset_dot(const StrataPoset& p) {
  std::ostringstream os;
  os << "digraph strata_g" << p.g << " {\n";
  for (const auto& n : p.nodes)
    os << "  n" << n.id << " [label=\"r=" << n.rank << ", dim=" << n.dim << ", minimal=" << (n.minimal ? "true" : "false")
       << "\", fp=\"" << hex_hash(fnv1a(n.key)) << "\"];\n";
  for (const auto& [u, l] : p.edges) os << "  n" << u << " -> n" << l << ";\n";
  os << "}\n";
  return os.str();
}

// ------------------------------------------------------------------- files

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    throw Error(path + ": " + ex.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

inline void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

/// Enumeration at g, reused from $VORONOI_CACHE_DIR when a verified copy exists.
inline Enumeration cached_enumeration(std::size_t g, const EnumerateOptions& opt = {}) {
  const char* dir = std::getenv("VORONOI_CACHE_DIR");
  if (!dir || !*dir) return enumerate_perfect(g, opt);
  const std::filesystem::path path = std::filesystem::path(dir) / ("classes_g" + std::to_string(g) + ".json");
  if (std::filesystem::exists(path)) return enumeration_from_json(read_json_file(path.string()));
  Enumeration e = enumerate_perfect(g, opt);
  std::filesystem::create_directories(dir);
  write_json_file(path.string(), enumeration_to_json(e));
  return e;
}

}  // namespace voronoi
