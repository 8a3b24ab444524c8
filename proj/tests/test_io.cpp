#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "support.hpp"

using namespace voronoi;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("voronoi_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const TempDir& dir) {
  const std::string cmd = "cd '" + dir.path.string() + "' && '" VORONOI_CLI "' " + args + " > out.txt 2> err.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string data(const std::string& name) { return std::string(VORONOI_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(Codec, IntegersSwitchToStringsBeyondTwoToThe53) {
  EXPECT_EQ(to_json(Integer(42)).dump(), "42");
  const Integer big = (Integer(1) << 53) + 1;
  EXPECT_TRUE(to_json(big).is_string());
  EXPECT_EQ(integer_from_json(to_json(big)), big);
  EXPECT_EQ(integer_from_json(to_json(Integer(-big))), -big);
  EXPECT_TRUE(to_json(Integer(Integer(1) << 53)).is_number_integer());
  EXPECT_THROW(integer_from_json(Json("12x")), Error);
  EXPECT_THROW(integer_from_json(Json(1.5)), Error);
}

TEST(Codec, RationalsAndForms) {
  const Rational r(-7, 3);
  EXPECT_EQ(to_json(r).dump(), R"({"den":3,"num":-7})");
  EXPECT_EQ(rational_from_json(to_json(r)), r);
  EXPECT_EQ(rational_from_json(Json(5)), 5);
  EXPECT_EQ(form_from_json(to_json(a3())), a3());
  EXPECT_EQ(form_from_json(read_json_file(data("a2.json"))), a2());
  EXPECT_THROW(form_from_json(Json::parse(R"({"g":3,"matrix":[[1,0],[0,1]]})")), DimensionMismatch);
  EXPECT_THROW(form_from_json(Json::parse(R"({"g":2,"matrix":[[1,2],[0,1]]})")), DomainError);
  const RationalSymForm h = rational_form_from_json(read_json_file(data("half_sum.json")));
  EXPECT_EQ(h(0, 1), Rational(1, 3));
}

TEST(Database, RoundTripReverifiesWitnesses) {
  const Enumeration e = enumerate_perfect(4);
  const Json j = enumeration_to_json(e);
  const Enumeration back = enumeration_from_json(Json::parse(j.dump()));
  ASSERT_EQ(back.classes.size(), e.classes.size());
  for (std::size_t i = 0; i < e.classes.size(); ++i) {
    EXPECT_EQ(back.classes[i].id, e.classes[i].id);
    EXPECT_EQ(back.classes[i].representative, e.classes[i].representative);
  }
  EXPECT_EQ(enumeration_to_json(back).dump(), j.dump());
}

TEST(Database, TamperingIsDetected) {
  Json j = enumeration_to_json(enumerate_perfect(4));
  Json bad = j;
  bad["classes"][1]["neighbors"][0]["witness"] = to_json(Unimodular::identity(4));
  EXPECT_THROW(enumeration_from_json(bad), Error);
  bad = j;
  bad["classes"][0]["aut_order"] = 7;
  EXPECT_THROW(enumeration_from_json(bad), Error);
  bad = j;
  bad["version"] = 2;
  EXPECT_THROW(enumeration_from_json(bad), Error);
}

TEST(Poset, RoundTripAndDot) {
  const StrataPoset p = strata_poset(3);
  const Json j = poset_to_json(p);
  const StrataPoset back = poset_from_json(Json::parse(j.dump()));
  EXPECT_EQ(poset_to_json(back).dump(), j.dump());
  const std::string dot = poset_dot(p);
  EXPECT_NE(dot.find("label=\"r=2, dim=3, minimal=false\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"r=0, dim=0, minimal=true\""), std::string::npos);
  const std::string g = enumeration_dot(enumerate_perfect(4));
  EXPECT_NE(g.find("c1 -> c0"), std::string::npos);
  EXPECT_NE(g.find("fp="), std::string::npos);
}

TEST(Cache, ReusesStoredEnumeration) {
  TempDir dir;
  ::setenv("VORONOI_CACHE_DIR", dir.path.c_str(), 1);
  const Enumeration first = cached_enumeration(3);
  EXPECT_TRUE(fs::exists(dir.file("classes_g3.json")));
  const Enumeration second = cached_enumeration(3);
  EXPECT_EQ(second.classes.size(), first.classes.size());
  ::unsetenv("VORONOI_CACHE_DIR");
}

TEST(Cli, EnumerateWritesDatabaseAndGraph) {
  TempDir dir;
  EXPECT_EQ(run("enumerate --g 2", dir), 0);
  const Json j = read_json_file(dir.file("classes.json"));
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["classes"].size(), 1u);
  EXPECT_TRUE(fs::exists(dir.file("graph.dot")));
}

TEST(Cli, OutputsAreDeterministic) {
  TempDir dir;
  ASSERT_EQ(run("enumerate --g 4 --out a.json --dot a.dot", dir), 0);
  ASSERT_EQ(run("--jobs 2 enumerate --g 4 --out b.json --dot b.dot", dir), 0);
  Json a = read_json_file(dir.file("a.json")), b = read_json_file(dir.file("b.json"));
  a.erase("provenance");
  b.erase("provenance");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(slurp(dir.file("a.dot")), slurp(dir.file("b.dot")));
}

TEST(Cli, MinvecEquivReduceFaces) {
  TempDir dir;
  ASSERT_EQ(run("minvec --form '" + data("a2.json") + "' --out m.json", dir), 0);
  const Json m = read_json_file(dir.file("m.json"));
  EXPECT_EQ(rational_from_json(m["min_norm"]), 2);
  EXPECT_EQ(m["pairs"], 3);

  ASSERT_EQ(run("equiv --a '" + data("a2.json") + "' --b '" + data("a2_alt.json") + "' --out e.json", dir), 0);
  const Json e = read_json_file(dir.file("e.json"));
  EXPECT_TRUE(e["equivalent"].get<bool>());
  EXPECT_EQ(transform(a2(), unimodular_from_json(e["witness"])), form_from_json(read_json_file(data("a2_alt.json"))));

  ASSERT_EQ(run("reduce --form '" + data("i2.json") + "' --out r.json", dir), 0);
  EXPECT_TRUE(combination_from_json(read_json_file(dir.file("r.json"))["combination"]).holds());

  ASSERT_EQ(run("faces --form '" + data("a3.json") + "' --out f.json", dir), 0);
  EXPECT_EQ(read_json_file(dir.file("f.json"))["f_vector"][1], 6);
}

TEST(Cli, StrataAndExportDot) {
  TempDir dir;
  ASSERT_EQ(run("strata --g 2", dir), 0);
  EXPECT_TRUE(fs::exists(dir.file("poset.json")));
  const std::string dot = slurp(dir.file("poset.dot"));
  EXPECT_NE(dot.find("minimal="), std::string::npos);
  ASSERT_EQ(run("export-dot --poset poset.json --out again.dot", dir), 0);
  EXPECT_EQ(slurp(dir.file("again.dot")), dot);
  ASSERT_EQ(run("enumerate --g 3", dir), 0);
  ASSERT_EQ(run("export-dot --db classes.json --out db.dot", dir), 0);
  EXPECT_EQ(slurp(dir.file("db.dot")), slurp(dir.file("graph.dot")));
}

TEST(Cli, VerifyWritesReverifiableCertificates) {
  TempDir dir;
  ASSERT_EQ(run("verify --g 3 --claim all", dir), 0);
  const auto certs = certificates_from_json(read_json_file(dir.file("certificates.json")));
  EXPECT_GE(certs.size(), 5u);
  for (const auto& c : certs) {
    EXPECT_TRUE(c.pass) << c.claim;
    EXPECT_TRUE(reverify(c)) << c.claim;
  }
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run("", dir), 2);
  EXPECT_EQ(run("bogus", dir), 2);
  EXPECT_EQ(run("enumerate", dir), 2);
  EXPECT_EQ(run("enumerate --g 8", dir), 2);
  EXPECT_EQ(run("minvec --form missing.json", dir), 2);
  EXPECT_EQ(run("verify --g 2 --claim NOPE", dir), 2);
  EXPECT_EQ(run("--help", dir), 0);
  std::ofstream(dir.file("bad.json")) << "{\"g\":2,\"matrix\":[[1,2],[2,1]]}";
  EXPECT_EQ(run("minvec --form bad.json", dir), 2);
}
