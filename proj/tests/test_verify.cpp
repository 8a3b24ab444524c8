#include <gtest/gtest.h>

#include "support.hpp"

using namespace voronoi;
using namespace testing_support;

namespace {

const Enumeration& enumeration(std::size_t g) {
  static std::map<std::size_t, Enumeration> cache;
  auto it = cache.find(g);
  if (it == cache.end()) it = cache.emplace(g, enumerate_perfect(g)).first;
  return it->second;
}

const StrataPoset& poset(std::size_t g) {
  static std::map<std::size_t, StrataPoset> cache;
  auto it = cache.find(g);
  if (it == cache.end()) it = cache.emplace(g, strata_poset(enumeration(g))).first;
  return it->second;
}

}  // namespace

TEST(Rank1Rays, PassForSmallG) {
  for (std::size_t g = 2; g <= 4; ++g) {
    const Certificate c = check_rank1_rays(enumeration(g));
    EXPECT_TRUE(c.pass) << c.detail;
    EXPECT_TRUE(reverify(c));
  }
  EXPECT_EQ(check_rank1_rays(enumeration(2)).witness["classes"][0]["rays"].size(), 3u);
}

TEST(Interior, Examples) {
  const Certificate i2 = check_interior(identity_form(2), enumeration(2));
  EXPECT_TRUE(i2.pass);
  EXPECT_EQ(rational_from_json(i2.witness["value"]), 2);
  EXPECT_TRUE(reverify(i2));

  const Certificate ray = check_interior(rank1(vec({1, 0})), enumeration(2));
  EXPECT_FALSE(ray.pass);
  EXPECT_EQ(rational_from_json(ray.witness["value"]), 1);
  EXPECT_TRUE(reverify(ray));

  const Certificate self = check_interior(a2(), enumeration(2));
  EXPECT_TRUE(self.pass);
  EXPECT_EQ(rational_from_json(self.witness["value"]), 3);
  EXPECT_EQ(trace_pair(a2(), a2()), 10);
}

TEST(Interior, HullValueIsTheMinimumOverPerfectForms) {
  // Compare against ⟨q, f⟩ / min(q) over many translates of the class representatives.
  std::mt19937_64 rng(seed_for("Interior.HullValueIsTheMinimumOverPerfectForms", 61));
  for (int k = 0; k < 20; ++k) {
    const std::size_t g = 2 + rng() % 2;
    const SymForm f = random_psd(rng, g, 2 + rng() % 2);
    const Rational value = rational_from_json(check_interior(f, enumeration(g)).witness["value"]);
    for (int t = 0; t < 30; ++t)
      for (const auto& c : enumeration(g).classes) {
        const SymForm q = transform(c.representative, random_unimodular(rng, g, 8));
        EXPECT_GE(trace_pair(q, f) / c.min_norm, value);
      }
  }
}

TEST(Interior, Errors) {
  EXPECT_THROW(check_interior(form({{1, 2}, {2, 1}}), enumeration(2)), NotPSD);
  EXPECT_THROW(check_interior(form({{0, 0}, {0, 0}}), enumeration(2)), RankTooLow);
}

TEST(Interior, CorpusVerdicts) {
  Reducer r(enumeration(3));
  const Certificate c = check_interior_corpus(interior_corpus(3, 40, 5), r);
  EXPECT_TRUE(c.pass) << c.detail;
  EXPECT_TRUE(reverify(c));
}

TEST(Product, Examples) {
  const Certificate c11 = check_product(scalar(2), scalar(2), enumeration(2));
  EXPECT_TRUE(c11.pass) << c11.detail;
  EXPECT_EQ(c11.witness["face"].size(), 2u);
  EXPECT_TRUE(reverify(c11));
  const Certificate c12 = check_product(scalar(2), a2(), enumeration(3));
  EXPECT_TRUE(c12.pass) << c12.detail;
  EXPECT_TRUE(reverify(c12));
  const Certificate c22 = check_product(a2(), a2(), enumeration(4));
  EXPECT_TRUE(c22.pass) << c22.detail;
  EXPECT_TRUE(reverify(c22));
}

TEST(Product, Errors) {
  EXPECT_THROW(check_product(scalar(1), a2(), enumeration(3)), MinNormMismatch);
  EXPECT_THROW(check_product(identity_form(2), scalar(1), enumeration(3)), NotPerfect);
  EXPECT_THROW(check_product(scalar(2), scalar(2), enumeration(3)), DimensionMismatch);
}

TEST(Product, PerfectExtensionContainsTheSum) {
  const SymForm r = direct_sum(a2(), a2());
  const SymForm q = perfect_extension(r);
  EXPECT_TRUE(is_perfect(q));
  const MinData mq = min_data(q);
  const MinData mr = min_data(r);
  for (const auto& x : mr.vectors) EXPECT_EQ(Rational(evaluate(q, x)), mq.min_norm);
}

TEST(Product, TamperedPayloadIsRejected) {
  Certificate c = check_product(scalar(2), a2(), enumeration(3));
  ASSERT_TRUE(reverify(c));
  c.witness["functional"]["matrix"][0][0] = 99;
  EXPECT_FALSE(reverify(c));
}

TEST(Closure, Examples) {
  // D(A₂): boundary pieces are single rays.
  const Certificate a2c = check_closure(domain(a2()).rays, poset(1), false);
  EXPECT_TRUE(a2c.pass) << a2c.detail;
  EXPECT_EQ(a2c.witness["sections"].size(), 3u);
  for (const auto& s : a2c.witness["sections"]) EXPECT_EQ(s["rays"].size(), 1u);
  EXPECT_TRUE(reverify(a2c));

  // D(A₃): boundary pieces standardize to faces of the rank-2 decomposition.
  const Certificate a3c = check_closure(domain(a3()).rays, poset(2), false);
  EXPECT_TRUE(a3c.pass) << a3c.detail;
  EXPECT_TRUE(reverify(a3c));

  // The pair {e₁e₁ᵀ, e₂e₂ᵀ}: each single ray.
  const Certificate pair = check_closure({vec({1, 0}), vec({0, 1})}, poset(1), true);
  EXPECT_TRUE(pair.pass) << pair.detail;
  EXPECT_EQ(pair.witness["boundary"]["rays"].size(), 1u);
}

TEST(Closure, AllMinimalOrbits) {
  for (std::size_t r = 2; r <= 3; ++r)
    for (const auto& c : check_closure_all(poset(r), poset(r - 1))) {
      EXPECT_TRUE(c.pass) << c.detail;
      EXPECT_TRUE(reverify(c));
    }
}

TEST(Closure, Errors) {
  EXPECT_THROW(check_closure({vec({1, 0}), vec({2, 0})}, poset(1), false), NotMeetingInterior);
  EXPECT_THROW(check_closure({vec({1})}, poset(1), false), NotMeetingInterior);
}

TEST(CodimOne, RankOne) {
  CodimOneOptions opt;
  opt.bound = Integer(2);
  const Certificate c = check_codim_one(scalar(2), enumeration(2), opt);
  EXPECT_TRUE(c.pass) << c.detail;
  EXPECT_EQ(c.witness["cells"].size(), 5u);
  for (const auto& cell : c.witness["cells"]) EXPECT_EQ(vector_from_json(cell["v"]).back(), 1);
  EXPECT_TRUE(reverify(c));
}

TEST(CodimOne, RankTwo) {
  const Certificate c = check_codim_one(a2(), enumeration(3));
  EXPECT_TRUE(c.pass) << c.detail;
  EXPECT_EQ(c.inputs["bound"], 4);
  EXPECT_EQ(rational_from_json(c.witness["lambda"]), Rational(1, 2));
  EXPECT_TRUE(reverify(c));
}

TEST(CodimOne, DefiningForm) {
  const RationalSymForm q = codim_one_form(a2(), 2, vec({1, -1, 1}));
  EXPECT_EQ(evaluate(q, vec({1, -1, 1})), 1);
  EXPECT_EQ(evaluate(q, vec({1, 0, 0})), 1);
  EXPECT_EQ(evaluate(q, vec({0, 0, 1})), 4);
}

TEST(CodimOne, Errors) {
  CodimOneOptions opt;
  opt.max_candidates = 10;
  EXPECT_THROW(check_codim_one(a2(), enumeration(3), opt), SearchBoundExceeded);
  EXPECT_THROW(check_codim_one(a2(), enumeration(2)), DimensionMismatch);
}

TEST(Certificate, JsonRoundTrip) {
  const Certificate c = check_closure(domain(a3()).rays, poset(2), false);
  const Certificate back = Certificate::from_json(Json::parse(c.to_json().dump()));
  EXPECT_EQ(back.to_json().dump(), c.to_json().dump());
  EXPECT_TRUE(reverify(back));
}
