#include <gtest/gtest.h>

#include "support.hpp"

using namespace voronoi;
using namespace testing_support;

TEST(MinData, Examples) {
  const MinData i2 = min_data(identity_form(2));
  EXPECT_EQ(i2.min_norm, 1);
  EXPECT_EQ(i2.vectors, (std::vector<VectorZ>{vec({0, 1}), vec({1, 0})}));

  const MinData m2 = min_data(a2());
  EXPECT_EQ(m2.min_norm, 2);
  EXPECT_EQ(m2.vectors, (std::vector<VectorZ>{vec({0, 1}), vec({1, 0}), vec({1, 1})}));

  const MinData m3 = min_data(a3());
  EXPECT_EQ(m3.min_norm, 2);
  EXPECT_EQ(m3.vectors.size(), 6u);
}

TEST(MinData, RejectsIndefiniteAndSemidefinite) {
  EXPECT_THROW(min_data(form({{1, 2}, {2, 1}})), NotPositiveDefinite);
  EXPECT_THROW(min_data(form({{1, 1}, {1, 1}})), NotPositiveDefinite);
}

TEST(MinData, RationalForms) {
  const RationalSymForm h = to_rational(scale(Integer(1), a2()));
  const RationalMinData md = min_data(RationalSymForm(Rational(1, 3) * h.matrix()));
  EXPECT_EQ(md.min_norm, Rational(2, 3));
  EXPECT_EQ(md.vectors.size(), 3u);
}

TEST(VectorsUpTo, Examples) {
  auto v1 = vectors_up_to(identity_form(2), 1);
  ASSERT_EQ(v1.size(), 2u);
  EXPECT_EQ(v1[0].vec, vec({0, 1}));
  EXPECT_EQ(v1[1].vec, vec({1, 0}));
  EXPECT_EQ(v1[0].value, 1);

  auto v2 = vectors_up_to(identity_form(2), 2);
  ASSERT_EQ(v2.size(), 4u);
  EXPECT_EQ(v2[2].vec, vec({1, -1}));
  EXPECT_EQ(v2[3].vec, vec({1, 1}));
  EXPECT_EQ(v2[3].value, 2);

  auto v3 = vectors_up_to(a2(), 2);
  ASSERT_EQ(v3.size(), 3u);
  for (const auto& s : v3) EXPECT_EQ(s.value, 2);
  EXPECT_THROW(vectors_up_to(a2(), 0), DomainError);
}

TEST(MinData, MatchesBruteForce) {
  std::mt19937_64 rng(seed_for("MinData.MatchesBruteForce", 21));
  for (int k = 0; k < 120; ++k) {
    const std::size_t g = 1 + rng() % 4;
    const SymForm q = transform(random_pd(rng, g), random_unimodular(rng, g, 4));
    const MinData md = min_data(q);
    const auto brute = oracle::brute_min(to_oracle(q));
    ASSERT_EQ(md.min_norm, Rational(brute.min)) << q.matrix();
    std::vector<VectorZ> want;
    for (const auto& v : brute.vectors) want.push_back(v);
    EXPECT_EQ(md.vectors, want) << q.matrix();
  }
}

TEST(VectorsUpTo, MatchesBruteForce) {
  std::mt19937_64 rng(seed_for("VectorsUpTo.MatchesBruteForce", 22));
  for (int k = 0; k < 60; ++k) {
    const std::size_t g = 1 + rng() % 3;
    const SymForm q = random_pd(rng, g, 1);
    const long bound = 2 + static_cast<long>(rng() % 6);
    std::size_t brute = 0;
    for (const auto& x : oracle::brute_short(to_oracle(q), bound))
      if (oracle::sign_canonical(x)) ++brute;
    EXPECT_EQ(vectors_up_to(q, bound).size(), brute);
  }
}

TEST(SpanningShortVectors, SpanAndInvariance) {
  const auto [bound, shell] = spanning_short_vectors(d4());
  EXPECT_EQ(bound, 2);
  EXPECT_EQ(shell.size(), 12u);
  std::mt19937_64 rng(seed_for("SpanningShortVectors.SpanAndInvariance", 23));
  for (int k = 0; k < 30; ++k) {
    const std::size_t g = 2 + rng() % 3;
    const SymForm q = random_pd(rng, g);
    const auto [b1, s1] = spanning_short_vectors(q);
    const auto [b2, s2] = spanning_short_vectors(transform(q, random_unimodular(rng, g)));
    EXPECT_EQ(b1, b2);
    EXPECT_EQ(s1.size(), s2.size());
  }
}
