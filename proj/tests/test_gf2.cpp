#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "cosetlab/gf2.hpp"
#include "test_util.hpp"

using namespace cosetlab;
using gf2::BitVector;
using gf2::Subspace;

TEST(BitVector, StringAndIntegerForms) {
  BitVector v = BitVector::from_string("1011");
  EXPECT_EQ(v.to_uint(), 11u);
  EXPECT_EQ(v.to_string(), "1011");
  EXPECT_TRUE(v.get(0));
  EXPECT_FALSE(v.get(1));
  EXPECT_EQ(BitVector::from_uint(4, 11), v);
  EXPECT_EQ(v.popcount(), 3u);
  EXPECT_EQ(v.leading_one(), 0u);
  EXPECT_EQ(BitVector(5).leading_one(), 5u);
  EXPECT_THROW(BitVector::from_string("10x"), std::invalid_argument);
  EXPECT_THROW(BitVector::from_uint(3, 8), std::invalid_argument);
}

TEST(BitVector, HexRoundTripAndLongVectors) {
  Rng rng(5);
  for (std::size_t n : {1, 7, 64, 65, 130}) {
    BitVector v = BitVector::random(n, rng);
    EXPECT_EQ(BitVector::from_hex(v.to_hex(), n), v);
    EXPECT_EQ(BitVector::from_string(v.to_string()), v);
  }
}

TEST(BitVector, OrderMatchesStrings) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    BitVector a = BitVector::random(70, rng);
    BitVector b = BitVector::random(70, rng);
    EXPECT_EQ(a < b, a.to_string() < b.to_string());
  }
}

TEST(BitVector, SliceConcatAndDot) {
  BitVector a = BitVector::from_string("110");
  BitVector b = BitVector::from_string("0101");
  BitVector c = BitVector::concat(a, b);
  EXPECT_EQ(c.to_string(), "1100101");
  EXPECT_EQ(c.slice(3, 4), b);
  EXPECT_TRUE(gf2::dot(BitVector::from_string("1100"), BitVector::from_string("0100")));
  EXPECT_FALSE(gf2::dot(BitVector::from_string("1100"), BitVector::from_string("1100")));
}

TEST(Subspace, SpanMatchesClosureOracle) {
  Rng rng(1);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 30; ++rep) {
      auto gens = oracle::random_gens(n, rng.below(n + 2), rng);
      Subspace a = Subspace::span(n, gens);
      auto members = oracle::span_set(oracle::to_ints(gens));
      EXPECT_EQ(std::size_t{1} << a.dim(), members.size());
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        EXPECT_EQ(a.contains(BitVector::from_uint(n, x)), members.count(x) == 1);
        EXPECT_EQ(a.contains_index(x), members.count(x) == 1);
      }
      auto elems = a.elements();
      EXPECT_EQ(elems.size(), members.size());
    }
  }
}

TEST(Subspace, EqualityIgnoresGenerators) {
  Rng rng(2);
  auto gens = oracle::random_gens(6, 4, rng);
  Subspace a = Subspace::span(6, gens);
  std::vector<BitVector> mixed = gens;
  mixed[0] ^= mixed[1];
  std::reverse(mixed.begin(), mixed.end());
  EXPECT_EQ(a, Subspace::span(6, mixed));
  EXPECT_EQ(gf2::rref(6, gens), a);
  EXPECT_EQ(Subspace::from_string(6, a.to_string()), a);
}

TEST(Subspace, ComplementMatchesOracle) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      Subspace a = gf2::sample_subspace(n, rng.below(n + 1), rng);
      Subspace dual = gf2::complement(a);
      EXPECT_EQ(a.dim() + dual.dim(), n);
      auto expected = oracle::dual_set(n, oracle::span_set(oracle::to_ints(a.basis())));
      auto got = oracle::span_set(oracle::to_ints(dual.basis()));
      EXPECT_EQ(got, expected);
      EXPECT_EQ(gf2::complement(dual), a);
    }
  }
}

TEST(Subspace, SampleHasRequestedDimension) {
  for (std::size_t n = 2; n <= 12; n += 2) {
    Subspace a = gf2::sample_subspace(n, n / 2, 77 + n);
    EXPECT_EQ(a.dim(), n / 2);
    EXPECT_EQ(a.ambient_dim(), n);
  }
  EXPECT_EQ(gf2::sample_subspace(6, 3, 10), gf2::sample_subspace(6, 3, 10));
  EXPECT_THROW(gf2::sample_subspace(4, 5, 1), std::invalid_argument);
}

TEST(Subspace, SamplingLooksUniformOnSmallCase) {
  // F_2^2 has three 1-dimensional subspaces.
  std::map<std::string, int> counts;
  Rng rng(11);
  for (int i = 0; i < 3000; ++i) counts[gf2::sample_subspace(2, 1, rng).to_string()]++;
  ASSERT_EQ(counts.size(), 3u);
  for (const auto& [k, c] : counts) EXPECT_NEAR(c, 1000, 4 * std::sqrt(3000 * (1.0 / 3) * (2.0 / 3)));
}

TEST(Coset, CanonicalRepIsBruteForceMinimum) {
  Rng rng(4);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 200; ++rep) {
      auto gens = oracle::random_gens(n, rng.below(n + 1), rng);
      Subspace a = Subspace::span(n, gens);
      BitVector s = BitVector::random(n, rng);
      std::uint64_t best = ~std::uint64_t{0};
      for (auto x : oracle::span_set(oracle::to_ints(gens))) best = std::min(best, x ^ s.to_uint());
      EXPECT_EQ(gf2::canonical_rep(a, s).to_uint(), best);
      EXPECT_EQ(a.reduce(s).to_uint(), best);
    }
  }
}

TEST(Coset, ContainmentIffSameCanonicalRep) {
  Rng rng(6);
  for (std::size_t n = 1; n <= 6; ++n) {
    Subspace a = gf2::sample_subspace(n, n / 2, rng);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitVector sv = BitVector::from_uint(n, s);
        BitVector vv = BitVector::from_uint(n, v);
        EXPECT_EQ(gf2::coset_contains(a, sv, vv), gf2::canonical_rep(a, sv) == gf2::canonical_rep(a, vv));
      }
    }
  }
}

TEST(Coset, OffsetIsCanonical) {
  Subspace a = Subspace::span(3, std::vector<BitVector>{BitVector::from_string("110")});
  gf2::Coset c(a, BitVector::from_string("111"));
  EXPECT_EQ(c.offset().to_string(), "001");
  EXPECT_TRUE(c.contains(BitVector::from_string("111")));
  EXPECT_FALSE(c.contains(BitVector::from_string("011")));
  EXPECT_EQ(c, gf2::Coset(a, BitVector::from_string("001")));
}

TEST(Coset, CanonicalRepOnLongVectors) {
  Rng rng(8);
  Subspace a = gf2::sample_subspace(80, 40, rng);
  BitVector s = BitVector::random(80, rng);
  BitVector c = gf2::canonical_rep(a, s);
  EXPECT_TRUE(gf2::coset_contains(a, s, c));
  for (auto p : a.pivots()) EXPECT_FALSE(c.get(p));
}

TEST(Subspace, IntersectionDimensionMatchesOracle) {
  Rng rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.below(7);
    Subspace a = gf2::sample_subspace(n, rng.below(n + 1), rng);
    Subspace b = gf2::sample_subspace(n, rng.below(n + 1), rng);
    auto sa = oracle::span_set(oracle::to_ints(a.basis()));
    auto sb = oracle::span_set(oracle::to_ints(b.basis()));
    std::size_t common = 0;
    for (auto x : sa) common += sb.count(x);
    EXPECT_EQ(std::size_t{1} << gf2::intersect_dim(a, b), common);
    EXPECT_EQ(gf2::sum(a, b).dim(), a.dim() + b.dim() - gf2::intersect_dim(a, b));
  }
}

TEST(Subspace, SuperspaceContainsOriginal) {
  Rng rng(13);
  Subspace a = gf2::sample_subspace(8, 4, rng);
  Subspace b = gf2::sample_superspace(a, 6, rng);
  EXPECT_EQ(b.dim(), 6u);
  for (const auto& r : a.basis()) EXPECT_TRUE(b.contains(r));
  EXPECT_THROW(gf2::sample_superspace(a, 3, rng), std::invalid_argument);
}
