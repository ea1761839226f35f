#include <gtest/gtest.h>

#include <openssl/evp.h>

#include <set>

#include "cosetlab/prf.hpp"
#include "test_util.hpp"

using namespace cosetlab;
using gf2::BitVector;

namespace {

prf::Seed digest(const std::vector<std::uint8_t>& msg) {
  prf::Seed out{};
  unsigned int len = 0;
  EVP_Digest(msg.data(), msg.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

// Tree walk written against the EVP interface, one byte per branch.
std::string ggm_oracle(const prf::Seed& root, const std::string& x, std::size_t out_len) {
  prf::Seed node = root;
  for (char c : x) {
    std::vector<std::uint8_t> msg(node.begin(), node.end());
    msg.push_back(c == '1' ? 1 : 0);
    node = digest(msg);
  }
  std::string bits;
  for (std::uint32_t ctr = 0; bits.size() < out_len; ++ctr) {
    std::vector<std::uint8_t> msg(node.begin(), node.end());
    msg.push_back(2);
    for (int s = 24; s >= 0; s -= 8) msg.push_back(static_cast<std::uint8_t>(ctr >> s));
    for (auto byte : digest(msg)) {
      for (int b = 7; b >= 0; --b) bits.push_back(((byte >> b) & 1) ? '1' : '0');
    }
  }
  return bits.substr(0, out_len);
}

prf::GgmKey fixed_key(std::size_t in_len, std::size_t out_len) {
  prf::GgmKey k;
  for (std::size_t i = 0; i < 32; ++i) k.root[i] = static_cast<std::uint8_t>(i);
  k.in_len = in_len;
  k.out_len = out_len;
  return k;
}

}  // namespace

TEST(Ggm, MatchesIndependentOracle) {
  Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    prf::GgmKey k = prf::ggm_keygen(10, 1 + rng.below(300), rng);
    BitVector x = BitVector::random(10, rng);
    EXPECT_EQ(prf::ggm_eval(k, x).to_string(), ggm_oracle(k.root, x.to_string(), k.out_len));
  }
}

TEST(Ggm, FrozenVectors) {
  // Values produced by the oracle above.
  prf::GgmKey k = fixed_key(8, 16);
  EXPECT_EQ(prf::ggm_eval(k, BitVector::from_string("10110010")).to_string(), "0010111111101100");
  EXPECT_EQ(ggm_oracle(k.root, "10110010", 16), "0010111111101100");
  prf::GgmKey wide = fixed_key(8, 300);
  EXPECT_EQ(prf::ggm_eval(wide, BitVector::from_string("10110010")).to_string().substr(256),
            "11110111011100100000000000110001001101000111");
}

TEST(Ggm, PrgHalvesAreDistinctHashes) {
  prf::Seed s = fixed_key(1, 1).root;
  auto kids = prf::prg_expand(s);
  EXPECT_NE(kids[0], kids[1]);
  std::vector<std::uint8_t> msg(s.begin(), s.end());
  msg.push_back(1);
  EXPECT_EQ(kids[1], digest(msg));
}

TEST(Ggm, PuncturingPreservesFunctionalityExhaustively) {
  Rng rng(2);
  for (std::size_t in_len : {1, 3, 6}) {
    for (int rep = 0; rep < 10; ++rep) {
      prf::GgmKey k = prf::ggm_keygen(in_len, 8, rng);
      std::vector<BitVector> set;
      const std::size_t size = 1 + rng.below(4);
      for (std::size_t i = 0; i < size; ++i) set.push_back(BitVector::random(in_len, rng));
      prf::PuncturedKey pk = prf::puncture(k, set);
      std::set<BitVector> punct(set.begin(), set.end());
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << in_len); ++x) {
        BitVector v = BitVector::from_uint(in_len, x);
        auto y = prf::punctured_eval(pk, v);
        if (punct.count(v)) {
          EXPECT_FALSE(y.has_value());
        } else {
          ASSERT_TRUE(y.has_value());
          EXPECT_EQ(*y, prf::ggm_eval(k, v));
        }
      }
    }
  }
}

TEST(Ggm, CopathHoldsNoPathNode) {
  prf::GgmKey k = fixed_key(4, 4);
  std::vector<BitVector> set{BitVector::from_string("0110")};
  prf::PuncturedKey pk = prf::puncture(k, set);
  EXPECT_EQ(pk.copath.size(), 4u);
  for (const auto& c : pk.copath) EXPECT_FALSE(c.prefix == set[0].slice(0, c.prefix.size()));
  EXPECT_THROW(prf::puncture(k, std::vector<BitVector>{}), std::invalid_argument);
  EXPECT_THROW(prf::ggm_eval(k, BitVector(3)), std::invalid_argument);
}

TEST(PairwiseHash, IsAffine) {
  Rng rng(3);
  prf::PairwiseHash h = prf::PairwiseHash::sample(10, 6, rng);
  BitVector zero(10);
  for (int rep = 0; rep < 50; ++rep) {
    BitVector a = BitVector::random(10, rng);
    BitVector b = BitVector::random(10, rng);
    EXPECT_EQ(h.apply(a) ^ h.apply(b), h.apply(a ^ b) ^ h.apply(zero));
  }
  EXPECT_EQ(h.out_len(), 6u);
}

TEST(MaskedPrf, PuncturedMaskedEval) {
  Rng rng(4);
  prf::MaskedPrfKey k = prf::extracting_prf_keygen(8, 2, 1, prf::ParamMode::kStrict, rng);
  std::vector<BitVector> set{BitVector::from_uint(8, 17)};
  auto pk = prf::puncture(k, set);
  for (std::uint64_t x = 0; x < 256; ++x) {
    auto y = prf::punctured_eval(pk, BitVector::from_uint(8, x));
    if (x == 17) {
      EXPECT_FALSE(y);
    } else {
      EXPECT_EQ(*y, prf::extracting_prf_eval(k, BitVector::from_uint(8, x)));
    }
  }
}

TEST(MaskedPrf, StrictModeEnforcesBounds) {
  Rng rng(5);
  EXPECT_THROW(prf::injective_prf_keygen(10, 16, 4, prf::ParamMode::kStrict, rng), std::invalid_argument);
  EXPECT_NO_THROW(prf::injective_prf_keygen(10, 16, 4, prf::ParamMode::kToy, rng));
  EXPECT_THROW(prf::extracting_prf_keygen(10, 4, 4, prf::ParamMode::kStrict, rng), std::invalid_argument);
}

TEST(MaskedPrf, InjectiveFractionAtSmallParameters) {
  Rng rng(6);
  int injective = 0;
  for (int key = 0; key < 100; ++key) {
    prf::MaskedPrfKey k = prf::injective_prf_keygen(6, 16, 4, prf::ParamMode::kStrict, rng);
    std::set<BitVector> images;
    for (std::uint64_t x = 0; x < 64; ++x) images.insert(prf::injective_prf_eval(k, BitVector::from_uint(6, x)));
    injective += images.size() == 64 ? 1 : 0;
  }
  EXPECT_GE(injective, 85);
}

TEST(Params, ReportNamesEveryCheck) {
  prf::ParamsReport toy = prf::params_check(2, 16, 10, 4, 2);
  ASSERT_EQ(toy.checks.size(), 4u);
  EXPECT_EQ(toy.n, 28u);
  EXPECT_EQ(toy.violations(), std::vector<std::string>{"injective"});
  EXPECT_FALSE(toy.ok());
  EXPECT_TRUE(prf::params_check(2, 30, 12, 4, 2).ok());
  EXPECT_EQ(prf::params_check(2, 30, 12, 3, 2).violations(), std::vector<std::string>{"even-lambda"});
  EXPECT_EQ(prf::trigger_program_bits(2, 2), 6u);
}
