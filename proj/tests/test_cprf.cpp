#include <gtest/gtest.h>

#include "cosetlab/cprf.hpp"
#include "test_util.hpp"

using namespace cosetlab;
using gf2::BitVector;

namespace {

cprf::CpParams toy() { return cprf::CpParams::toy_preset(); }

}  // namespace

TEST(CpParams, ToyPresetWaivesOnlyInjectivity) {
  cprf::CpParams p = toy();
  EXPECT_EQ(p.n(), 28u);
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.report().violations(), std::vector<std::string>{"injective"});
  p.toy = false;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  cprf::CpParams small{2, 16, 4, 4, 2, true};
  EXPECT_THROW(small.validate(), std::invalid_argument);  // trigger does not fit
  cprf::CpParams odd{2, 16, 10, 3, 2, true};
  EXPECT_THROW(odd.validate(), std::invalid_argument);
}

TEST(CpParams, StrictSetIsAccepted) {
  cprf::CpParams p{2, 24, 10, 4, 2, false};
  EXPECT_NO_THROW(p.validate());
}

TEST(Cprf, HonestEvaluationMatchesF1AndKeepsTheKey) {
  Rng rng(21);
  cprf::CpParams p = toy();
  prf::MaskedPrfKey k1 = cprf::cp_setup(p, rng);
  cprf::CpKeyBundle b = cprf::cp_qkeygen(k1, p, rng);
  for (int rep = 0; rep < 30; ++rep) {
    BitVector x = BitVector::random(p.n(), rng);
    if (cprf::is_trigger(x, b.view->k2, b.view->k3, p)) continue;
    cprf::CpEvaluation e = cprf::cp_eval(b.key, x, rng);
    ASSERT_TRUE(e.y.has_value());
    EXPECT_EQ(*e.y, prf::extracting_prf_eval(k1, x));
    EXPECT_NEAR(e.probability, 1.0, 1e-9);
  }
  for (std::size_t i = 0; i < p.l0; ++i) {
    const auto& c = b.view->cosets[i];
    EXPECT_NEAR(qsim::fidelity(b.key.registers()[i], qsim::coset_state(c.a, c.s, c.s_prime)), 1.0, 1e-9);
  }
}

TEST(Cprf, ProgramRejectsVectorsOutsideTheCosets) {
  Rng rng(22);
  cprf::CpParams p = toy();
  prf::MaskedPrfKey k1 = cprf::cp_setup(p, rng);
  cprf::CpKeyBundle b = cprf::cp_qkeygen(k1, p, rng);
  BitVector x = BitVector::random(p.n(), rng);
  x.set(0, false);
  x.set(1, false);
  std::vector<BitVector> good{b.view->cosets[0].s, b.view->cosets[1].s};
  EXPECT_EQ(cprf::program_p(x, good, *b.view), prf::extracting_prf_eval(k1, x));
  std::vector<BitVector> bad = good;
  for (std::uint64_t v = 0; v < 16; ++v) {
    BitVector cand = BitVector::from_uint(4, v);
    if (!b.view->memberships[1].r0.accepts(cand)) {
      bad[1] = cand;
      break;
    }
  }
  EXPECT_FALSE(cprf::program_p(x, bad, *b.view).has_value());
}

TEST(Cprf, TriggerEncodingRoundTrips) {
  cprf::CpParams p = toy();
  for (std::uint64_t x0 = 0; x0 < 4; ++x0) {
    for (std::uint64_t y = 0; y < 4; ++y) {
      BitVector q = cprf::encode_trigger_program(BitVector::from_uint(2, x0), BitVector::from_uint(2, y), p);
      EXPECT_EQ(q.size(), p.l2 - p.l0);
      EXPECT_EQ(q.slice(0, 2).to_string(), "01");
      auto d = cprf::decode_trigger_program(q, p);
      ASSERT_TRUE(d.has_value());
      EXPECT_EQ(d->x0.to_uint(), x0);
      EXPECT_EQ(d->y.to_uint(), y);
    }
  }
  EXPECT_FALSE(cprf::decode_trigger_program(BitVector::from_string("10000000"), p).has_value());
  EXPECT_FALSE(cprf::decode_trigger_program(BitVector::from_string("01000001"), p).has_value());
}

TEST(Cprf, GeneratedTriggerFiresAndReturnsThePlantedValue) {
  Rng rng(23);
  cprf::CpParams p = toy();
  prf::MaskedPrfKey k1 = cprf::cp_setup(p, rng);
  cprf::CpKeyBundle b = cprf::cp_qkeygen(k1, p, rng);
  for (int rep = 0; rep < 10; ++rep) {
    BitVector x0 = BitVector::random(p.l0, rng);
    BitVector y = BitVector::random(p.m_len, rng);
    cprf::TriggerInput t = cprf::gen_trigger(x0, y, b.view->k2, b.view->k3, b.view->cosets, p);
    BitVector full = t.full();
    EXPECT_EQ(full.size(), p.n());
    EXPECT_EQ(full.slice(0, p.l0), x0);
    EXPECT_TRUE(cprf::is_trigger(full, b.view->k2, b.view->k3, p));
    cprf::CpEvaluation e = cprf::cp_eval(b.key, full, rng);
    ASSERT_TRUE(e.y.has_value());
    EXPECT_EQ(*e.y, y);
  }
}

TEST(Cprf, UniformInputsAreRarelyTriggers) {
  Rng rng(24);
  cprf::CpParams p = toy();
  prf::MaskedPrfKey k1 = cprf::cp_setup(p, rng);
  cprf::CpKeyBundle b = cprf::cp_qkeygen(k1, p, rng);
  int hits = 0;
  for (int rep = 0; rep < 20000; ++rep) {
    hits += cprf::is_trigger(BitVector::random(p.n(), rng), b.view->k2, b.view->k3, p) ? 1 : 0;
  }
  EXPECT_LE(hits, 5);
}

TEST(Cprf, KeyMismatchThrows) {
  Rng rng(25);
  cprf::CpParams p = toy();
  prf::MaskedPrfKey wrong = prf::extracting_prf_keygen(20, 2, 4, prf::ParamMode::kToy, rng);
  EXPECT_THROW(cprf::cp_qkeygen(wrong, p, rng), std::invalid_argument);
}
