#include <gtest/gtest.h>

#include "cosetlab/toksig.hpp"
#include "test_util.hpp"

using namespace cosetlab;
using gf2::BitVector;

TEST(Toksig, SignVerifyBothMessages) {
  Rng rng(1);
  for (std::size_t n : {2, 4, 8}) {
    for (int rep = 0; rep < 200; ++rep) {
      toksig::KeyPair kp = toksig::keygen(n, rng);
      const int m = static_cast<int>(rng.below(2));
      toksig::Token t = toksig::token_gen(kp.sk);
      toksig::Signature sig = toksig::sign(m, t, rng);
      EXPECT_TRUE(toksig::verify(kp.pk, sig));
      EXPECT_TRUE(t.consumed());
      // The other message does not verify with the same vector unless it is
      // in both cosets.
      const bool both = gf2::coset_contains(kp.sk.a, kp.sk.s, sig.sig) &&
                        gf2::coset_contains(gf2::complement(kp.sk.a), kp.sk.s_prime, sig.sig);
      EXPECT_EQ(toksig::verify(kp.pk, toksig::Signature{1 - m, sig.sig}), both);
    }
  }
}

TEST(Toksig, TokenIsSingleUse) {
  toksig::KeyPair kp = toksig::keygen(4, 2);
  toksig::Token t = toksig::token_gen(kp.sk);
  toksig::sign(0, t, 3);
  EXPECT_THROW(toksig::sign(1, t, 4), std::logic_error);
  EXPECT_THROW(toksig::sign(2, t, 4), std::invalid_argument);
}

TEST(Toksig, KeygenGuards) {
  EXPECT_THROW(toksig::keygen(5, 1), std::invalid_argument);
  EXPECT_THROW(toksig::keygen(0, 1), std::invalid_argument);
  toksig::KeyPair kp = toksig::keygen(6, 1);
  EXPECT_EQ(kp.pk.c0.padded_size(), kp.pk.c1.padded_size());
  EXPECT_EQ(kp.sk.a.dim(), 3u);
}

TEST(Toksig, SignResidues) {
  toksig::KeyPair kp = toksig::keygen(6, 5);
  toksig::Token t0 = toksig::token_gen(kp.sk);
  auto s0 = toksig::sign(0, t0, 6);
  EXPECT_NEAR(qsim::fidelity(t0.state(), qsim::StateVector::basis(6, s0.sig.to_uint())), 1.0, 1e-12);
  toksig::Token t1 = toksig::token_gen(kp.sk);
  auto s1 = toksig::sign(1, t1, 7);
  EXPECT_NEAR(qsim::fidelity(t1.state(), qsim::hadamard_basis_state(6, s1.sig.to_uint())), 1.0, 1e-12);
}

TEST(Toksig, VerifyL) {
  toksig::KeyPair kp = toksig::keygen(4, 8);
  toksig::Token a = toksig::token_gen(kp.sk);
  toksig::Token b = toksig::token_gen(kp.sk);
  std::vector<toksig::Signature> sigs{toksig::sign(0, a, 1), toksig::sign(1, b, 2)};
  EXPECT_TRUE(toksig::verify_l(kp.pk, sigs));
  sigs.push_back(sigs.front());
  EXPECT_FALSE(toksig::verify_l(kp.pk, sigs));
  EXPECT_FALSE(toksig::verify(kp.pk, toksig::Signature{0, BitVector(3)}));
}

TEST(Toksig, RevokeFreshTokenIsGentle) {
  Rng rng(9);
  for (int rep = 0; rep < 100; ++rep) {
    toksig::KeyPair kp = toksig::keygen(8, rng);
    toksig::Token t = toksig::token_gen(kp.sk);
    toksig::RevokeResult r = toksig::revoke(kp.pk, t, rng);
    EXPECT_TRUE(r.accepted);
    EXPECT_NEAR(r.probability, 1.0, 1e-9);
    EXPECT_NEAR(qsim::fidelity(t.state(), toksig::token_gen(kp.sk).state()), 1.0, 1e-9);
  }
}

TEST(Toksig, RevokeAfterSignAcceptanceProbability) {
  // After a 0-signature the residue is |v>; the dual check passes with
  // probability |A^perp| / 2^n.
  toksig::KeyPair kp = toksig::keygen(6, 10);
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    toksig::Token t = toksig::token_gen(kp.sk);
    toksig::sign(0, t, rng);
    toksig::RevokeResult r = toksig::revoke(kp.pk, t, rng);
    EXPECT_NEAR(r.probability, r.accepted ? 1.0 / 8 : 7.0 / 8, 1e-9);
  }
}
