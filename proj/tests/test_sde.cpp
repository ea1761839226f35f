#include <gtest/gtest.h>

#include "cosetlab/sde.hpp"
#include "test_util.hpp"

using namespace cosetlab;
using gf2::BitVector;

TEST(Sde, RoundTripAcrossKappa) {
  Rng rng(11);
  for (std::size_t kappa : {1, 2, 3}) {
    sde::SdeKeys keys = sde::setup(4, kappa, rng);
    EXPECT_EQ(keys.pk.kappa(), kappa);
    sde::QuantumDecKey key = sde::qkeygen(keys.sk);
    for (int rep = 0; rep < 20; ++rep) {
      BitVector m = BitVector::random(3, rng);
      sde::Ciphertext ct = sde::encrypt(keys.pk, m, rng);
      sde::Decryption d = sde::decrypt(key, ct, rng);
      ASSERT_TRUE(d.message.has_value());
      EXPECT_EQ(*d.message, m);
      EXPECT_NEAR(d.probability, 1.0, 1e-9);
    }
  }
}

TEST(Sde, KeyIsUndisturbedByHonestDecryption) {
  Rng rng(12);
  sde::SdeKeys keys = sde::setup(6, 2, rng);
  sde::QuantumDecKey key = sde::qkeygen(keys.sk);
  for (int rep = 0; rep < 10; ++rep) {
    sde::decrypt(key, sde::encrypt(keys.pk, BitVector::random(2, rng), rng), rng);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = keys.sk.cosets[i];
    EXPECT_NEAR(qsim::fidelity(key.registers()[i], qsim::coset_state(c.a, c.s, c.s_prime)), 1.0, 1e-9);
  }
}

TEST(Sde, CcFormMatchesIoFormOnTheWholeCube) {
  Rng rng(13);
  for (std::size_t kappa : {1, 2}) {
    sde::SdeKeys keys = sde::setup(8, kappa, rng);
    for (int rep = 0; rep < 3; ++rep) {
      BitVector m = BitVector::random(2, rng);
      BitVector r = BitVector::random(kappa, rng);
      sde::Ciphertext io = sde::encrypt_with_r(keys.pk, m, r);
      sde::Ciphertext cc = sde::encrypt_cc_with_r(keys.sk, m, r);
      EXPECT_EQ(io.program.input_len(), 8 * kappa);
      EXPECT_EQ(cc.form, sde::CiphertextForm::kCC);
      EXPECT_EQ(io.program.padded_size(), cc.program.padded_size());
      EXPECT_TRUE(obf::equiv_on_cube(io.program, cc.program));
    }
  }
}

TEST(Sde, SimulatedCiphertextRejectsEverything) {
  Rng rng(14);
  sde::SdeKeys keys = sde::setup(4, 2, rng);
  sde::Ciphertext ct = sde::encrypt_cc(keys.sk, BitVector::from_string("11"), rng);
  sde::Ciphertext sim = sde::simulate(ct);
  EXPECT_EQ(sim.form, sde::CiphertextForm::kSimulated);
  EXPECT_EQ(sim.r, ct.r);
  EXPECT_EQ(obf::size_of(sim.program).padded_size, obf::size_of(ct.program).padded_size);
  for (std::uint64_t x = 0; x < 256; ++x) EXPECT_FALSE(sim.program(BitVector::from_uint(8, x)).has_value());
  sde::QuantumDecKey key = sde::qkeygen(keys.sk);
  EXPECT_FALSE(sde::decrypt(key, sim, rng).message.has_value());
}

TEST(Sde, WrongKeyGetsNothing) {
  Rng rng(15);
  sde::SdeKeys a = sde::setup(6, 1, rng);
  sde::SdeKeys b = sde::setup(6, 1, rng);
  sde::QuantumDecKey key = sde::qkeygen(b.sk);
  int hits = 0;
  for (int rep = 0; rep < 50; ++rep) {
    hits += sde::decrypt(key, sde::encrypt(a.pk, BitVector::from_string("1"), rng), rng).message ? 1 : 0;
  }
  EXPECT_LT(hits, 25);
}

TEST(Sde, WitnessVariant) {
  Rng rng(16);
  std::vector<toksig::KeyPair> pairs;
  std::vector<toksig::TsPublicKey> pks;
  for (int i = 0; i < 3; ++i) {
    pairs.push_back(toksig::keygen(4, rng));
    pks.push_back(pairs.back().pk);
  }
  BitVector m = BitVector::from_string("1011");
  sde::Ciphertext ct = sde::we_encrypt(pks, m, rng);
  EXPECT_EQ(ct.form, sde::CiphertextForm::kWitness);

  std::vector<toksig::Token> tokens;
  for (const auto& p : pairs) tokens.push_back(toksig::token_gen(p.sk));
  sde::Decryption d = sde::we_decrypt(tokens, ct, rng);
  ASSERT_TRUE(d.message.has_value());
  EXPECT_EQ(*d.message, m);

  std::vector<BitVector> witness;
  for (std::size_t i = 0; i < 3; ++i) {
    toksig::Token t = toksig::token_gen(pairs[i].sk);
    witness.push_back(toksig::sign(ct.r.get(i) ? 1 : 0, t, rng).sig);
  }
  EXPECT_EQ(sde::we_decrypt_classical(ct, witness), m);
  // A witness outside the coset.
  std::vector<BitVector> bad = witness;
  for (std::uint64_t v = 0; v < 16; ++v) {
    BitVector cand = BitVector::from_uint(4, v);
    const auto& prog = ct.r.get(0) ? pairs[0].pk.c1 : pairs[0].pk.c0;
    if (!prog.accepts(cand)) {
      bad[0] = cand;
      break;
    }
  }
  EXPECT_FALSE(sde::we_decrypt_classical(ct, bad).has_value());
}

TEST(Sde, Guards) {
  Rng rng(17);
  EXPECT_THROW(sde::setup(3, 1, rng), std::invalid_argument);
  EXPECT_THROW(sde::setup(4, 0, rng), std::invalid_argument);
  sde::SdeKeys keys = sde::setup(4, 2, rng);
  EXPECT_THROW(sde::encrypt_with_r(keys.pk, BitVector::from_string("1"), BitVector(3)), std::invalid_argument);
}
