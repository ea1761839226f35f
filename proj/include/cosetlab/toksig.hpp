#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "cosetlab/gf2.hpp"
#include "cosetlab/obf.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"

// One-bit tokenized signatures from coset states.
namespace cosetlab::toksig {

struct TsSecretKey {
  gf2::Subspace a;
  gf2::BitVector s;
  gf2::BitVector s_prime;

  std::size_t n() const { return a.ambient_dim(); }
};

struct TsPublicKey {
  std::size_t n = 0;
  obf::ObfProgram c0;  // membership in A + s
  obf::ObfProgram c1;  // membership in A^perp + s'
};

struct KeyPair {
  TsSecretKey sk;
  TsPublicKey pk;
};

// A signing token. Tokens cannot be copied; signing consumes the token but
// keeps the collapsed state so adversarial experiments can continue on it.
class Token {
 public:
  explicit Token(qsim::StateVector state) : state_(std::move(state)) {}
  Token(const Token&) = delete;
  Token& operator=(const Token&) = delete;
  Token(Token&&) = default;
  Token& operator=(Token&&) = default;

  const qsim::StateVector& state() const { return state_; }
  qsim::StateVector& state() { return state_; }
  bool consumed() const { return consumed_; }
  void mark_consumed() { consumed_ = true; }

 private:
  qsim::StateVector state_;
  bool consumed_ = false;
};

struct Signature {
  int m = 0;
  gf2::BitVector sig;
};

struct RevokeResult {
  bool accepted = false;
  // Probability of the observed branch of each check that ran.
  double probability = 1.0;
};

TsPublicKey make_public_key(const TsSecretKey& sk);
KeyPair keygen(std::size_t n, Rng& rng);
KeyPair keygen(std::size_t n, std::uint64_t seed);

Token token_gen(const TsSecretKey& sk);

// m = 0 measures the token in the computational basis, m = 1 in the Hadamard
// basis. Throws std::logic_error if the token was already used.
Signature sign(int m, Token& token, Rng& rng);
Signature sign(int m, Token& token, std::uint64_t seed);

bool verify(const TsPublicKey& pk, const Signature& signature);
// All messages distinct and every pair verifies.
bool verify_l(const TsPublicKey& pk, std::span<const Signature> pairs);

// Coherently checks c0, then under H checks c1, undoing the Hadamard. The
// token state is updated in place; a failed first check skips the second.
RevokeResult revoke(const TsPublicKey& pk, Token& token, Rng& rng);

}  // namespace cosetlab::toksig
