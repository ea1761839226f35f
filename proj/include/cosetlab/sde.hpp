#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cosetlab/gf2.hpp"
#include "cosetlab/obf.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"
#include "cosetlab/toksig.hpp"

// Single-decryptor encryption from hidden cosets, plus the variant built on
// tokenized signatures and a transparent witness-encryption stand-in.
namespace cosetlab::sde {

struct CosetRecord {
  gf2::Subspace a;
  gf2::BitVector s;
  gf2::BitVector s_prime;
};

// Uniform A of dimension n/2 and uniform s, s'.
CosetRecord sample_coset_record(std::size_t n, Rng& rng);

struct RegisterPrograms {
  obf::ObfProgram r0;  // membership in A + s
  obf::ObfProgram r1;  // membership in A^perp + s'
};

struct SdeSecretKey {
  std::size_t n = 0;
  std::vector<CosetRecord> cosets;
  std::size_t kappa() const { return cosets.size(); }
};

struct SdePublicKey {
  std::size_t n = 0;
  std::vector<RegisterPrograms> programs;
  std::size_t kappa() const { return programs.size(); }
};

struct SdeKeys {
  SdeSecretKey sk;
  SdePublicKey pk;
};

// One register per coset. Not copyable.
class QuantumDecKey {
 public:
  QuantumDecKey() = default;
  explicit QuantumDecKey(std::vector<qsim::StateVector> registers) : registers_(std::move(registers)) {}
  QuantumDecKey(const QuantumDecKey&) = delete;
  QuantumDecKey& operator=(const QuantumDecKey&) = delete;
  QuantumDecKey(QuantumDecKey&&) = default;
  QuantumDecKey& operator=(QuantumDecKey&&) = default;

  std::size_t size() const { return registers_.size(); }
  std::vector<qsim::StateVector>& registers() { return registers_; }
  const std::vector<qsim::StateVector>& registers() const { return registers_; }

 private:
  std::vector<qsim::StateVector> registers_;
};

enum class CiphertextForm { kIo, kCC, kSimulated, kWitness };

std::string_view to_string(CiphertextForm form);

// program takes the concatenation of one n-bit vector per register.
struct Ciphertext {
  gf2::BitVector r;
  obf::ObfProgram program;
  CiphertextForm form = CiphertextForm::kIo;
  std::size_t register_len = 0;
  std::size_t message_len = 0;
  // Set only by challenger-side code that needs to serialize the iO form.
  std::optional<gf2::BitVector> challenger_message;
};

struct Decryption {
  std::optional<gf2::BitVector> message;
  double probability = 0.0;
  bool exact = true;
};

SdePublicKey make_public_key(const SdeSecretKey& sk);
SdeKeys setup(std::size_t n, std::size_t kappa, Rng& rng);
SdeKeys setup(std::size_t n, std::size_t kappa, std::uint64_t seed);

QuantumDecKey qkeygen(const SdeSecretKey& sk);

// Program size shared by every ciphertext form of an instance.
std::size_t ciphertext_pad(std::size_t n, std::size_t kappa, std::size_t message_len,
                           std::size_t pk_program_size);

Ciphertext encrypt(const SdePublicKey& pk, const gf2::BitVector& m, Rng& rng);
Ciphertext encrypt(const SdePublicKey& pk, const gf2::BitVector& m, std::uint64_t seed);
Ciphertext encrypt_with_r(const SdePublicKey& pk, const gf2::BitVector& m, const gf2::BitVector& r);

// Compute-and-compare form: f maps each u_i to its canonical representative
// modulo A_i (r_i = 0) or A_i^perp (r_i = 1), and y is f of the key's offsets.
// Needs the secret key.
Ciphertext encrypt_cc(const SdeSecretKey& sk, const gf2::BitVector& m, Rng& rng);
Ciphertext encrypt_cc_with_r(const SdeSecretKey& sk, const gf2::BitVector& m, const gf2::BitVector& r);

// Same shape, constant-reject program.
Ciphertext simulate(const Ciphertext& ct);

// Hadamard on registers with r_i = 1, coherent evaluation of the program,
// measurement of its output, then the Hadamards are undone.
Decryption decrypt_registers(std::span<qsim::StateVector* const> registers, const Ciphertext& ct,
                             Rng& rng);
Decryption decrypt(QuantumDecKey& key, const Ciphertext& ct, Rng& rng);

// Witness-encryption variant. The stub stores r and m; decryption with a
// witness w releases m iff every w_i is a valid signature of r_i.
Ciphertext we_encrypt(std::span<const toksig::TsPublicKey> pks, const gf2::BitVector& m, Rng& rng);
std::optional<gf2::BitVector> we_decrypt_classical(const Ciphertext& ct, std::span<const gf2::BitVector> witness);
// Signs each r_i coherently with token i.
Decryption we_decrypt(std::span<toksig::Token> tokens, const Ciphertext& ct, Rng& rng);

}  // namespace cosetlab::sde
