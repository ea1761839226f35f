#include "cosetlab/sde.hpp"

#include <algorithm>
#include <stdexcept>

namespace cosetlab::sde {

namespace {

void check_dims(std::size_t n, std::size_t kappa) {
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("sde: n must be a positive even number");
  if (n > qsim::kMaxQubits) throw std::invalid_argument("sde: n exceeds the qubit memory guard");
  if (kappa == 0) throw std::invalid_argument("sde: kappa must be at least 1");
  if (kappa > 64) throw std::invalid_argument("sde: kappa must be at most 64");
}

std::vector<gf2::BitVector> split(const gf2::BitVector& x, std::size_t parts, std::size_t len) {
  std::vector<gf2::BitVector> out;
  out.reserve(parts);
  for (std::size_t i = 0; i < parts; ++i) out.push_back(x.slice(i * len, len));
  return out;
}

gf2::BitVector join_indices(std::span<const std::uint64_t> idx, std::size_t len) {
  std::vector<gf2::BitVector> parts;
  parts.reserve(idx.size());
  for (auto v : idx) parts.push_back(gf2::BitVector::from_uint(len, v));
  return gf2::BitVector::concat(parts);
}

void check_r(const gf2::BitVector& r, std::size_t kappa) {
  if (r.size() != kappa) throw std::invalid_argument("sde: r must have kappa bits");
}

std::size_t cc_function_size(std::size_t n, std::size_t kappa) { return kappa * n * (n / 2 + 1); }

}  // namespace

std::string_view to_string(CiphertextForm form) {
  switch (form) {
    case CiphertextForm::kIo: return "io";
    case CiphertextForm::kCC: return "cc";
    case CiphertextForm::kSimulated: return "cc-sim";
    case CiphertextForm::kWitness: return "we";
  }
  return "unknown";
}

CosetRecord sample_coset_record(std::size_t n, Rng& rng) {
  gf2::Subspace a = gf2::sample_subspace(n, n / 2, rng);
  gf2::BitVector s = gf2::BitVector::random(n, rng);
  gf2::BitVector sp = gf2::BitVector::random(n, rng);
  return CosetRecord{std::move(a), std::move(s), std::move(sp)};
}

SdePublicKey make_public_key(const SdeSecretKey& sk) {
  SdePublicKey pk;
  pk.n = sk.n;
  for (const auto& c : sk.cosets) {
    obf::ObfProgram p0 = obf::membership_program(c.a, c.s);
    obf::ObfProgram p1 = obf::membership_program(gf2::complement(c.a), c.s_prime);
    const std::size_t pad = std::max(p0.padded_size(), p1.padded_size());
    pk.programs.push_back(RegisterPrograms{obf::io_stub(p0, pad), obf::io_stub(p1, pad)});
  }
  return pk;
}

SdeKeys setup(std::size_t n, std::size_t kappa, Rng& rng) {
  check_dims(n, kappa);
  SdeSecretKey sk;
  sk.n = n;
  for (std::size_t i = 0; i < kappa; ++i) sk.cosets.push_back(sample_coset_record(n, rng));
  SdePublicKey pk = make_public_key(sk);
  return SdeKeys{std::move(sk), std::move(pk)};
}

SdeKeys setup(std::size_t n, std::size_t kappa, std::uint64_t seed) {
  Rng rng(seed);
  return setup(n, kappa, rng);
}

QuantumDecKey qkeygen(const SdeSecretKey& sk) {
  std::vector<qsim::StateVector> regs;
  for (const auto& c : sk.cosets) regs.push_back(qsim::coset_state(c.a, c.s, c.s_prime));
  return QuantumDecKey(std::move(regs));
}

std::size_t ciphertext_pad(std::size_t n, std::size_t kappa, std::size_t message_len,
                           std::size_t pk_program_size) {
  const std::size_t io_size = kappa * pk_program_size + message_len + kappa;
  const std::size_t cc_size = cc_function_size(n, kappa) + kappa * n + message_len;
  return std::max(io_size, cc_size);
}

Ciphertext encrypt_with_r(const SdePublicKey& pk, const gf2::BitVector& m, const gf2::BitVector& r) {
  const std::size_t kappa = pk.kappa();
  check_r(r, kappa);
  const std::size_t n = pk.n;
  std::vector<obf::ObfProgram> selected;
  for (std::size_t i = 0; i < kappa; ++i) {
    selected.push_back(r.get(i) ? pk.programs[i].r1 : pk.programs[i].r0);
  }
  obf::ObfProgram p = obf::raw_program(
      kappa * n, kappa * selected.front().padded_size() + m.size() + kappa,
      [selected, m, n](const gf2::BitVector& x) -> obf::ProgramOutput {
        for (std::size_t i = 0; i < selected.size(); ++i) {
          if (!selected[i].accepts(x.slice(i * n, n))) return std::nullopt;
        }
        return m;
      });
  const std::size_t pad = ciphertext_pad(n, kappa, m.size(), selected.front().padded_size());
  return Ciphertext{r, obf::io_stub(p, pad), CiphertextForm::kIo, n, m.size(), std::nullopt};
}

Ciphertext encrypt(const SdePublicKey& pk, const gf2::BitVector& m, Rng& rng) {
  return encrypt_with_r(pk, m, gf2::BitVector::random(pk.kappa(), rng));
}

Ciphertext encrypt(const SdePublicKey& pk, const gf2::BitVector& m, std::uint64_t seed) {
  Rng rng(seed);
  return encrypt(pk, m, rng);
}

Ciphertext encrypt_cc_with_r(const SdeSecretKey& sk, const gf2::BitVector& m, const gf2::BitVector& r) {
  const std::size_t kappa = sk.kappa();
  check_r(r, kappa);
  const std::size_t n = sk.n;
  std::vector<gf2::Subspace> spaces;
  std::vector<gf2::BitVector> locks;
  for (std::size_t i = 0; i < kappa; ++i) {
    const auto& c = sk.cosets[i];
    if (r.get(i)) {
      spaces.push_back(gf2::complement(c.a));
      locks.push_back(gf2::canonical_rep(spaces.back(), c.s_prime));
    } else {
      spaces.push_back(c.a);
      locks.push_back(gf2::canonical_rep(spaces.back(), c.s));
    }
  }
  auto f = [spaces, n](const gf2::BitVector& x) {
    std::vector<gf2::BitVector> parts = split(x, spaces.size(), n);
    for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = gf2::canonical_rep(spaces[i], parts[i]);
    return gf2::BitVector::concat(parts);
  };
  obf::CCProgram cc = obf::cc_program(f, gf2::BitVector::concat(locks), m, kappa * n,
                                      cc_function_size(n, kappa));
  obf::ObfProgram prog = obf::cc_obfuscate(cc);
  // Same declared size as the iO form of this instance.
  const std::size_t pk_size = (n / 2 + 1) * n;
  const std::size_t pad = ciphertext_pad(n, kappa, m.size(), pk_size);
  obf::ObfProgram padded(obf::ProgramKind::kCC, prog.input_len(), std::max(pad, prog.padded_size()),
                         [prog](const gf2::BitVector& x) { return prog(x); });
  return Ciphertext{r, std::move(padded), CiphertextForm::kCC, n, m.size(), std::nullopt};
}

Ciphertext encrypt_cc(const SdeSecretKey& sk, const gf2::BitVector& m, Rng& rng) {
  return encrypt_cc_with_r(sk, m, gf2::BitVector::random(sk.kappa(), rng));
}

Ciphertext simulate(const Ciphertext& ct) {
  Ciphertext out{ct.r, obf::cc_sim_stub(obf::size_of(ct.program)), CiphertextForm::kSimulated,
                 ct.register_len, ct.message_len, std::nullopt};
  return out;
}

Decryption decrypt_registers(std::span<qsim::StateVector* const> registers, const Ciphertext& ct,
                             Rng& rng) {
  const std::size_t kappa = ct.r.size();
  if (registers.size() != kappa) throw std::invalid_argument("decrypt: register count does not match r");
  for (auto* reg : registers) {
    if (reg->num_qubits() != ct.register_len) throw std::invalid_argument("decrypt: register size mismatch");
  }
  for (std::size_t i = 0; i < kappa; ++i) {
    if (ct.r.get(i)) registers[i]->apply_hadamard_all();
  }
  const std::size_t n = ct.register_len;
  const obf::ObfProgram& prog = ct.program;
  qsim::FactorizedOutcome res = qsim::evaluate_factorized(
      registers, [&prog, n](std::span<const std::uint64_t> u) { return prog(join_indices(u, n)); }, rng);
  for (std::size_t i = 0; i < kappa; ++i) {
    if (ct.r.get(i)) registers[i]->apply_hadamard_all();
  }
  return Decryption{res.output, res.probability, res.exact};
}

Decryption decrypt(QuantumDecKey& key, const Ciphertext& ct, Rng& rng) {
  std::vector<qsim::StateVector*> regs;
  for (auto& r : key.registers()) regs.push_back(&r);
  return decrypt_registers(regs, ct, rng);
}

Ciphertext we_encrypt(std::span<const toksig::TsPublicKey> pks, const gf2::BitVector& m, Rng& rng) {
  const std::size_t kappa = pks.size();
  if (kappa == 0 || kappa > 64) throw std::invalid_argument("we_encrypt: need 1..64 public keys");
  const std::size_t n = pks.front().n;
  for (const auto& pk : pks) {
    if (pk.n != n) throw std::invalid_argument("we_encrypt: public keys differ in n");
  }
  gf2::BitVector r = gf2::BitVector::random(kappa, rng);
  std::vector<toksig::TsPublicKey> keys(pks.begin(), pks.end());
  obf::ObfProgram prog = obf::raw_program(
      kappa * n, kappa * (pks.front().c0.padded_size() + 1) + m.size(),
      [keys, r, m, n](const gf2::BitVector& w) -> obf::ProgramOutput {
        for (std::size_t i = 0; i < keys.size(); ++i) {
          toksig::Signature sig{r.get(i) ? 1 : 0, w.slice(i * n, n)};
          if (!toksig::verify(keys[i], sig)) return std::nullopt;
        }
        return m;
      });
  return Ciphertext{r, std::move(prog), CiphertextForm::kWitness, n, m.size(), std::nullopt};
}

std::optional<gf2::BitVector> we_decrypt_classical(const Ciphertext& ct,
                                                   std::span<const gf2::BitVector> witness) {
  if (witness.size() != ct.r.size()) return std::nullopt;
  for (const auto& w : witness) {
    if (w.size() != ct.register_len) return std::nullopt;
  }
  return ct.program(gf2::BitVector::concat(witness));
}

Decryption we_decrypt(std::span<toksig::Token> tokens, const Ciphertext& ct, Rng& rng) {
  std::vector<qsim::StateVector*> regs;
  for (auto& t : tokens) regs.push_back(&t.state());
  return decrypt_registers(regs, ct, rng);
}

}  // namespace cosetlab::sde
