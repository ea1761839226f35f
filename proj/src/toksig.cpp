#include "cosetlab/toksig.hpp"

#include <set>
#include <stdexcept>

namespace cosetlab::toksig {

namespace {

void check_n(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("toksig: n must be a positive even number");
  if (n > qsim::kMaxQubits) throw std::invalid_argument("toksig: n exceeds the qubit memory guard");
}

qsim::IndexPredicate as_index_predicate(const obf::ObfProgram& prog) {
  const std::size_t n = prog.input_len();
  return [&prog, n](std::uint64_t v) { return prog.accepts(gf2::BitVector::from_uint(n, v)); };
}

}  // namespace

TsPublicKey make_public_key(const TsSecretKey& sk) {
  const std::size_t n = sk.n();
  gf2::Subspace dual = gf2::complement(sk.a);
  obf::ObfProgram p0 = obf::membership_program(sk.a, sk.s);
  obf::ObfProgram p1 = obf::membership_program(dual, sk.s_prime);
  // Both programs are padded to the same size.
  const std::size_t pad = std::max(p0.padded_size(), p1.padded_size());
  return TsPublicKey{n, obf::io_stub(p0, pad), obf::io_stub(p1, pad)};
}

KeyPair keygen(std::size_t n, Rng& rng) {
  check_n(n);
  TsSecretKey sk{gf2::sample_subspace(n, n / 2, rng), gf2::BitVector::random(n, rng),
                 gf2::BitVector::random(n, rng)};
  TsPublicKey pk = make_public_key(sk);
  return KeyPair{std::move(sk), std::move(pk)};
}

KeyPair keygen(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return keygen(n, rng);
}

Token token_gen(const TsSecretKey& sk) { return Token(qsim::coset_state(sk.a, sk.s, sk.s_prime)); }

Signature sign(int m, Token& token, Rng& rng) {
  if (m != 0 && m != 1) throw std::invalid_argument("sign: message must be 0 or 1");
  if (token.consumed()) throw std::logic_error("sign: token already consumed");
  if (m == 1) token.state().apply_hadamard_all();
  const std::size_t n = token.state().num_qubits();
  qsim::MeasurementRecord rec = qsim::measure_all(token.state(), rng);
  // A Hadamard-basis measurement leaves the register in H^n|sig>.
  token.state() = m == 1 ? qsim::hadamard_basis_state(n, rec.outcome.to_uint())
                         : std::move(rec.post_state);
  token.mark_consumed();
  return Signature{m, std::move(rec.outcome)};
}

Signature sign(int m, Token& token, std::uint64_t seed) {
  Rng rng(seed);
  return sign(m, token, rng);
}

bool verify(const TsPublicKey& pk, const Signature& signature) {
  if (signature.sig.size() != pk.n) return false;
  if (signature.m == 0) return pk.c0.accepts(signature.sig);
  if (signature.m == 1) return pk.c1.accepts(signature.sig);
  return false;
}

bool verify_l(const TsPublicKey& pk, std::span<const Signature> pairs) {
  std::set<int> seen;
  for (const auto& p : pairs) {
    if (!seen.insert(p.m).second) return false;
    if (!verify(pk, p)) return false;
  }
  return true;
}

RevokeResult revoke(const TsPublicKey& pk, Token& token, Rng& rng) {
  if (token.state().num_qubits() != pk.n) throw std::invalid_argument("revoke: token size mismatch");
  RevokeResult out;
  qsim::BitMeasurement first = qsim::coherent_predicate(token.state(), as_index_predicate(pk.c0), rng);
  token.state() = std::move(first.post_state);
  out.probability = first.probability;
  if (!first.bit) return out;

  token.state().apply_hadamard_all();
  qsim::BitMeasurement second = qsim::coherent_predicate(token.state(), as_index_predicate(pk.c1), rng);
  token.state() = std::move(second.post_state);
  token.state().apply_hadamard_all();
  out.probability *= second.probability;
  out.accepted = second.bit;
  return out;
}

}  // namespace cosetlab::toksig
