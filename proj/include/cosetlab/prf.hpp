#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cosetlab/gf2.hpp"
#include "cosetlab/rng.hpp"

// Puncturable PRFs built on the GGM tree, and the two keyed variants used by
// the copy-protection scheme.
namespace cosetlab::prf {

using Seed = std::array<std::uint8_t, 32>;

// Length-doubling PRG: SHA-256(seed || 0x00) and SHA-256(seed || 0x01).
std::array<Seed, 2> prg_expand(const Seed& seed);
// out_len bits from SHA-256(leaf || 0x02 || counter), most significant first.
gf2::BitVector leaf_output(const Seed& leaf, std::size_t out_len);

struct GgmKey {
  Seed root{};
  std::size_t in_len = 0;
  std::size_t out_len = 0;
};

struct CopathNode {
  gf2::BitVector prefix;
  Seed seed{};
};

struct PuncturedKey {
  std::size_t in_len = 0;
  std::size_t out_len = 0;
  std::vector<gf2::BitVector> punctured_set;
  std::vector<CopathNode> copath;
};

GgmKey ggm_keygen(std::size_t in_len, std::size_t out_len, Rng& rng);
gf2::BitVector ggm_eval(const GgmKey& key, const gf2::BitVector& x);
PuncturedKey puncture(const GgmKey& key, std::span<const gf2::BitVector> set);
// nullopt exactly on punctured inputs.
std::optional<gf2::BitVector> punctured_eval(const PuncturedKey& key, const gf2::BitVector& x);

// h(x) = Mx + b over F_2.
struct PairwiseHash {
  std::size_t in_len = 0;
  std::vector<gf2::BitVector> rows;  // out_len rows of in_len bits
  gf2::BitVector offset;

  static PairwiseHash sample(std::size_t in_len, std::size_t out_len, Rng& rng);
  std::size_t out_len() const { return offset.size(); }
  gf2::BitVector apply(const gf2::BitVector& x) const;
};

enum class ParamMode { kStrict, kToy };

// F(K, x) = GGM(K, x) + h(x). Used for both the injective F2 and the
// extracting F1; they differ only in the parameter checks at key generation.
struct MaskedPrfKey {
  GgmKey ggm;
  PairwiseHash hash;
};

struct PuncturedMaskedKey {
  PuncturedKey ggm;
  PairwiseHash hash;
};

gf2::BitVector masked_eval(const MaskedPrfKey& key, const gf2::BitVector& x);
PuncturedMaskedKey puncture(const MaskedPrfKey& key, std::span<const gf2::BitVector> set);
std::optional<gf2::BitVector> punctured_eval(const PuncturedMaskedKey& key, const gf2::BitVector& x);

// F2 maps l2 bits to l1 bits; strict mode requires l1 >= 2 l2 + lambda.
MaskedPrfKey injective_prf_keygen(std::size_t l2, std::size_t l1, std::size_t lambda,
                                  ParamMode mode, Rng& rng);
gf2::BitVector injective_prf_eval(const MaskedPrfKey& key, const gf2::BitVector& x);

// F1 maps n bits to m bits; strict mode requires n >= m + 2 lambda + 4.
MaskedPrfKey extracting_prf_keygen(std::size_t n, std::size_t m, std::size_t lambda,
                                   ParamMode mode, Rng& rng);
gf2::BitVector extracting_prf_eval(const MaskedPrfKey& key, const gf2::BitVector& x);

// Length of the encoded trigger program: a 2-bit tag, the l0-bit selector and
// the m_len-bit planted output.
std::size_t trigger_program_bits(std::size_t l0, std::size_t m_len);

struct ConstraintCheck {
  std::string name;
  std::string formula;
  long long lhs = 0;
  long long rhs = 0;
  bool satisfied = false;
};

struct ParamsReport {
  std::size_t n = 0;
  std::vector<ConstraintCheck> checks;

  std::vector<std::string> violations() const;
  bool ok() const { return violations().empty(); }
};

ParamsReport params_check(std::size_t l0, std::size_t l1, std::size_t l2, std::size_t lambda,
                          std::size_t m);

}  // namespace cosetlab::prf
