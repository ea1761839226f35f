#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cosetlab/gf2.hpp"
#include "cosetlab/obf.hpp"
#include "cosetlab/prf.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"
#include "cosetlab/sde.hpp"

// Copy-protected PRF: a PRF key shipped as l0 coset states plus a program
// that only answers when handed vectors from the right cosets.
namespace cosetlab::cprf {

struct CpParams {
  std::size_t l0 = 0;
  std::size_t l1 = 0;
  std::size_t l2 = 0;
  std::size_t lambda = 0;
  std::size_t m_len = 0;
  bool toy = false;

  std::size_t n() const { return l0 + l1 + l2; }
  prf::ParamMode mode() const { return toy ? prf::ParamMode::kToy : prf::ParamMode::kStrict; }
  prf::ParamsReport report() const;
  // Throws std::invalid_argument on violated constraints, except that toy
  // parameters may waive the extraction and injectivity bounds.
  void validate() const;

  // lambda = 4, l0 = 2, l1 = 16, l2 = 10, m_len = 2.
  static CpParams toy_preset();
};

// Everything the challenger knows. The key's program holds a reference to it.
struct ChallengerView {
  CpParams params;
  std::vector<sde::CosetRecord> cosets;
  std::vector<sde::RegisterPrograms> memberships;
  prf::MaskedPrfKey k1;
  prf::MaskedPrfKey k2;
  prf::GgmKey k3;
};

class CpKey {
 public:
  CpKey(std::vector<qsim::StateVector> registers, obf::ObfProgram program,
        std::vector<sde::RegisterPrograms> pub, CpParams params)
      : registers_(std::move(registers)), program_(std::move(program)), pub_(std::move(pub)),
        params_(params) {}
  CpKey(const CpKey&) = delete;
  CpKey& operator=(const CpKey&) = delete;
  CpKey(CpKey&&) = default;
  CpKey& operator=(CpKey&&) = default;

  std::vector<qsim::StateVector>& registers() { return registers_; }
  const std::vector<qsim::StateVector>& registers() const { return registers_; }
  // Input: x (n bits) followed by one lambda-bit vector per register.
  const obf::ObfProgram& program() const { return program_; }
  const std::vector<sde::RegisterPrograms>& pub() const { return pub_; }
  const CpParams& params() const { return params_; }

 private:
  std::vector<qsim::StateVector> registers_;
  obf::ObfProgram program_;
  std::vector<sde::RegisterPrograms> pub_;
  CpParams params_;
};

struct CpKeyBundle {
  CpKey key;
  std::shared_ptr<const ChallengerView> view;
};

prf::MaskedPrfKey cp_setup(const CpParams& params, Rng& rng);
CpKeyBundle cp_qkeygen(const prf::MaskedPrfKey& k1, const CpParams& params, Rng& rng);

// The classical program with every key in view.
std::optional<gf2::BitVector> program_p(const gf2::BitVector& x, std::span<const gf2::BitVector> vs,
                                        const ChallengerView& view);

struct CpEvaluation {
  std::optional<gf2::BitVector> y;
  double probability = 0.0;
  bool exact = true;
};

// Hadamard on register i when x_{0,i} = 1, coherent run of the program,
// measurement of its output, Hadamards undone.
CpEvaluation cp_eval(CpKey& key, const gf2::BitVector& x, Rng& rng);

struct TriggerInput {
  gf2::BitVector x0;
  gf2::BitVector x1;
  gf2::BitVector x2;
  gf2::BitVector planted_y;

  gf2::BitVector full() const;
};

// Encoded program: tag 01, selector x0, output y, zero padding to l2 - l0 bits.
gf2::BitVector encode_trigger_program(const gf2::BitVector& x0, const gf2::BitVector& y,
                                      const CpParams& params);
struct TriggerProgram {
  gf2::BitVector x0;
  gf2::BitVector y;
};
std::optional<TriggerProgram> decode_trigger_program(const gf2::BitVector& bits, const CpParams& params);

TriggerInput gen_trigger(const gf2::BitVector& x0, const gf2::BitVector& y, const prf::MaskedPrfKey& k2,
                         const prf::GgmKey& k3, std::span<const sde::CosetRecord> cosets,
                         const CpParams& params);

// Step-1 check of the program: x decodes to a program under K2, K3.
bool is_trigger(const gf2::BitVector& x, const prf::MaskedPrfKey& k2, const prf::GgmKey& k3,
                const CpParams& params);

}  // namespace cosetlab::cprf
