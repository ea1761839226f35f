#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "cosetlab/gf2.hpp"
#include "cosetlab/rng.hpp"

// Functionality-only stand-ins for obfuscated programs. Nothing here hides
// anything: every program is a plain closure with a kind tag and a declared
// size. They exist so that schemes and games can be run and checked.
namespace cosetlab::obf {

enum class ProgramKind { kRaw, kIoStub, kShoStub, kCC, kCCSim };

std::string_view to_string(ProgramKind kind);

// nullopt stands for the reject symbol.
using ProgramOutput = std::optional<gf2::BitVector>;
using Evaluator = std::function<ProgramOutput(const gf2::BitVector&)>;

class ObfProgram {
 public:
  ObfProgram(ProgramKind kind, std::size_t input_len, std::size_t padded_size, Evaluator eval);

  ProgramOutput operator()(const gf2::BitVector& x) const;
  // True iff the output is the single bit 1.
  bool accepts(const gf2::BitVector& x) const;

  ProgramKind kind() const { return kind_; }
  std::size_t input_len() const { return input_len_; }
  // Size in abstract gate units.
  std::size_t padded_size() const { return padded_size_; }

 private:
  ProgramKind kind_;
  std::size_t input_len_;
  std::size_t padded_size_;
  std::shared_ptr<const Evaluator> eval_;
};

const gf2::BitVector& bit_one();
const gf2::BitVector& bit_zero();

ObfProgram raw_program(std::size_t input_len, std::size_t size, Evaluator eval);
// Outputs 1 on members of space + offset and 0 elsewhere.
ObfProgram membership_program(const gf2::Subspace& space, const gf2::BitVector& offset);
ObfProgram constant_reject_program(std::size_t input_len, std::size_t size);

// Same behavior, recorded padded size. pad must cover prog.padded_size().
ObfProgram io_stub(const ObfProgram& prog, std::size_t pad);

// Membership in a uniformly random superspace of a of dimension d1.
ObfProgram sho_stub(const gf2::Subspace& a, std::size_t d1, Rng& rng);
ObfProgram sho_stub(const gf2::Subspace& a, std::size_t d1, std::uint64_t seed);

// Outputs z when f(x) = y, reject otherwise.
struct CCProgram {
  std::function<gf2::BitVector(const gf2::BitVector&)> f;
  gf2::BitVector y;
  gf2::BitVector z;
  std::size_t input_len = 0;
  std::size_t f_size = 0;
};

CCProgram cc_program(std::function<gf2::BitVector(const gf2::BitVector&)> f, gf2::BitVector y,
                     gf2::BitVector z, std::size_t input_len, std::size_t f_size);
ProgramOutput cc_eval(const CCProgram& cc, const gf2::BitVector& x);
ObfProgram cc_obfuscate(const CCProgram& cc);

struct SizeDescriptor {
  std::size_t input_len = 0;
  std::size_t padded_size = 0;
};

SizeDescriptor size_of(const ObfProgram& prog);
// Constant-reject program with the given shape.
ObfProgram cc_sim_stub(const SizeDescriptor& params);

bool equiv_on_domain(const ObfProgram& p1, const ObfProgram& p2,
                     std::span<const gf2::BitVector> domain);
// Exhaustive over all inputs of p1.input_len() bits; at most 24 bits.
bool equiv_on_cube(const ObfProgram& p1, const ObfProgram& p2);

}  // namespace cosetlab::obf
