#include "cosetlab/obf.hpp"

#include <stdexcept>
#include <string>

namespace cosetlab::obf {

std::string_view to_string(ProgramKind kind) {
  switch (kind) {
    case ProgramKind::kRaw: return "raw";
    case ProgramKind::kIoStub: return "iO-stub";
    case ProgramKind::kShoStub: return "shO-stub";
    case ProgramKind::kCC: return "CC";
    case ProgramKind::kCCSim: return "CC-sim";
  }
  return "unknown";
}

ObfProgram::ObfProgram(ProgramKind kind, std::size_t input_len, std::size_t padded_size,
                       Evaluator eval)
    : kind_(kind),
      input_len_(input_len),
      padded_size_(padded_size),
      eval_(std::make_shared<const Evaluator>(std::move(eval))) {
  if (!*eval_) throw std::invalid_argument("ObfProgram: empty evaluator");
}

ProgramOutput ObfProgram::operator()(const gf2::BitVector& x) const {
  if (x.size() != input_len_) {
    throw std::invalid_argument("ObfProgram: input has " + std::to_string(x.size()) +
                                " bits, expected " + std::to_string(input_len_));
  }
  return (*eval_)(x);
}

bool ObfProgram::accepts(const gf2::BitVector& x) const {
  auto out = (*this)(x);
  return out && *out == bit_one();
}

const gf2::BitVector& bit_one() {
  static const gf2::BitVector kOne = gf2::BitVector::from_string("1");
  return kOne;
}

const gf2::BitVector& bit_zero() {
  static const gf2::BitVector kZero = gf2::BitVector::from_string("0");
  return kZero;
}

ObfProgram raw_program(std::size_t input_len, std::size_t size, Evaluator eval) {
  return ObfProgram(ProgramKind::kRaw, input_len, size, std::move(eval));
}

ObfProgram membership_program(const gf2::Subspace& space, const gf2::BitVector& offset) {
  if (offset.size() != space.ambient_dim()) {
    throw std::invalid_argument("membership_program: dimension mismatch");
  }
  const std::size_t n = space.ambient_dim();
  return raw_program(n, (space.dim() + 1) * n,
                     [space, offset](const gf2::BitVector& x) -> ProgramOutput {
                       return gf2::coset_contains(space, offset, x) ? bit_one() : bit_zero();
                     });
}

ObfProgram constant_reject_program(std::size_t input_len, std::size_t size) {
  return raw_program(input_len, size, [](const gf2::BitVector&) -> ProgramOutput { return std::nullopt; });
}

ObfProgram io_stub(const ObfProgram& prog, std::size_t pad) {
  if (pad < prog.padded_size()) throw std::invalid_argument("io_stub: pad smaller than program size");
  return ObfProgram(ProgramKind::kIoStub, prog.input_len(), pad,
                    [prog](const gf2::BitVector& x) { return prog(x); });
}

ObfProgram sho_stub(const gf2::Subspace& a, std::size_t d1, Rng& rng) {
  gf2::Subspace b = gf2::sample_superspace(a, d1, rng);
  const std::size_t n = a.ambient_dim();
  gf2::BitVector zero(n);
  ObfProgram member = membership_program(b, zero);
  return ObfProgram(ProgramKind::kShoStub, n, member.padded_size(),
                    [member](const gf2::BitVector& x) { return member(x); });
}

ObfProgram sho_stub(const gf2::Subspace& a, std::size_t d1, std::uint64_t seed) {
  Rng rng(seed);
  return sho_stub(a, d1, rng);
}

CCProgram cc_program(std::function<gf2::BitVector(const gf2::BitVector&)> f, gf2::BitVector y,
                     gf2::BitVector z, std::size_t input_len, std::size_t f_size) {
  if (!f) throw std::invalid_argument("cc_program: empty function");
  return CCProgram{std::move(f), std::move(y), std::move(z), input_len, f_size};
}

ProgramOutput cc_eval(const CCProgram& cc, const gf2::BitVector& x) {
  if (cc.f(x) == cc.y) return cc.z;
  return std::nullopt;
}

ObfProgram cc_obfuscate(const CCProgram& cc) {
  const std::size_t size = cc.f_size + cc.y.size() + cc.z.size();
  return ObfProgram(ProgramKind::kCC, cc.input_len, size,
                    [cc](const gf2::BitVector& x) { return cc_eval(cc, x); });
}

SizeDescriptor size_of(const ObfProgram& prog) { return {prog.input_len(), prog.padded_size()}; }

ObfProgram cc_sim_stub(const SizeDescriptor& params) {
  return ObfProgram(ProgramKind::kCCSim, params.input_len, params.padded_size,
                    [](const gf2::BitVector&) -> ProgramOutput { return std::nullopt; });
}

bool equiv_on_domain(const ObfProgram& p1, const ObfProgram& p2,
                     std::span<const gf2::BitVector> domain) {
  for (const auto& x : domain) {
    if (p1(x) != p2(x)) return false;
  }
  return true;
}

bool equiv_on_cube(const ObfProgram& p1, const ObfProgram& p2) {
  if (p1.input_len() != p2.input_len()) return false;
  const std::size_t n = p1.input_len();
  if (n > 24) throw std::invalid_argument("equiv_on_cube: input too long to enumerate");
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    auto x = gf2::BitVector::from_uint(n, v);
    if (p1(x) != p2(x)) return false;
  }
  return true;
}

}  // namespace cosetlab::obf
