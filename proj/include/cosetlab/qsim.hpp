#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cosetlab/gf2.hpp"
#include "cosetlab/rng.hpp"

namespace cosetlab::qsim {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 26;
inline constexpr double kTolerance = 1e-9;

// Pure state of n qubits. Qubit q corresponds to vector position q, so the
// amplitude of basis vector v sits at index v.to_uint().
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t n);  // |0^n>

  static StateVector basis(std::size_t n, std::uint64_t index);
  static StateVector from_amplitudes(std::size_t n, std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude operator[](std::uint64_t index) const { return amps_[index]; }
  Amplitude& operator[](std::uint64_t index) { return amps_[index]; }

  double norm() const;
  void normalize();

  void apply_hadamard_all();
  // |v> -> |v + shift>
  void apply_xor(std::uint64_t shift);
  // |v> -> (-1)^<v, s> |v>
  void apply_phase(std::uint64_t s);

  // this (x) other, this on the leading qubits.
  StateVector tensor(const StateVector& other) const;

  // Basis indices with squared amplitude above eps.
  std::vector<std::uint64_t> support(double eps = 0.0) const;

 private:
  std::size_t n_ = 0;
  std::vector<Amplitude> amps_;
};

struct MeasurementRecord {
  gf2::BitVector outcome;
  StateVector post_state;
  double probability = 0.0;
};

struct BitMeasurement {
  bool bit = false;
  StateVector post_state;
  double probability = 0.0;
};

using IndexPredicate = std::function<bool(std::uint64_t)>;

StateVector prepare_subspace_state(const gf2::Subspace& a);
// Built as |A> -> H -> add s' -> H -> add s.
StateVector prepare_coset_state(const gf2::Subspace& a, const gf2::BitVector& s,
                                const gf2::BitVector& s_prime);
// Writes sum_a (-1)^<a,s'> |a+s> / sqrt|A| directly.
StateVector coset_state(const gf2::Subspace& a, const gf2::BitVector& s,
                        const gf2::BitVector& s_prime);

StateVector hadamard_all(StateVector state);
// H^n |w>, written directly.
StateVector hadamard_basis_state(std::size_t n, std::uint64_t w);

MeasurementRecord measure_all(const StateVector& state, Rng& rng);
MeasurementRecord measure_all(const StateVector& state, std::uint64_t seed);
// Samples a basis index by the Born rule without touching the state.
std::uint64_t sample_index(const StateVector& state, Rng& rng);

// Evaluates pred into a virtual ancilla, measures it, and uncomputes.
BitMeasurement coherent_predicate(const StateVector& state, const IndexPredicate& pred, Rng& rng);
BitMeasurement coherent_predicate(const StateVector& state, const IndexPredicate& pred,
                                  std::uint64_t seed);
// Probability that coherent_predicate returns 1.
double predicate_mass(const StateVector& state, const IndexPredicate& pred);

Amplitude inner_product(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);

// Operations on a contiguous block of qubits [first, first + count) of a
// larger register.
void apply_hadamard_range(StateVector& state, std::size_t first, std::size_t count);
std::uint64_t measure_range(StateVector& state, std::size_t first, std::size_t count, Rng& rng);
// Projective measurement of label(sub-index) on the block; collapses the
// state to the observed label's preimage.
std::uint64_t measure_label(StateVector& state, std::size_t first, std::size_t count,
                            const std::function<std::uint64_t(std::uint64_t)>& label, Rng& rng);

// Outcome of evaluating a classical program on a tuple of registers and
// measuring only its output.
struct FactorizedOutcome {
  std::optional<gf2::BitVector> output;
  double probability = 0.0;
  // False when the post-measurement state could not be represented as a
  // product of the registers and they were left untouched.
  bool exact = true;
};

using TupleProgram = std::function<std::optional<gf2::BitVector>(std::span<const std::uint64_t>)>;

// Coherently evaluates program on registers (one basis index per register),
// measures the output, and uncomputes. See the implementation for how the
// post-measurement state is formed.
FactorizedOutcome evaluate_factorized(std::span<StateVector* const> registers,
                                      const TupleProgram& program, Rng& rng);

// index,re,im per line.
void write_csv(std::ostream& out, const StateVector& state);

}  // namespace cosetlab::qsim
