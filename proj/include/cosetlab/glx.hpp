#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "cosetlab/gf2.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"

// Quantum Goldreich-Levin extraction with a quantum auxiliary register.
namespace cosetlab::glx {

// Classical reversible predictor U |r>|a>|b> = |r>|a>|b + f(r, a)> on an
// n-qubit r register, an aux register and one output qubit.
struct Predictor {
  std::size_t n = 0;
  std::size_t aux_qubits = 0;
  std::function<bool(std::uint64_t r, std::uint64_t a)> f;
  std::optional<double> declared_epsilon;
};

// f(r) = <x, r> + [r in flip set], with a uniformly chosen flip set of
// round(flip_fraction * 2^n) values of r.
Predictor build_ip_predictor(const gf2::BitVector& x, double flip_fraction, std::uint64_t seed);
// f(r, a) = <x, r> + flip(r, a); lets the answer depend on the aux register.
Predictor build_aux_predictor(const gf2::BitVector& x, std::size_t aux_qubits,
                              std::function<bool(std::uint64_t, std::uint64_t)> flip);

// E_r[Pr(f(r, a) = <x, r>)] - 1/2 over the aux distribution of aux.
double exact_epsilon(const Predictor& pred, const gf2::BitVector& x, const qsim::StateVector& aux);

struct ExtractionResult {
  gf2::BitVector candidate;
  bool success = false;
  // Probability of the observed candidate.
  double probability = 0.0;
};

// Uniform r, U, Z on the output qubit, U^dagger, H on r, measure r.
ExtractionResult extract(const Predictor& pred, const qsim::StateVector& aux, const gf2::BitVector& x,
                         Rng& rng);
ExtractionResult extract(const Predictor& pred, const qsim::StateVector& aux, const gf2::BitVector& x,
                         std::uint64_t seed);

// The full register just before the final measurement.
qsim::StateVector extraction_state(const Predictor& pred, const qsim::StateVector& aux);
// Probability that the final measurement yields x.
double exact_success(const Predictor& pred, const qsim::StateVector& aux, const gf2::BitVector& x);

// Fraction of reps extractions that return x.
double success_estimate(const Predictor& pred, const qsim::StateVector& aux, const gf2::BitVector& x,
                        std::uint64_t reps, std::uint64_t seed, unsigned jobs = 1);

}  // namespace cosetlab::glx
