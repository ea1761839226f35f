#include "cosetlab/qsim.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace cosetlab::qsim {

namespace {

void guard_qubits(std::size_t n) {
  if (n > kMaxQubits) throw std::invalid_argument("state exceeds the qubit memory guard");
}

void check_range(const StateVector& s, std::size_t first, std::size_t count) {
  if (first + count > s.num_qubits()) throw std::out_of_range("qubit range exceeds register");
}

}  // namespace

StateVector::StateVector(std::size_t n) : n_(n) {
  guard_qubits(n);
  amps_.assign(std::size_t{1} << n, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t n, std::uint64_t index) {
  StateVector s(n);
  if (index >= s.dimension()) throw std::out_of_range("StateVector::basis: index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::size_t n, std::vector<Amplitude> amplitudes) {
  guard_qubits(n);
  if (amplitudes.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("StateVector::from_amplitudes: wrong length");
  }
  StateVector s;
  s.n_ = n;
  s.amps_ = std::move(amplitudes);
  if (std::abs(s.norm() - 1.0) > kTolerance) {
    throw std::invalid_argument("StateVector::from_amplitudes: state is not normalized");
  }
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  double nrm = norm();
  if (nrm == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= nrm;
}

void StateVector::apply_hadamard_all() { apply_hadamard_range(*this, 0, n_); }

void StateVector::apply_xor(std::uint64_t shift) {
  if (shift >= dimension()) throw std::out_of_range("apply_xor: shift out of range");
  if (shift == 0) return;
  for (std::uint64_t v = 0; v < dimension(); ++v) {
    std::uint64_t w = v ^ shift;
    if (v < w) std::swap(amps_[v], amps_[w]);
  }
}

void StateVector::apply_phase(std::uint64_t s) {
  if (s >= dimension()) throw std::out_of_range("apply_phase: vector out of range");
  for (std::uint64_t v = 0; v < dimension(); ++v) {
    if (std::popcount(v & s) & 1) amps_[v] = -amps_[v];
  }
}

StateVector StateVector::tensor(const StateVector& other) const {
  guard_qubits(n_ + other.n_);
  StateVector out;
  out.n_ = n_ + other.n_;
  out.amps_.resize(dimension() * other.dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    for (std::size_t j = 0; j < other.dimension(); ++j) {
      out.amps_[i * other.dimension() + j] = amps_[i] * other.amps_[j];
    }
  }
  return out;
}

std::vector<std::uint64_t> StateVector::support(double eps) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 0; v < dimension(); ++v) {
    if (std::norm(amps_[v]) > eps) out.push_back(v);
  }
  return out;
}

StateVector prepare_subspace_state(const gf2::Subspace& a) {
  const std::size_t n = a.ambient_dim();
  guard_qubits(n);
  std::vector<Amplitude> amps(std::size_t{1} << n, 0.0);
  const double w = std::pow(2.0, -0.5 * static_cast<double>(a.dim()));
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << a.dim()); ++c) amps[a.element_index(c)] = w;
  return StateVector::from_amplitudes(n, std::move(amps));
}

StateVector prepare_coset_state(const gf2::Subspace& a, const gf2::BitVector& s,
                                const gf2::BitVector& s_prime) {
  if (s.size() != a.ambient_dim() || s_prime.size() != a.ambient_dim()) {
    throw std::invalid_argument("prepare_coset_state: dimension mismatch");
  }
  StateVector st = prepare_subspace_state(a);
  st.apply_hadamard_all();
  st.apply_xor(s_prime.to_uint());
  st.apply_hadamard_all();
  st.apply_xor(s.to_uint());
  return st;
}

StateVector coset_state(const gf2::Subspace& a, const gf2::BitVector& s,
                        const gf2::BitVector& s_prime) {
  const std::size_t n = a.ambient_dim();
  if (s.size() != n || s_prime.size() != n) {
    throw std::invalid_argument("coset_state: dimension mismatch");
  }
  guard_qubits(n);
  std::vector<Amplitude> amps(std::size_t{1} << n, 0.0);
  const double w = std::pow(2.0, -0.5 * static_cast<double>(a.dim()));
  const std::uint64_t si = s.to_uint();
  const std::uint64_t spi = s_prime.to_uint();
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << a.dim()); ++c) {
    std::uint64_t v = a.element_index(c);
    amps[v ^ si] = (std::popcount(v & spi) & 1) ? -w : w;
  }
  return StateVector::from_amplitudes(n, std::move(amps));
}

StateVector hadamard_all(StateVector state) {
  state.apply_hadamard_all();
  return state;
}

StateVector hadamard_basis_state(std::size_t n, std::uint64_t w) {
  guard_qubits(n);
  const std::size_t dim = std::size_t{1} << n;
  if (w >= dim) throw std::out_of_range("hadamard_basis_state: index out of range");
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  std::vector<Amplitude> amps(dim);
  for (std::uint64_t v = 0; v < dim; ++v) amps[v] = (std::popcount(v & w) & 1) ? -amp : amp;
  return StateVector::from_amplitudes(n, std::move(amps));
}

std::uint64_t sample_index(const StateVector& state, Rng& rng) {
  double r = rng.uniform();
  std::uint64_t last = 0;
  for (std::uint64_t v = 0; v < state.dimension(); ++v) {
    double p = std::norm(state[v]);
    if (p <= 0.0) continue;
    last = v;
    if (r < p) return v;
    r -= p;
  }
  return last;
}

MeasurementRecord measure_all(const StateVector& state, Rng& rng) {
  std::uint64_t v = sample_index(state, rng);
  MeasurementRecord rec;
  rec.outcome = gf2::BitVector::from_uint(state.num_qubits(), v);
  rec.probability = std::norm(state[v]);
  rec.post_state = StateVector::basis(state.num_qubits(), v);
  return rec;
}

MeasurementRecord measure_all(const StateVector& state, std::uint64_t seed) {
  Rng rng(seed);
  return measure_all(state, rng);
}

double predicate_mass(const StateVector& state, const IndexPredicate& pred) {
  double p1 = 0.0;
  for (std::uint64_t v = 0; v < state.dimension(); ++v) {
    double p = std::norm(state[v]);
    if (p > 0.0 && pred(v)) p1 += p;
  }
  return p1;
}

BitMeasurement coherent_predicate(const StateVector& state, const IndexPredicate& pred, Rng& rng) {
  std::vector<char> value(state.dimension(), 0);
  double p1 = 0.0;
  double total = 0.0;
  for (std::uint64_t v = 0; v < state.dimension(); ++v) {
    double p = std::norm(state[v]);
    if (p <= 0.0) continue;
    total += p;
    if (pred(v)) {
      value[v] = 1;
      p1 += p;
    }
  }
  p1 /= total;
  BitMeasurement out;
  out.bit = rng.uniform() < p1;
  out.probability = out.bit ? p1 : 1.0 - p1;
  out.post_state = state;
  const char keep = out.bit ? 1 : 0;
  for (std::uint64_t v = 0; v < state.dimension(); ++v) {
    if (value[v] != keep) out.post_state[v] = 0.0;
  }
  out.post_state.normalize();
  return out;
}

BitMeasurement coherent_predicate(const StateVector& state, const IndexPredicate& pred,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return coherent_predicate(state, pred, rng);
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("inner_product: dimension mismatch");
  Amplitude acc = 0.0;
  for (std::uint64_t v = 0; v < a.dimension(); ++v) acc += std::conj(a[v]) * b[v];
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

void apply_hadamard_range(StateVector& state, std::size_t first, std::size_t count) {
  check_range(state, first, count);
  const std::size_t n = state.num_qubits();
  const std::uint64_t dim = state.dimension();
  const double inv = 1.0 / std::sqrt(2.0);
  for (std::size_t q = first; q < first + count; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    for (std::uint64_t base = 0; base < dim; base += 2 * bit) {
      for (std::uint64_t v = base; v < base + bit; ++v) {
        Amplitude x = state[v];
        Amplitude y = state[v + bit];
        state[v] = (x + y) * inv;
        state[v + bit] = (x - y) * inv;
      }
    }
  }
}

std::uint64_t measure_label(StateVector& state, std::size_t first, std::size_t count,
                            const std::function<std::uint64_t(std::uint64_t)>& label, Rng& rng) {
  check_range(state, first, count);
  const std::size_t shift = state.num_qubits() - first - count;
  const std::uint64_t mask = count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
  std::map<std::uint64_t, double> mass;
  std::vector<std::uint64_t> labels(state.dimension(), 0);
  double total = 0.0;
  for (std::uint64_t v = 0; v < state.dimension(); ++v) {
    double p = std::norm(state[v]);
    if (p <= 0.0) continue;
    std::uint64_t l = label((v >> shift) & mask);
    labels[v] = l;
    mass[l] += p;
    total += p;
  }
  double r = rng.uniform() * total;
  std::uint64_t chosen = mass.rbegin()->first;
  for (const auto& [l, p] : mass) {
    if (r < p) {
      chosen = l;
      break;
    }
    r -= p;
  }
  for (std::uint64_t v = 0; v < state.dimension(); ++v) {
    if (std::norm(state[v]) > 0.0 && labels[v] != chosen) state[v] = 0.0;
  }
  state.normalize();
  return chosen;
}

std::uint64_t measure_range(StateVector& state, std::size_t first, std::size_t count, Rng& rng) {
  return measure_label(state, first, count, [](std::uint64_t x) { return x; }, rng);
}

FactorizedOutcome evaluate_factorized(std::span<StateVector* const> registers,
                                      const TupleProgram& program, Rng& rng) {
  const std::size_t k = registers.size();
  if (k == 0) throw std::invalid_argument("evaluate_factorized: no registers");

  // The output distribution of the coherent evaluation is the Born
  // distribution of the product basis, pushed through the program.
  std::vector<std::uint64_t> u(k);
  for (std::size_t i = 0; i < k; ++i) u[i] = sample_index(*registers[i], rng);
  FactorizedOutcome result;
  result.output = program(u);

  if (!result.output && k > 1) {
    // The rejecting branch of a multi-register program is in general
    // entangled across registers; it is not representable here.
    result.exact = false;
    result.probability = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  // For an accepting output of a program that is a conjunction of per-register
  // conditions, the preimage of the output is a product set S_1 x ... x S_k;
  // S_i is found by varying register i alone around the sampled tuple.
  std::vector<std::vector<char>> keep(k);
  result.probability = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    StateVector& reg = *registers[i];
    keep[i].assign(reg.dimension(), 0);
    std::vector<std::uint64_t> probe = u;
    double mass = 0.0;
    for (std::uint64_t v = 0; v < reg.dimension(); ++v) {
      double p = std::norm(reg[v]);
      if (p <= 0.0) continue;
      probe[i] = v;
      if (program(probe) == result.output) {
        keep[i][v] = 1;
        mass += p;
      }
    }
    result.probability *= mass;
  }
  // Spot-check that the preimage really is a product set, in both directions:
  // tuples with the output must lie in S_1 x ... x S_k, and every tuple there
  // must give the output.
  std::vector<std::uint64_t> w(k);
  if (k > 1) {
    for (int trial = 0; trial < 8; ++trial) {
      bool inside = true;
      for (std::size_t i = 0; i < k; ++i) {
        w[i] = sample_index(*registers[i], rng);
        inside = inside && keep[i][w[i]];
      }
      if (!inside && program(w) == result.output) {
        throw std::runtime_error("evaluate_factorized: program preimage is not a product set");
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    StateVector& reg = *registers[i];
    for (std::uint64_t v = 0; v < reg.dimension(); ++v) {
      if (!keep[i][v]) reg[v] = 0.0;
    }
    reg.normalize();
  }
  if (k > 1) {
    for (int trial = 0; trial < 8; ++trial) {
      for (std::size_t i = 0; i < k; ++i) w[i] = sample_index(*registers[i], rng);
      if (program(w) != result.output) {
        throw std::runtime_error("evaluate_factorized: program preimage is not a product set");
      }
    }
  }
  return result;
}

void write_csv(std::ostream& out, const StateVector& state) {
  out << "index,re,im\n";
  out.precision(17);
  for (std::uint64_t v = 0; v < state.dimension(); ++v) {
    out << v << ',' << state[v].real() << ',' << state[v].imag() << '\n';
  }
}

}  // namespace cosetlab::qsim
