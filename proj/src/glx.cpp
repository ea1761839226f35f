#include "cosetlab/glx.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "cosetlab/games.hpp"

namespace cosetlab::glx {

namespace {

bool inner(std::uint64_t x, std::uint64_t r) { return (std::popcount(x & r) & 1) != 0; }

void check(const Predictor& pred, const qsim::StateVector& aux) {
  if (!pred.f) throw std::invalid_argument("glx: predictor has no function");
  if (aux.num_qubits() != pred.aux_qubits) throw std::invalid_argument("glx: aux register size mismatch");
  if (pred.n == 0 || pred.n + pred.aux_qubits + 1 > qsim::kMaxQubits) {
    throw std::invalid_argument("glx: register too large");
  }
}

}  // namespace

Predictor build_ip_predictor(const gf2::BitVector& x, double flip_fraction, std::uint64_t seed) {
  const std::size_t n = x.size();
  if (n == 0 || n > 20) throw std::invalid_argument("build_ip_predictor: n must be in 1..20");
  if (!(flip_fraction >= 0.0 && flip_fraction <= 1.0)) {
    throw std::invalid_argument("build_ip_predictor: flip fraction outside [0, 1]");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  const auto flips = static_cast<std::uint64_t>(std::llround(flip_fraction * static_cast<double>(dim)));
  std::vector<std::uint64_t> order(dim);
  for (std::uint64_t i = 0; i < dim; ++i) order[i] = i;
  Rng rng(seed);
  for (std::uint64_t i = dim - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  auto flip = std::make_shared<std::vector<bool>>(dim, false);
  for (std::uint64_t i = 0; i < flips; ++i) (*flip)[order[i]] = true;
  const std::uint64_t xv = x.to_uint();
  Predictor p;
  p.n = n;
  p.f = [xv, flip](std::uint64_t r, std::uint64_t) { return inner(xv, r) != (*flip)[r]; };
  p.declared_epsilon = 0.5 - static_cast<double>(flips) / static_cast<double>(dim);
  return p;
}

Predictor build_aux_predictor(const gf2::BitVector& x, std::size_t aux_qubits,
                              std::function<bool(std::uint64_t, std::uint64_t)> flip) {
  const std::uint64_t xv = x.to_uint();
  Predictor p;
  p.n = x.size();
  p.aux_qubits = aux_qubits;
  p.f = [xv, flip = std::move(flip)](std::uint64_t r, std::uint64_t a) { return inner(xv, r) != flip(r, a); };
  return p;
}

double exact_epsilon(const Predictor& pred, const gf2::BitVector& x, const qsim::StateVector& aux) {
  check(pred, aux);
  const std::uint64_t dim = std::uint64_t{1} << pred.n;
  const std::uint64_t xv = x.to_uint();
  double correct = 0.0;
  for (std::uint64_t a = 0; a < aux.dimension(); ++a) {
    const double w = std::norm(aux[a]);
    if (w == 0.0) continue;
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < dim; ++r) hits += pred.f(r, a) == inner(xv, r) ? 1 : 0;
    correct += w * static_cast<double>(hits) / static_cast<double>(dim);
  }
  return correct - 0.5;
}

qsim::StateVector extraction_state(const Predictor& pred, const qsim::StateVector& aux) {
  check(pred, aux);
  const std::size_t k = pred.aux_qubits;
  const std::uint64_t dim_r = std::uint64_t{1} << pred.n;
  const std::uint64_t dim_a = aux.dimension();
  const double amp_r = 1.0 / std::sqrt(static_cast<double>(dim_r));
  std::vector<qsim::Amplitude> amps(dim_r * dim_a * 2, 0.0);
  // Start: uniform r, aux, output qubit |0>.
  for (std::uint64_t r = 0; r < dim_r; ++r) {
    for (std::uint64_t a = 0; a < dim_a; ++a) amps[(r << (k + 1)) | (a << 1)] = amp_r * aux[a];
  }
  auto apply_u = [&] {
    for (std::uint64_t r = 0; r < dim_r; ++r) {
      for (std::uint64_t a = 0; a < dim_a; ++a) {
        if (!pred.f(r, a)) continue;
        const std::uint64_t base = (r << (k + 1)) | (a << 1);
        std::swap(amps[base], amps[base | 1]);
      }
    }
  };
  apply_u();
  for (std::uint64_t i = 1; i < amps.size(); i += 2) amps[i] = -amps[i];  // Z on the output qubit
  apply_u();                                                               // U is its own inverse
  qsim::StateVector st = qsim::StateVector::from_amplitudes(pred.n + k + 1, std::move(amps));
  qsim::apply_hadamard_range(st, 0, pred.n);
  return st;
}

double exact_success(const Predictor& pred, const qsim::StateVector& aux, const gf2::BitVector& x) {
  qsim::StateVector st = extraction_state(pred, aux);
  const std::size_t rest = pred.aux_qubits + 1;
  const std::uint64_t xv = x.to_uint();
  double p = 0.0;
  for (std::uint64_t tail = 0; tail < (std::uint64_t{1} << rest); ++tail) p += std::norm(st[(xv << rest) | tail]);
  return p;
}

ExtractionResult extract(const Predictor& pred, const qsim::StateVector& aux, const gf2::BitVector& x,
                         Rng& rng) {
  qsim::StateVector st = extraction_state(pred, aux);
  const std::size_t rest = pred.aux_qubits + 1;
  std::vector<double> marginal(std::uint64_t{1} << pred.n, 0.0);
  for (std::uint64_t i = 0; i < st.dimension(); ++i) marginal[i >> rest] += std::norm(st[i]);
  const std::uint64_t outcome = qsim::measure_range(st, 0, pred.n, rng);
  ExtractionResult res;
  res.candidate = gf2::BitVector::from_uint(pred.n, outcome);
  res.success = res.candidate == x;
  res.probability = marginal[outcome];
  return res;
}

ExtractionResult extract(const Predictor& pred, const qsim::StateVector& aux, const gf2::BitVector& x,
                         std::uint64_t seed) {
  Rng rng(seed);
  return extract(pred, aux, x, rng);
}

double success_estimate(const Predictor& pred, const qsim::StateVector& aux, const gf2::BitVector& x,
                        std::uint64_t reps, std::uint64_t seed, unsigned jobs) {
  if (reps == 0) throw std::invalid_argument("success_estimate: reps must be positive");
  games::TrialSummary sum = games::run_trials(reps, seed, jobs, [&](std::uint64_t, Rng& rng) {
    return games::TrialOutcome{extract(pred, aux, x, rng).success, 0};
  });
  return static_cast<double>(sum.successes) / static_cast<double>(reps);
}

}  // namespace cosetlab::glx
