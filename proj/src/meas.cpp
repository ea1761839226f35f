#include "cosetlab/meas.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cosetlab::meas {

namespace {

double squared_norm(const Vector& v) { return v.squaredNorm(); }

// Picks index k with probability weights[k] / sum.
std::size_t sample(const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  double r = rng.uniform() * total;
  std::size_t last = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    last = k;
    if (r < weights[k]) return k;
    r -= weights[k];
  }
  return last;
}

void check_state(const Vector& state, Eigen::Index dim) {
  if (state.size() != dim) throw std::invalid_argument("meas: state dimension mismatch");
}

// Applies E (d x d) to the first or second factor of a d1*d2 joint vector.
Vector apply_on_factor(const Matrix& e, const Vector& joint, Eigen::Index d1, Eigen::Index d2, bool first) {
  // Row-major view: joint[i * d2 + j] = M(i, j).
  Matrix m(d1, d2);
  for (Eigen::Index i = 0; i < d1; ++i) {
    for (Eigen::Index j = 0; j < d2; ++j) m(i, j) = joint(i * d2 + j);
  }
  Matrix out = first ? Matrix(e * m) : Matrix(m * e.transpose());
  Vector v(d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i) {
    for (Eigen::Index j = 0; j < d2; ++j) v(i * d2 + j) = out(i, j);
  }
  return v;
}

}  // namespace

ProjectorOp::ProjectorOp(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("ProjectorOp: matrix is not square");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kProjectorTolerance) {
    throw std::invalid_argument("ProjectorOp: matrix is not Hermitian");
  }
  if ((m_ * m_ - m_).cwiseAbs().maxCoeff() > kProjectorTolerance) {
    throw std::invalid_argument("ProjectorOp: matrix is not idempotent");
  }
}

ProjImpMeasurement spectral_decomposition(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectral_decomposition: solver failed");
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  ProjImpMeasurement out;
  Eigen::Index start = 0;
  const Eigen::Index d = vals.size();
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && vals(end) - vals(end - 1) <= kClusterTolerance) ++end;
    Matrix v = vecs.middleCols(start, end - start);
    out.eigenvalues.push_back(vals.segment(start, end - start).mean());
    out.projectors.push_back(v * v.adjoint());
    start = end;
  }
  return out;
}

ProjectiveMixture::ProjectiveMixture(std::vector<MixtureItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw std::invalid_argument("ProjectiveMixture: no items");
  const Eigen::Index d = items_.front().projector.dim();
  double total = 0.0;
  op_ = Matrix::Zero(d, d);
  for (const auto& it : items_) {
    if (it.projector.dim() != d) throw std::invalid_argument("ProjectiveMixture: dimension mismatch");
    if (it.probability < 0.0) throw std::invalid_argument("ProjectiveMixture: negative probability");
    total += it.probability;
    op_ += it.probability * it.projector.matrix();
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("ProjectiveMixture: probabilities must sum to 1");
  decomposition_ = spectral_decomposition(op_);
}

ProjectiveMixture build_mixture(std::vector<MixtureItem> items) { return ProjectiveMixture(std::move(items)); }

ProjImpOutcome proj_imp_apply(const ProjectiveMixture& mix, const Vector& state, Rng& rng) {
  check_state(state, mix.dim());
  const auto& dec = mix.decomposition();
  std::vector<Vector> branches;
  std::vector<double> weights;
  for (const auto& p : dec.projectors) {
    branches.push_back(p * state);
    weights.push_back(squared_norm(branches.back()));
  }
  std::size_t k = sample(weights, rng);
  return ProjImpOutcome{dec.eigenvalues[k], branches[k] / std::sqrt(weights[k])};
}

ProjImpOutcome proj_imp_apply(const ProjectiveMixture& mix, const Vector& state, std::uint64_t seed) {
  Rng rng(seed);
  return proj_imp_apply(mix, state, rng);
}

ThresholdOutcome threshold_imp_apply(const ProjectiveMixture& mix, double gamma, const Vector& state,
                                     Rng& rng) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("threshold_imp_apply: gamma outside [0, 1]");
  ProjImpOutcome o = proj_imp_apply(mix, state, rng);
  return ThresholdOutcome{o.p >= gamma - kClusterTolerance, o.p, std::move(o.post)};
}

ThresholdOutcome threshold_imp_apply(const ProjectiveMixture& mix, double gamma, const Vector& state,
                                     std::uint64_t seed) {
  Rng rng(seed);
  return threshold_imp_apply(mix, gamma, state, rng);
}

Matrix threshold_projector(const ProjectiveMixture& mix, double gamma) {
  const auto& dec = mix.decomposition();
  Matrix e = Matrix::Zero(mix.dim(), mix.dim());
  for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k) {
    if (dec.eigenvalues[k] >= gamma - kClusterTolerance) e += dec.projectors[k];
  }
  return e;
}

double threshold_accept_probability(const ProjectiveMixture& mix, double gamma, const Vector& state) {
  check_state(state, mix.dim());
  return squared_norm(threshold_projector(mix, gamma) * state);
}

BipartiteThresholdOutcome threshold_imp_apply_both(const ProjectiveMixture& mix1, const ProjectiveMixture& mix2,
                                                   double gamma, const Vector& joint, Rng& rng) {
  const Eigen::Index d1 = mix1.dim();
  const Eigen::Index d2 = mix2.dim();
  check_state(joint, d1 * d2);
  BipartiteThresholdOutcome out;
  Vector state = joint;
  for (int side = 0; side < 2; ++side) {
    const Matrix e = threshold_projector(side == 0 ? mix1 : mix2, gamma);
    const Matrix not_e = Matrix::Identity(e.rows(), e.cols()) - e;
    Vector acc = apply_on_factor(e, state, d1, d2, side == 0);
    Vector rej = apply_on_factor(not_e, state, d1, d2, side == 0);
    const double pa = squared_norm(acc);
    const double pr = squared_norm(rej);
    const bool accepted = rng.uniform() * (pa + pr) < pa;
    state = accepted ? Vector(acc / std::sqrt(pa)) : Vector(rej / std::sqrt(pr));
    (side == 0 ? out.first : out.second) = accepted;
  }
  out.post = std::move(state);
  return out;
}

double both_accept_probability(const ProjectiveMixture& mix1, const ProjectiveMixture& mix2, double gamma,
                               const Vector& joint) {
  const Eigen::Index d1 = mix1.dim();
  const Eigen::Index d2 = mix2.dim();
  check_state(joint, d1 * d2);
  Vector v = apply_on_factor(threshold_projector(mix1, gamma), joint, d1, d2, true);
  v = apply_on_factor(threshold_projector(mix2, gamma), v, d1, d2, false);
  return squared_norm(v);
}

Vector to_eigen(const qsim::StateVector& state) {
  Vector v(static_cast<Eigen::Index>(state.dimension()));
  for (std::uint64_t i = 0; i < state.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = state[i];
  return v;
}

Matrix hadamard_matrix(std::size_t n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  Matrix h(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      h(i, j) = (std::popcount(static_cast<std::uint64_t>(i & j)) & 1) ? -amp : amp;
    }
  }
  return h;
}

DecryptorCircuit honest_decryptor(std::size_t n) {
  Matrix h = hadamard_matrix(n);
  Matrix id = Matrix::Identity(h.rows(), h.cols());
  return DecryptorCircuit{
      "honest",
      [h, id](const sde::Ciphertext& ct) { return ct.r.get(0) ? h : id; },
      [n](std::uint64_t outcome, const sde::Ciphertext& ct) {
        return ct.program(gf2::BitVector::from_uint(n, outcome));
      }};
}

DecryptorCircuit guessing_decryptor(std::size_t n, const gf2::BitVector& guess) {
  Matrix id = Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  return DecryptorCircuit{
      "guess", [id](const sde::Ciphertext&) { return id; },
      [guess](std::uint64_t, const sde::Ciphertext&) -> std::optional<gf2::BitVector> { return guess; }};
}

ProjectiveMixture decryptor_mixture(const sde::SdePublicKey& pk, const sde::SdeSecretKey* sk,
                                    const DecryptorCircuit& circuit, const gf2::BitVector& m0,
                                    const gf2::BitVector& m1, sde::CiphertextForm form) {
  if (pk.kappa() != 1) throw std::invalid_argument("decryptor_mixture: requires kappa = 1");
  if (pk.n > kMaxMixtureQubits) throw std::invalid_argument("decryptor_mixture: space too large to enumerate");
  if (form == sde::CiphertextForm::kCC && sk == nullptr) {
    throw std::invalid_argument("decryptor_mixture: CC form needs the secret key");
  }
  if (form != sde::CiphertextForm::kIo && form != sde::CiphertextForm::kCC) {
    throw std::invalid_argument("decryptor_mixture: unsupported ciphertext form");
  }
  const std::size_t n = pk.n;
  const Eigen::Index d = Eigen::Index{1} << n;
  std::vector<MixtureItem> items;
  for (int b = 0; b < 2; ++b) {
    const gf2::BitVector& mb = b == 0 ? m0 : m1;
    for (int r = 0; r < 2; ++r) {
      gf2::BitVector rv = gf2::BitVector::from_uint(1, static_cast<std::uint64_t>(r));
      sde::Ciphertext ct = form == sde::CiphertextForm::kCC ? sde::encrypt_cc_with_r(*sk, mb, rv)
                                                            : sde::encrypt_with_r(pk, mb, rv);
      Matrix u = circuit.unitary(ct);
      if (u.rows() != d || u.cols() != d) throw std::invalid_argument("decryptor_mixture: unitary has wrong size");
      Eigen::VectorXd diag = Eigen::VectorXd::Zero(d);
      for (Eigen::Index v = 0; v < d; ++v) {
        auto out = circuit.readout(static_cast<std::uint64_t>(v), ct);
        if (out && *out == mb) diag(v) = 1.0;
      }
      Matrix p = u.adjoint() * diag.cast<std::complex<double>>().asDiagonal() * u;
      items.push_back(MixtureItem{0.25, ProjectorOp(std::move(p))});
    }
  }
  return ProjectiveMixture(std::move(items));
}

}  // namespace cosetlab::meas
