#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cosetlab/gf2.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"
#include "cosetlab/sde.hpp"

// Projective and threshold implementations of mixtures of binary projective
// measurements, computed exactly from the eigendecomposition.
namespace cosetlab::meas {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kProjectorTolerance = 1e-8;
inline constexpr double kClusterTolerance = 1e-8;

class ProjectorOp {
 public:
  // Throws std::invalid_argument unless m is Hermitian and idempotent.
  explicit ProjectorOp(Matrix m);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

struct MixtureItem {
  double probability = 0.0;
  ProjectorOp projector;
};

// Eigenvalues ascending, one orthogonal projector per eigenvalue cluster.
struct ProjImpMeasurement {
  std::vector<double> eigenvalues;
  std::vector<Matrix> projectors;
};

ProjImpMeasurement spectral_decomposition(const Matrix& hermitian);

class ProjectiveMixture {
 public:
  explicit ProjectiveMixture(std::vector<MixtureItem> items);

  const std::vector<MixtureItem>& items() const { return items_; }
  // sum_i p_i P_i
  const Matrix& op() const { return op_; }
  const ProjImpMeasurement& decomposition() const { return decomposition_; }
  Eigen::Index dim() const { return op_.rows(); }

 private:
  std::vector<MixtureItem> items_;
  Matrix op_;
  ProjImpMeasurement decomposition_;
};

ProjectiveMixture build_mixture(std::vector<MixtureItem> items);

struct ProjImpOutcome {
  double p = 0.0;
  Vector post;
};

ProjImpOutcome proj_imp_apply(const ProjectiveMixture& mix, const Vector& state, Rng& rng);
ProjImpOutcome proj_imp_apply(const ProjectiveMixture& mix, const Vector& state, std::uint64_t seed);

struct ThresholdOutcome {
  bool accepted = false;
  double p = 0.0;
  Vector post;
};

// ProjImp followed by the test p >= gamma.
ThresholdOutcome threshold_imp_apply(const ProjectiveMixture& mix, double gamma, const Vector& state,
                                     Rng& rng);
ThresholdOutcome threshold_imp_apply(const ProjectiveMixture& mix, double gamma, const Vector& state,
                                     std::uint64_t seed);

// Projection onto the eigenspaces with eigenvalue >= gamma.
Matrix threshold_projector(const ProjectiveMixture& mix, double gamma);
double threshold_accept_probability(const ProjectiveMixture& mix, double gamma, const Vector& state);

// Joint state of two registers with dimensions d1 and d2, first register
// leading. Runs the threshold test of mix1 on the first register and of mix2
// on the second.
struct BipartiteThresholdOutcome {
  bool first = false;
  bool second = false;
  Vector post;
};

BipartiteThresholdOutcome threshold_imp_apply_both(const ProjectiveMixture& mix1, const ProjectiveMixture& mix2,
                                                   double gamma, const Vector& joint, Rng& rng);
double both_accept_probability(const ProjectiveMixture& mix1, const ProjectiveMixture& mix2, double gamma,
                               const Vector& joint);

Vector to_eigen(const qsim::StateVector& state);
// H^n as a dense matrix.
Matrix hadamard_matrix(std::size_t n);

// A decryptor that applies a ciphertext-dependent unitary to its register,
// measures every qubit and maps the outcome to a plaintext guess.
struct DecryptorCircuit {
  std::string name;
  std::function<Matrix(const sde::Ciphertext&)> unitary;
  std::function<std::optional<gf2::BitVector>(std::uint64_t, const sde::Ciphertext&)> readout;
};

// Hadamard when r = 1, measure, run the ciphertext program on the outcome.
DecryptorCircuit honest_decryptor(std::size_t n);
// Ignores its register and the ciphertext.
DecryptorCircuit guessing_decryptor(std::size_t n, const gf2::BitVector& guess);

inline constexpr std::size_t kMaxMixtureQubits = 8;

// One projector per (b, r) with weight 1/4: "the decryptor returns m_b on an
// encryption of m_b under r". Requires kappa = 1. The CC form needs sk.
ProjectiveMixture decryptor_mixture(const sde::SdePublicKey& pk, const sde::SdeSecretKey* sk,
                                    const DecryptorCircuit& circuit, const gf2::BitVector& m0,
                                    const gf2::BitVector& m1,
                                    sde::CiphertextForm form = sde::CiphertextForm::kIo);

}  // namespace cosetlab::meas
