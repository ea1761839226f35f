#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cosetlab/cprf.hpp"
#include "cosetlab/gf2.hpp"
#include "cosetlab/meas.hpp"
#include "cosetlab/obf.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"
#include "cosetlab/sde.hpp"
#include "cosetlab/toksig.hpp"

// Security games with pluggable strategies, Monte Carlo estimation and the
// closed-form bounds that go with them.
namespace cosetlab::games {

using Json = nlohmann::ordered_json;

// Rounds to 12 significant digits so that serialized values are stable.
double round12(double x);

struct GameResult {
  std::string game;
  Json params = Json::object();
  std::string strategy;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  std::optional<double> exact;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> queries;

  Json to_json() const;
  // Binomial standard deviation of the estimate around p.
  double sigma(double p) const;
};

struct GameOptions {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  // Lets strategies that read challenger secrets run. Test use only.
  bool allow_sanity = false;
};

struct TrialOutcome {
  bool success = false;
  std::uint64_t queries = 0;
};

struct TrialSummary {
  std::uint64_t successes = 0;
  std::uint64_t queries = 0;
};

// Trial i runs with Rng(derive_seed(seed, i)); the sums do not depend on jobs.
TrialSummary run_trials(std::uint64_t trials, std::uint64_t seed, unsigned jobs,
                        const std::function<TrialOutcome(std::uint64_t, Rng&)>& trial);

// Raised when a strategy reaches for something outside its interface.
class InterfaceViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Access to challenger secrets, open only for sanity strategies.
template <typename Secret>
class SecretChannel {
 public:
  SecretChannel(const Secret* secret, bool open) : secret_(secret), open_(open) {}
  const Secret& peek() const {
    if (!open_ || secret_ == nullptr) throw InterfaceViolation("strategy tried to read challenger secrets");
    return *secret_;
  }

 private:
  const Secret* secret_;
  bool open_;
};

// Membership oracle that counts every query, classical or coherent.
class CountingOracle {
 public:
  explicit CountingOracle(obf::ObfProgram program) : program_(std::move(program)) {}

  bool query(const gf2::BitVector& x);
  // |v> -> (-1)^{f(v)} |v>
  void phase_query(qsim::StateVector& state);
  // Coherent evaluation with the answer measured.
  bool measure_query(qsim::StateVector& state, Rng& rng);
  std::uint64_t count() const { return count_; }

 private:
  obf::ObfProgram program_;
  std::uint64_t count_ = 0;
};

// ---------------------------------------------------------------------------
// Direct product

enum class OracleMode { kInformationTheoretic, kComputational };

struct DirectProductView {
  std::size_t n = 0;
  qsim::StateVector state;
  CountingOracle* primal = nullptr;           // A + s, oracle mode
  CountingOracle* dual = nullptr;             // A^perp + s', oracle mode
  const obf::ObfProgram* c0 = nullptr;        // program mode
  const obf::ObfProgram* c1 = nullptr;        // program mode
  SecretChannel<sde::CosetRecord> secret{nullptr, false};
};

struct DirectProductStrategy {
  std::string name;
  bool sanity = false;
  std::function<std::pair<gf2::BitVector, gf2::BitVector>(DirectProductView&, Rng&)> play;
  std::function<std::optional<double>(std::size_t n)> exact;
};

const std::vector<DirectProductStrategy>& direct_product_strategies();
GameResult run_direct_product(std::size_t n, const DirectProductStrategy& strategy, OracleMode mode,
                              const GameOptions& opts);
GameResult run_direct_product(std::size_t n, const std::string& strategy, OracleMode mode,
                              const GameOptions& opts);

// Fresh token, sign 0, then revoke. Accepts with probability 2^{-n/2}.
GameResult run_revoke_after_sign(std::size_t n, const GameOptions& opts);

// ---------------------------------------------------------------------------
// Monogamy games

// One party's share of the joint register, qubits [first, first + count).
class Party {
 public:
  Party(qsim::StateVector* joint, std::size_t first, std::size_t count, const std::vector<gf2::BitVector>* notes,
        const gf2::Subspace* a)
      : joint_(joint), first_(first), count_(count), notes_(notes), a_(a) {}

  std::size_t qubits() const { return count_; }
  const std::vector<gf2::BitVector>& notes() const { return *notes_; }
  const gf2::Subspace& subspace() const { return *a_; }

  void apply_hadamard();
  gf2::BitVector measure(Rng& rng);
  // Measures Can_B of the register's contents for the given subspace B.
  gf2::BitVector measure_coset_label(const gf2::Subspace& b, Rng& rng);

 private:
  qsim::StateVector* joint_;
  std::size_t first_;
  std::size_t count_;
  const std::vector<gf2::BitVector>* notes_;
  const gf2::Subspace* a_;
};

struct SplitContext {
  std::size_t n = 0;
  const obf::ObfProgram* c0 = nullptr;  // computational variant only
  const obf::ObfProgram* c1 = nullptr;
  SecretChannel<sde::CosetRecord> secret{nullptr, false};
};

// Joint register: the first qubits_b qubits go to A1, the rest to A2.
struct SplitOutput {
  qsim::StateVector joint;
  std::size_t qubits_b = 0;
  std::vector<gf2::BitVector> notes_b;
  std::vector<gf2::BitVector> notes_c;
};

using SplitFn = std::function<SplitOutput(qsim::StateVector, const SplitContext&, Rng&)>;

struct MonogamyAnswer {
  gf2::BitVector s;
  gf2::BitVector s_prime;
};

struct MonogamyStrategy {
  std::string name;
  bool sanity = false;
  SplitFn split;
  std::function<MonogamyAnswer(Party&, Rng&)> answer1;
  std::function<MonogamyAnswer(Party&, Rng&)> answer2;
  std::function<std::optional<double>(std::size_t n)> exact;
};

struct StrongMonogamyStrategy {
  std::string name;
  bool sanity = false;
  SplitFn split;
  std::function<gf2::BitVector(Party&, Rng&)> answer1;  // should land in A + s
  std::function<gf2::BitVector(Party&, Rng&)> answer2;  // should land in A^perp + s'
  std::function<std::optional<double>(std::size_t n)> exact;
};

const std::vector<MonogamyStrategy>& monogamy_strategies();
const std::vector<StrongMonogamyStrategy>& strong_monogamy_strategies();

GameResult run_monogamy(std::size_t n, const MonogamyStrategy& strategy, const GameOptions& opts,
                        bool comp = false);
GameResult run_monogamy(std::size_t n, const std::string& strategy, const GameOptions& opts, bool comp = false);
GameResult run_strong_monogamy(std::size_t n, const StrongMonogamyStrategy& strategy, const GameOptions& opts,
                               bool comp = false);
GameResult run_strong_monogamy(std::size_t n, const std::string& strategy, const GameOptions& opts,
                               bool comp = false);

// ---------------------------------------------------------------------------
// Anti-piracy

enum class AntiPiracyKind { kCpa, kRandom, kStrongTi, kIndCprf, kCopyProtection };

std::string_view to_string(AntiPiracyKind kind);
AntiPiracyKind parse_anti_piracy_kind(std::string_view name);

struct SdeInstance {
  std::size_t n = 8;
  std::size_t kappa = 1;
  std::size_t m_len = 2;
  double gamma = 0.1;  // strong-TI threshold is 1/2 + gamma
};

class Decryptor {
 public:
  virtual ~Decryptor() = default;
  virtual std::optional<gf2::BitVector> decrypt(const sde::Ciphertext& ct, Rng& rng) = 0;
};

struct SdePirateOutput {
  std::unique_ptr<Decryptor> first;
  std::unique_ptr<Decryptor> second;
  gf2::BitVector m0;  // chosen plaintexts, used by the CPA-style game
  gf2::BitVector m1;
};

struct SdePirateContext {
  AntiPiracyKind kind = AntiPiracyKind::kCpa;
  std::size_t m_len = 0;
  SecretChannel<sde::SdeSecretKey> secret{nullptr, false};
};

// Quantum decryptors described as (bipartite state, two circuits), for the
// threshold-implementation game.
struct TiPirateOutput {
  meas::Vector joint;  // first register leading, 2^n x 2^n
  meas::DecryptorCircuit first;
  meas::DecryptorCircuit second;
  gf2::BitVector m0;
  gf2::BitVector m1;
};

struct SdePirate {
  std::string name;
  bool sanity = false;
  std::function<SdePirateOutput(const sde::SdePublicKey&, sde::QuantumDecKey, const SdePirateContext&, Rng&)> play;
  std::function<TiPirateOutput(const sde::SdePublicKey&, sde::QuantumDecKey, const SdePirateContext&, Rng&)> play_ti;
  std::function<std::optional<double>(AntiPiracyKind, const SdeInstance&)> exact;
};

class CpProgram {
 public:
  virtual ~CpProgram() = default;
  virtual gf2::BitVector evaluate(const gf2::BitVector& x, Rng& rng) = 0;
  // Guess 0 when y looks like the PRF value at x, 1 when it looks random.
  virtual int distinguish(const gf2::BitVector& x, const gf2::BitVector& y, Rng& rng) = 0;
};

struct CpPirateOutput {
  std::unique_ptr<CpProgram> first;
  std::unique_ptr<CpProgram> second;
};

struct CpPirate {
  std::string name;
  bool sanity = false;
  std::function<CpPirateOutput(cprf::CpKey, const SecretChannel<cprf::ChallengerView>&, Rng&)> play;
  std::function<std::optional<double>(AntiPiracyKind, const cprf::CpParams&)> exact;
};

const std::vector<SdePirate>& sde_pirates();
const std::vector<CpPirate>& cp_pirates();

GameResult run_anti_piracy(AntiPiracyKind kind, const SdeInstance& inst, const SdePirate& pirate,
                           const GameOptions& opts);
GameResult run_anti_piracy(AntiPiracyKind kind, const cprf::CpParams& params, const CpPirate& pirate,
                           const GameOptions& opts);
// Dispatches on kind: the SDE games take inst, the PRF games take params.
GameResult run_anti_piracy(AntiPiracyKind kind, const SdeInstance& inst, const cprf::CpParams& params,
                           const std::string& strategy, const GameOptions& opts);

// ---------------------------------------------------------------------------
// Hidden triggers

struct HiddenTriggerStrategy {
  std::string name;
  bool sanity = false;
  // Receives the key and the two challenge inputs; returns the guessed coin
  // (0: uniform inputs, 1: hidden-trigger inputs).
  std::function<int(cprf::CpKey&, const gf2::BitVector&, const gf2::BitVector&,
                    const SecretChannel<cprf::ChallengerView>&, Rng&)>
      guess;
  std::function<std::optional<double>(const cprf::CpParams&)> exact;
};

const std::vector<HiddenTriggerStrategy>& hidden_trigger_strategies();
GameResult run_hidden_trigger_game(const cprf::CpParams& params, const HiddenTriggerStrategy& strategy,
                                   const GameOptions& opts);
GameResult run_hidden_trigger_game(const cprf::CpParams& params, const std::string& strategy,
                                   const GameOptions& opts);

// ---------------------------------------------------------------------------
// Closed forms and exhaustive checks

struct ExactFraction {
  std::string numerator;
  std::string denominator;
  double value = 0.0;
};

// (1 / C(n, n/2)) * sum_t C(n/2, t)^2 2^{-t}; exact for n <= 64.
ExactFraction monogamy_bound(std::size_t n);
// sum_t C(n/2, t)^2 2^{t - n/2} / C(n, n/2), the same quantity before the
// change of summation index.
ExactFraction monogamy_bound_unsimplified(std::size_t n);

struct OverlapReport {
  std::size_t n = 0;
  bool exhaustive = false;
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  std::uint64_t equality_cases = 0;  // nonzero overlaps meeting the bound
  double max_ratio = 0.0;            // largest overlap / bound
};

// Exhaustive for n <= 4; otherwise samples `samples` random pairs.
OverlapReport overlap_check(std::size_t n, std::uint64_t samples = 100000, std::uint64_t seed = 0);

// Fidelity between sum over canonical (s, s') of |A_{s,s'}>|A_{s,s'}> / 2^{n/2}
// and the maximally entangled state on 2n qubits.
double epr_identity_fidelity(const gf2::Subspace& a);

// All subspaces of F_2^n of dimension d, in RREF.
std::vector<gf2::Subspace> enumerate_subspaces(std::size_t n, std::size_t d);

}  // namespace cosetlab::games
