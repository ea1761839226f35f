#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "games_internal.hpp"

namespace cosetlab::games {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json GameResult::to_json() const {
  Json j;
  j["game"] = game;
  j["params"] = params;
  j["strategy"] = strategy;
  j["trials"] = trials;
  j["successes"] = successes;
  j["estimate"] = round12(estimate);
  j["exact"] = exact ? Json(round12(*exact)) : Json(nullptr);
  j["seed"] = seed;
  if (queries) j["queries"] = *queries;
  return j;
}

double GameResult::sigma(double p) const {
  if (trials == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

TrialSummary run_trials(std::uint64_t trials, std::uint64_t seed, unsigned jobs,
                        const std::function<TrialOutcome(std::uint64_t, Rng&)>& trial) {
  if (jobs == 0) jobs = 1;
  if (jobs > trials) jobs = static_cast<unsigned>(trials == 0 ? 1 : trials);
  std::vector<TrialSummary> partial(jobs);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < trials; i += jobs) {
        Rng rng(derive_seed(seed, i));
        TrialOutcome o = trial(i, rng);
        partial[w].successes += o.success ? 1 : 0;
        partial[w].queries += o.queries;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  TrialSummary total;
  for (const auto& p : partial) {
    total.successes += p.successes;
    total.queries += p.queries;
  }
  return total;
}

bool CountingOracle::query(const gf2::BitVector& x) {
  ++count_;
  return program_.accepts(x);
}

void CountingOracle::phase_query(qsim::StateVector& state) {
  ++count_;
  const std::size_t n = program_.input_len();
  if (state.num_qubits() != n) throw std::invalid_argument("phase_query: register size mismatch");
  for (std::uint64_t v = 0; v < state.dimension(); ++v) {
    if (state[v] != qsim::Amplitude(0.0) && program_.accepts(gf2::BitVector::from_uint(n, v))) {
      state[v] = -state[v];
    }
  }
}

bool CountingOracle::measure_query(qsim::StateVector& state, Rng& rng) {
  ++count_;
  const std::size_t n = program_.input_len();
  if (state.num_qubits() != n) throw std::invalid_argument("measure_query: register size mismatch");
  const obf::ObfProgram& prog = program_;
  qsim::BitMeasurement m = qsim::coherent_predicate(
      state, [&prog, n](std::uint64_t v) { return prog.accepts(gf2::BitVector::from_uint(n, v)); }, rng);
  state = std::move(m.post_state);
  return m.bit;
}

void Party::apply_hadamard() {
  if (count_ > 0) qsim::apply_hadamard_range(*joint_, first_, count_);
}

gf2::BitVector Party::measure(Rng& rng) {
  if (count_ == 0) return gf2::BitVector(0);
  return gf2::BitVector::from_uint(count_, qsim::measure_range(*joint_, first_, count_, rng));
}

gf2::BitVector Party::measure_coset_label(const gf2::Subspace& b, Rng& rng) {
  if (b.ambient_dim() != count_) throw std::invalid_argument("measure_coset_label: subspace does not fit register");
  const std::uint64_t label =
      qsim::measure_label(*joint_, first_, count_, [&b](std::uint64_t x) { return b.reduce_index(x); }, rng);
  return gf2::BitVector::from_uint(count_, label);
}

namespace detail {

bool secrets_open(bool sanity, const std::string& strategy, const GameOptions& opts) {
  if (sanity && !opts.allow_sanity) {
    throw InterfaceViolation("strategy '" + strategy + "' reads challenger secrets and needs the sanity flag");
  }
  return sanity && opts.allow_sanity;
}

GameResult make_result(std::string game, Json params, std::string strategy, const GameOptions& opts,
                       const TrialSummary& summary, std::optional<double> exact) {
  GameResult r;
  r.game = std::move(game);
  r.params = std::move(params);
  r.strategy = std::move(strategy);
  r.trials = opts.trials;
  r.successes = summary.successes;
  r.estimate = opts.trials == 0 ? 0.0 : static_cast<double>(summary.successes) / static_cast<double>(opts.trials);
  r.exact = exact;
  r.seed = opts.seed;
  return r;
}

gf2::BitVector random_vector(std::size_t n, Rng& rng) { return gf2::BitVector::random(n, rng); }

void unknown_strategy(const std::string& game, const std::string& name) {
  throw std::invalid_argument("unknown strategy '" + name + "' for game " + game);
}

}  // namespace detail

}  // namespace cosetlab::games
