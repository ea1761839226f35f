#include <cmath>

#include "games_internal.hpp"

namespace cosetlab::games {

namespace {

constexpr std::size_t kSearchBudget = 8;

bool ask_primal(DirectProductView& view, const gf2::BitVector& v) {
  return view.primal != nullptr ? view.primal->query(v) : view.c0->accepts(v);
}

bool ask_dual(DirectProductView& view, const gf2::BitVector& w) {
  return view.dual != nullptr ? view.dual->query(w) : view.c1->accepts(w);
}

double half_power(std::size_t n) { return std::pow(2.0, -0.5 * static_cast<double>(n)); }

std::vector<DirectProductStrategy> build() {
  std::vector<DirectProductStrategy> out;
  out.push_back(DirectProductStrategy{
      "measure-both-bases", false,
      [](DirectProductView& view, Rng& rng) {
        qsim::MeasurementRecord first = qsim::measure_all(view.state, rng);
        // The residue is a basis state; its Hadamard transform is uniform.
        qsim::StateVector residue = qsim::hadamard_all(std::move(first.post_state));
        qsim::MeasurementRecord second = qsim::measure_all(residue, rng);
        return std::make_pair(first.outcome, second.outcome);
      },
      [](std::size_t n) -> std::optional<double> { return half_power(n); }});
  out.push_back(DirectProductStrategy{
      "zero-query-guess", false,
      [](DirectProductView& view, Rng& rng) {
        gf2::BitVector v = detail::random_vector(view.n, rng);
        gf2::BitVector w = detail::random_vector(view.n, rng);
        return std::make_pair(v, w);
      },
      [](std::size_t n) -> std::optional<double> { return std::pow(2.0, -static_cast<double>(n)); }});
  out.push_back(DirectProductStrategy{
      "query-search", false,
      [](DirectProductView& view, Rng& rng) {
        gf2::BitVector v = qsim::measure_all(view.state, rng).outcome;
        ask_primal(view, v);
        gf2::BitVector w = detail::random_vector(view.n, rng);
        for (std::size_t q = 0; q < kSearchBudget; ++q) {
          w = detail::random_vector(view.n, rng);
          if (ask_dual(view, w)) break;
        }
        return std::make_pair(v, w);
      },
      [](std::size_t n) -> std::optional<double> {
        return 1.0 - std::pow(1.0 - half_power(n), static_cast<double>(kSearchBudget));
      }});
  out.push_back(DirectProductStrategy{
      "peek-secret", true,
      [](DirectProductView& view, Rng&) {
        const sde::CosetRecord& rec = view.secret.peek();
        return std::make_pair(rec.s, rec.s_prime);
      },
      [](std::size_t) -> std::optional<double> { return 1.0; }});
  return out;
}

}  // namespace

const std::vector<DirectProductStrategy>& direct_product_strategies() {
  static const std::vector<DirectProductStrategy> strategies = build();
  return strategies;
}

GameResult run_direct_product(std::size_t n, const DirectProductStrategy& strategy, OracleMode mode,
                              const GameOptions& opts) {
  if (n == 0 || n % 2 != 0 || n > qsim::kMaxQubits) {
    throw std::invalid_argument("direct product: n must be even and within the memory guard");
  }
  const bool open = detail::secrets_open(strategy.sanity, strategy.name, opts);
  const bool it = mode == OracleMode::kInformationTheoretic;
  TrialSummary sum = run_trials(opts.trials, opts.seed, opts.jobs, [&](std::uint64_t, Rng& rng) {
    sde::CosetRecord rec = sde::sample_coset_record(n, rng);
    const gf2::Subspace dual = gf2::complement(rec.a);
    DirectProductView view;
    view.n = n;
    view.state = qsim::coset_state(rec.a, rec.s, rec.s_prime);
    view.secret = SecretChannel<sde::CosetRecord>(&rec, open);
    std::optional<CountingOracle> primal;
    std::optional<CountingOracle> dual_oracle;
    std::optional<toksig::TsPublicKey> programs;
    if (it) {
      primal.emplace(obf::membership_program(rec.a, rec.s));
      dual_oracle.emplace(obf::membership_program(dual, rec.s_prime));
      view.primal = &*primal;
      view.dual = &*dual_oracle;
    } else {
      programs = toksig::make_public_key(toksig::TsSecretKey{rec.a, rec.s, rec.s_prime});
      view.c0 = &programs->c0;
      view.c1 = &programs->c1;
    }
    auto [v, w] = strategy.play(view, rng);
    TrialOutcome o;
    o.success = v.size() == n && w.size() == n && gf2::coset_contains(rec.a, rec.s, v) &&
                gf2::coset_contains(dual, rec.s_prime, w);
    if (it) o.queries = primal->count() + dual_oracle->count();
    return o;
  });
  Json params;
  params["n"] = n;
  params["mode"] = it ? "it" : "comp";
  if (strategy.name == "query-search") params["budget"] = kSearchBudget;
  GameResult r = detail::make_result("direct-product", std::move(params), strategy.name, opts, sum,
                                     strategy.exact ? strategy.exact(n) : std::nullopt);
  if (it) r.queries = sum.queries;
  return r;
}

GameResult run_direct_product(std::size_t n, const std::string& strategy, OracleMode mode,
                              const GameOptions& opts) {
  for (const auto& s : direct_product_strategies()) {
    if (s.name == strategy) return run_direct_product(n, s, mode, opts);
  }
  detail::unknown_strategy("direct-product", strategy);
}

GameResult run_revoke_after_sign(std::size_t n, const GameOptions& opts) {
  TrialSummary sum = run_trials(opts.trials, opts.seed, opts.jobs, [&](std::uint64_t, Rng& rng) {
    toksig::KeyPair kp = toksig::keygen(n, rng);
    toksig::Token token = toksig::token_gen(kp.sk);
    toksig::Signature sig = toksig::sign(0, token, rng);
    TrialOutcome o;
    o.success = toksig::verify(kp.pk, sig) && toksig::revoke(kp.pk, token, rng).accepted;
    return o;
  });
  Json params;
  params["n"] = n;
  return detail::make_result("revoke-after-sign", std::move(params), "sign-then-revoke", opts, sum,
                             std::pow(2.0, -0.5 * static_cast<double>(n)));
}

}  // namespace cosetlab::games
