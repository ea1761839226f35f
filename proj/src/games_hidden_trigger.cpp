#include "games_internal.hpp"

namespace cosetlab::games {

namespace {

std::vector<HiddenTriggerStrategy> build() {
  std::vector<HiddenTriggerStrategy> out;
  out.push_back(HiddenTriggerStrategy{
      "coin-flip", false,
      [](cprf::CpKey&, const gf2::BitVector&, const gf2::BitVector&, const SecretChannel<cprf::ChallengerView>&,
         Rng& rng) { return rng.coin() ? 1 : 0; },
      [](const cprf::CpParams&) -> std::optional<double> { return 0.5; }});
  out.push_back(HiddenTriggerStrategy{
      "evaluate-and-compare", false,
      [](cprf::CpKey& key, const gf2::BitVector& u, const gf2::BitVector& w,
         const SecretChannel<cprf::ChallengerView>&, Rng& rng) {
        auto yu = cprf::cp_eval(key, u, rng).y;
        auto yw = cprf::cp_eval(key, w, rng).y;
        if (!yu || !yw) return 1;
        return (yu->get(0) != yw->get(0)) ? 1 : 0;
      },
      [](const cprf::CpParams&) -> std::optional<double> { return 0.5; }});
  out.push_back(HiddenTriggerStrategy{
      "peek-keys", true,
      [](cprf::CpKey&, const gf2::BitVector& u, const gf2::BitVector&,
         const SecretChannel<cprf::ChallengerView>& secret, Rng&) {
        const cprf::ChallengerView& v = secret.peek();
        return cprf::is_trigger(u, v.k2, v.k3, v.params) ? 1 : 0;
      },
      [](const cprf::CpParams&) -> std::optional<double> { return std::nullopt; }});
  return out;
}

}  // namespace

const std::vector<HiddenTriggerStrategy>& hidden_trigger_strategies() {
  static const std::vector<HiddenTriggerStrategy> strategies = build();
  return strategies;
}

GameResult run_hidden_trigger_game(const cprf::CpParams& params, const HiddenTriggerStrategy& strategy,
                                   const GameOptions& opts) {
  params.validate();
  const bool open = detail::secrets_open(strategy.sanity, strategy.name, opts);
  const std::size_t n = params.n();
  TrialSummary sum = run_trials(opts.trials, opts.seed, opts.jobs, [&](std::uint64_t, Rng& rng) {
    prf::MaskedPrfKey k1 = cprf::cp_setup(params, rng);
    cprf::CpKeyBundle bundle = cprf::cp_qkeygen(k1, params, rng);
    const cprf::ChallengerView& view = *bundle.view;
    auto trigger_for = [&](const gf2::BitVector& x) {
      return cprf::gen_trigger(x.slice(0, params.l0), prf::extracting_prf_eval(k1, x), view.k2, view.k3,
                               view.cosets, params)
          .full();
    };
    gf2::BitVector u = detail::random_vector(n, rng);
    gf2::BitVector w = detail::random_vector(n, rng);
    const int b = rng.coin() ? 1 : 0;
    if (b == 1) {
      u = trigger_for(u);
      w = trigger_for(w);
    }
    SecretChannel<cprf::ChallengerView> secret(&view, open);
    TrialOutcome o;
    o.success = strategy.guess(bundle.key, u, w, secret, rng) == b;
    return o;
  });
  Json j;
  j["l0"] = params.l0;
  j["l1"] = params.l1;
  j["l2"] = params.l2;
  j["lambda"] = params.lambda;
  j["m_len"] = params.m_len;
  j["toy"] = params.toy;
  return detail::make_result("hidden-trigger", std::move(j), strategy.name, opts, sum,
                             strategy.exact ? strategy.exact(params) : std::nullopt);
}

GameResult run_hidden_trigger_game(const cprf::CpParams& params, const std::string& strategy,
                                   const GameOptions& opts) {
  for (const auto& s : hidden_trigger_strategies()) {
    if (s.name == strategy) return run_hidden_trigger_game(params, s, opts);
  }
  detail::unknown_strategy("hidden-trigger", strategy);
}

}  // namespace cosetlab::games
