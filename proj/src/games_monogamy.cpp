#include <cmath>

#include "games_internal.hpp"

namespace cosetlab::games {

namespace {

double pow2(double e) { return std::pow(2.0, e); }

SplitOutput keep_all(qsim::StateVector state, std::size_t qubits_b) {
  SplitOutput out;
  out.joint = std::move(state);
  out.qubits_b = qubits_b;
  return out;
}

// Coset of A from the computational basis, then the coset of A^perp after H.
MonogamyAnswer recover_both(Party& p, Rng& rng) {
  const gf2::Subspace& a = p.subspace();
  gf2::BitVector s = p.measure_coset_label(a, rng);
  p.apply_hadamard();
  gf2::BitVector sp = p.measure_coset_label(gf2::complement(a), rng);
  return MonogamyAnswer{std::move(s), std::move(sp)};
}

MonogamyAnswer guess_pair(Party& p, Rng& rng) {
  const std::size_t n = p.subspace().ambient_dim();
  gf2::BitVector s = detail::random_vector(n, rng);
  gf2::BitVector sp = detail::random_vector(n, rng);
  return MonogamyAnswer{std::move(s), std::move(sp)};
}

MonogamyAnswer copied_vector(Party& p, Rng& rng) {
  gf2::BitVector w = detail::random_vector(p.subspace().ambient_dim(), rng);
  return MonogamyAnswer{p.notes().at(0), std::move(w)};
}

MonogamyAnswer from_notes(Party& p, Rng&) { return MonogamyAnswer{p.notes().at(0), p.notes().at(1)}; }

SplitOutput peek_split(qsim::StateVector state, const SplitContext& ctx, Rng&) {
  const sde::CosetRecord& rec = ctx.secret.peek();
  SplitOutput out = keep_all(std::move(state), 0);
  out.notes_b = {rec.s, rec.s_prime};
  out.notes_c = {rec.s, rec.s_prime};
  return out;
}

std::vector<MonogamyStrategy> build_monogamy() {
  std::vector<MonogamyStrategy> out;
  out.push_back(MonogamyStrategy{
      "forward-to-a1", false,
      [](qsim::StateVector st, const SplitContext& ctx, Rng&) { return keep_all(std::move(st), ctx.n); },
      recover_both, guess_pair,
      [](std::size_t n) -> std::optional<double> { return pow2(-static_cast<double>(n)); }});
  out.push_back(MonogamyStrategy{
      "half-split", false,
      [](qsim::StateVector st, const SplitContext& ctx, Rng&) { return keep_all(std::move(st), ctx.n / 2); },
      [](Party& p, Rng& rng) {
        const std::size_t n = p.subspace().ambient_dim();
        gf2::BitVector mine = p.measure(rng);
        gf2::BitVector s = gf2::BitVector::concat(mine, detail::random_vector(n - mine.size(), rng));
        return MonogamyAnswer{std::move(s), detail::random_vector(n, rng)};
      },
      [](Party& p, Rng& rng) {
        const std::size_t n = p.subspace().ambient_dim();
        gf2::BitVector mine = p.measure(rng);
        gf2::BitVector s = gf2::BitVector::concat(detail::random_vector(n - mine.size(), rng), mine);
        return MonogamyAnswer{std::move(s), detail::random_vector(n, rng)};
      },
      [](std::size_t) -> std::optional<double> { return std::nullopt; }});
  out.push_back(MonogamyStrategy{
      "measure-and-copy", false,
      [](qsim::StateVector st, const SplitContext&, Rng& rng) {
        gf2::BitVector v = qsim::measure_all(st, rng).outcome;
        SplitOutput o = keep_all(qsim::StateVector(0), 0);
        o.notes_b = {v};
        o.notes_c = {v};
        return o;
      },
      copied_vector, copied_vector,
      [](std::size_t n) -> std::optional<double> { return pow2(-static_cast<double>(n)); }});
  out.push_back(MonogamyStrategy{
      "guess-both", false,
      [](qsim::StateVector, const SplitContext&, Rng&) { return keep_all(qsim::StateVector(0), 0); },
      guess_pair, guess_pair,
      [](std::size_t n) -> std::optional<double> { return pow2(-2.0 * static_cast<double>(n)); }});
  out.push_back(MonogamyStrategy{"peek-secret", true, peek_split, from_notes, from_notes,
                                 [](std::size_t) -> std::optional<double> { return 1.0; }});
  return out;
}

gf2::BitVector measure_primal(Party& p, Rng& rng) { return p.measure(rng); }

gf2::BitVector measure_dual(Party& p, Rng& rng) {
  p.apply_hadamard();
  return p.measure(rng);
}

gf2::BitVector guess_vector(Party& p, Rng& rng) { return detail::random_vector(p.subspace().ambient_dim(), rng); }

std::vector<StrongMonogamyStrategy> build_strong() {
  std::vector<StrongMonogamyStrategy> out;
  auto half = [](std::size_t n) -> std::optional<double> { return pow2(-0.5 * static_cast<double>(n)); };
  out.push_back(StrongMonogamyStrategy{
      "measure-and-send", false,
      [](qsim::StateVector st, const SplitContext&, Rng& rng) {
        qsim::MeasurementRecord rec = qsim::measure_all(st, rng);
        SplitOutput o = keep_all(std::move(rec.post_state), 0);
        o.notes_b = {rec.outcome};
        return o;
      },
      [](Party& p, Rng&) { return p.notes().at(0); }, measure_dual, half});
  out.push_back(StrongMonogamyStrategy{
      "keep-state-at-a1", false,
      [](qsim::StateVector st, const SplitContext& ctx, Rng&) { return keep_all(std::move(st), ctx.n); },
      measure_primal, guess_vector, half});
  out.push_back(StrongMonogamyStrategy{
      "keep-state-at-a2", false,
      [](qsim::StateVector st, const SplitContext&, Rng&) { return keep_all(std::move(st), 0); }, guess_vector,
      measure_dual, half});
  out.push_back(StrongMonogamyStrategy{"peek-secret", true, peek_split,
                                       [](Party& p, Rng&) { return p.notes().at(0); },
                                       [](Party& p, Rng&) { return p.notes().at(1); },
                                       [](std::size_t) -> std::optional<double> { return 1.0; }});
  return out;
}

void check_n(std::size_t n) {
  if (n == 0 || n % 2 != 0 || n > qsim::kMaxQubits) {
    throw std::invalid_argument("monogamy: n must be even and within the memory guard");
  }
}

struct Round {
  sde::CosetRecord rec;
  gf2::Subspace dual;
  SplitOutput split;
};

// Challenger sampling and the split stage shared by both games.
Round play_split(std::size_t n, const SplitFn& split, bool comp, bool open, Rng& rng) {
  Round r;
  r.rec = sde::sample_coset_record(n, rng);
  r.dual = gf2::complement(r.rec.a);
  std::optional<toksig::TsPublicKey> programs;
  SplitContext ctx;
  ctx.n = n;
  ctx.secret = SecretChannel<sde::CosetRecord>(&r.rec, open);
  if (comp) {
    programs = toksig::make_public_key(toksig::TsSecretKey{r.rec.a, r.rec.s, r.rec.s_prime});
    ctx.c0 = &programs->c0;
    ctx.c1 = &programs->c1;
  }
  r.split = split(qsim::coset_state(r.rec.a, r.rec.s, r.rec.s_prime), ctx, rng);
  if (r.split.qubits_b > r.split.joint.num_qubits()) {
    throw std::invalid_argument("monogamy: split gives A1 more qubits than exist");
  }
  return r;
}

Json game_params(std::size_t n, bool comp) {
  Json p;
  p["n"] = n;
  p["comp"] = comp;
  return p;
}

bool in_primal(const Round& r, const gf2::BitVector& v) {
  return v.size() == r.rec.s.size() && gf2::coset_contains(r.rec.a, r.rec.s, v);
}

bool in_dual(const Round& r, const gf2::BitVector& w) {
  return w.size() == r.rec.s.size() && gf2::coset_contains(r.dual, r.rec.s_prime, w);
}

}  // namespace

const std::vector<MonogamyStrategy>& monogamy_strategies() {
  static const std::vector<MonogamyStrategy> strategies = build_monogamy();
  return strategies;
}

const std::vector<StrongMonogamyStrategy>& strong_monogamy_strategies() {
  static const std::vector<StrongMonogamyStrategy> strategies = build_strong();
  return strategies;
}

GameResult run_monogamy(std::size_t n, const MonogamyStrategy& strategy, const GameOptions& opts, bool comp) {
  check_n(n);
  const bool open = detail::secrets_open(strategy.sanity, strategy.name, opts);
  TrialSummary sum = run_trials(opts.trials, opts.seed, opts.jobs, [&](std::uint64_t, Rng& rng) {
    Round r = play_split(n, strategy.split, comp, open, rng);
    const std::size_t total = r.split.joint.num_qubits();
    Party p1(&r.split.joint, 0, r.split.qubits_b, &r.split.notes_b, &r.rec.a);
    Party p2(&r.split.joint, r.split.qubits_b, total - r.split.qubits_b, &r.split.notes_c, &r.rec.a);
    MonogamyAnswer a1 = strategy.answer1(p1, rng);
    MonogamyAnswer a2 = strategy.answer2(p2, rng);
    TrialOutcome o;
    o.success = in_primal(r, a1.s) && in_dual(r, a1.s_prime) && in_primal(r, a2.s) && in_dual(r, a2.s_prime);
    return o;
  });
  return detail::make_result("monogamy", game_params(n, comp), strategy.name, opts, sum,
                             strategy.exact ? strategy.exact(n) : std::nullopt);
}

GameResult run_monogamy(std::size_t n, const std::string& strategy, const GameOptions& opts, bool comp) {
  for (const auto& s : monogamy_strategies()) {
    if (s.name == strategy) return run_monogamy(n, s, opts, comp);
  }
  detail::unknown_strategy("monogamy", strategy);
}

GameResult run_strong_monogamy(std::size_t n, const StrongMonogamyStrategy& strategy, const GameOptions& opts,
                               bool comp) {
  check_n(n);
  const bool open = detail::secrets_open(strategy.sanity, strategy.name, opts);
  TrialSummary sum = run_trials(opts.trials, opts.seed, opts.jobs, [&](std::uint64_t, Rng& rng) {
    Round r = play_split(n, strategy.split, comp, open, rng);
    const std::size_t total = r.split.joint.num_qubits();
    Party p1(&r.split.joint, 0, r.split.qubits_b, &r.split.notes_b, &r.rec.a);
    Party p2(&r.split.joint, r.split.qubits_b, total - r.split.qubits_b, &r.split.notes_c, &r.rec.a);
    gf2::BitVector s1 = strategy.answer1(p1, rng);
    gf2::BitVector s2 = strategy.answer2(p2, rng);
    TrialOutcome o;
    o.success = in_primal(r, s1) && in_dual(r, s2);
    return o;
  });
  return detail::make_result("strong-monogamy", game_params(n, comp), strategy.name, opts, sum,
                             strategy.exact ? strategy.exact(n) : std::nullopt);
}

GameResult run_strong_monogamy(std::size_t n, const std::string& strategy, const GameOptions& opts,
                               bool comp) {
  for (const auto& s : strong_monogamy_strategies()) {
    if (s.name == strategy) return run_strong_monogamy(n, s, opts, comp);
  }
  detail::unknown_strategy("strong-monogamy", strategy);
}

}  // namespace cosetlab::games
