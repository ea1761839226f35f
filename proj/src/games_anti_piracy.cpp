#include <cmath>

#include "games_internal.hpp"

namespace cosetlab::games {

namespace {

class KeyDecryptor : public Decryptor {
 public:
  explicit KeyDecryptor(sde::QuantumDecKey key) : key_(std::move(key)) {}
  std::optional<gf2::BitVector> decrypt(const sde::Ciphertext& ct, Rng& rng) override {
    return sde::decrypt(key_, ct, rng).message;
  }

 private:
  sde::QuantumDecKey key_;
};

// Picks uniformly among the candidates, or a uniform message when there are none.
class GuessDecryptor : public Decryptor {
 public:
  GuessDecryptor(std::size_t m_len, std::vector<gf2::BitVector> candidates)
      : m_len_(m_len), candidates_(std::move(candidates)) {}
  std::optional<gf2::BitVector> decrypt(const sde::Ciphertext&, Rng& rng) override {
    if (candidates_.empty()) return detail::random_vector(m_len_, rng);
    return candidates_[rng.below(candidates_.size())];
  }

 private:
  std::size_t m_len_;
  std::vector<gf2::BitVector> candidates_;
};

class KeyProgram : public CpProgram {
 public:
  explicit KeyProgram(cprf::CpKey key) : key_(std::move(key)) {}
  gf2::BitVector evaluate(const gf2::BitVector& x, Rng& rng) override {
    auto y = cprf::cp_eval(key_, x, rng).y;
    return y ? *y : gf2::BitVector(0);
  }
  int distinguish(const gf2::BitVector& x, const gf2::BitVector& y, Rng& rng) override {
    return evaluate(x, rng) == y ? 0 : 1;
  }

 private:
  cprf::CpKey key_;
};

class GuessProgram : public CpProgram {
 public:
  explicit GuessProgram(std::size_t m_len) : m_len_(m_len) {}
  gf2::BitVector evaluate(const gf2::BitVector&, Rng& rng) override { return detail::random_vector(m_len_, rng); }
  int distinguish(const gf2::BitVector&, const gf2::BitVector&, Rng& rng) override { return rng.coin() ? 1 : 0; }

 private:
  std::size_t m_len_;
};

class SecretProgram : public CpProgram {
 public:
  explicit SecretProgram(const cprf::ChallengerView& view) : view_(view) {}
  gf2::BitVector evaluate(const gf2::BitVector& x, Rng&) override {
    return prf::extracting_prf_eval(view_.k1, x);
  }
  int distinguish(const gf2::BitVector& x, const gf2::BitVector& y, Rng& rng) override {
    return evaluate(x, rng) == y ? 0 : 1;
  }

 private:
  const cprf::ChallengerView& view_;
};

gf2::BitVector message(std::size_t m_len, std::uint64_t value) { return gf2::BitVector::from_uint(m_len, value); }

// Candidate pair used by pirates in the CPA-style game.
std::vector<gf2::BitVector> default_pair(std::size_t m_len) { return {message(m_len, 0), message(m_len, 1)}; }

meas::Vector kron(const meas::Vector& a, const meas::Vector& b) {
  meas::Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

meas::Vector zero_state(std::size_t n) { return meas::to_eigen(qsim::StateVector(n)); }

double pow2(double e) { return std::pow(2.0, e); }

std::vector<SdePirate> build_sde() {
  std::vector<SdePirate> out;
  out.push_back(SdePirate{
      "honest-to-one-side", false,
      [](const sde::SdePublicKey&, sde::QuantumDecKey key, const SdePirateContext& ctx, Rng&) {
        auto pair = default_pair(ctx.m_len);
        SdePirateOutput o;
        o.first = std::make_unique<KeyDecryptor>(std::move(key));
        o.second = std::make_unique<GuessDecryptor>(
            ctx.m_len, ctx.kind == AntiPiracyKind::kCpa ? pair : std::vector<gf2::BitVector>{});
        o.m0 = pair[0];
        o.m1 = pair[1];
        return o;
      },
      [](const sde::SdePublicKey& pk, sde::QuantumDecKey key, const SdePirateContext& ctx, Rng&) {
        auto pair = default_pair(ctx.m_len);
        meas::Vector joint = kron(meas::to_eigen(key.registers().at(0)), zero_state(pk.n));
        return TiPirateOutput{std::move(joint), meas::honest_decryptor(pk.n),
                              meas::guessing_decryptor(pk.n, pair[0]), pair[0], pair[1]};
      },
      [](AntiPiracyKind kind, const SdeInstance& inst) -> std::optional<double> {
        switch (kind) {
          case AntiPiracyKind::kCpa: return 0.5;
          case AntiPiracyKind::kRandom: return pow2(-static_cast<double>(inst.m_len));
          case AntiPiracyKind::kStrongTi: return 0.0;
          default: return std::nullopt;
        }
      }});
  out.push_back(SdePirate{
      "guess-both", false,
      [](const sde::SdePublicKey&, sde::QuantumDecKey, const SdePirateContext& ctx, Rng&) {
        auto pair = default_pair(ctx.m_len);
        auto cands = ctx.kind == AntiPiracyKind::kCpa ? pair : std::vector<gf2::BitVector>{};
        SdePirateOutput o;
        o.first = std::make_unique<GuessDecryptor>(ctx.m_len, cands);
        o.second = std::make_unique<GuessDecryptor>(ctx.m_len, cands);
        o.m0 = pair[0];
        o.m1 = pair[1];
        return o;
      },
      [](const sde::SdePublicKey& pk, sde::QuantumDecKey, const SdePirateContext& ctx, Rng&) {
        auto pair = default_pair(ctx.m_len);
        meas::Vector joint = kron(zero_state(pk.n), zero_state(pk.n));
        return TiPirateOutput{std::move(joint), meas::guessing_decryptor(pk.n, pair[0]),
                              meas::guessing_decryptor(pk.n, pair[1]), pair[0], pair[1]};
      },
      [](AntiPiracyKind kind, const SdeInstance& inst) -> std::optional<double> {
        switch (kind) {
          case AntiPiracyKind::kCpa: return 0.25;
          case AntiPiracyKind::kRandom: return pow2(-2.0 * static_cast<double>(inst.m_len));
          case AntiPiracyKind::kStrongTi: return 0.0;
          default: return std::nullopt;
        }
      }});
  out.push_back(SdePirate{
      "peek-secret", true,
      [](const sde::SdePublicKey&, sde::QuantumDecKey key, const SdePirateContext& ctx, Rng&) {
        auto pair = default_pair(ctx.m_len);
        SdePirateOutput o;
        o.first = std::make_unique<KeyDecryptor>(std::move(key));
        o.second = std::make_unique<KeyDecryptor>(sde::qkeygen(ctx.secret.peek()));
        o.m0 = pair[0];
        o.m1 = pair[1];
        return o;
      },
      [](const sde::SdePublicKey& pk, sde::QuantumDecKey key, const SdePirateContext& ctx, Rng&) {
        auto pair = default_pair(ctx.m_len);
        sde::QuantumDecKey copy = sde::qkeygen(ctx.secret.peek());
        meas::Vector joint = kron(meas::to_eigen(key.registers().at(0)), meas::to_eigen(copy.registers().at(0)));
        return TiPirateOutput{std::move(joint), meas::honest_decryptor(pk.n), meas::honest_decryptor(pk.n),
                              pair[0], pair[1]};
      },
      [](AntiPiracyKind kind, const SdeInstance&) -> std::optional<double> {
        return kind == AntiPiracyKind::kStrongTi || kind == AntiPiracyKind::kCpa || kind == AntiPiracyKind::kRandom
                   ? std::optional<double>(1.0)
                   : std::nullopt;
      }});
  return out;
}

std::vector<CpPirate> build_cp() {
  std::vector<CpPirate> out;
  out.push_back(CpPirate{
      "honest-to-one-side", false,
      [](cprf::CpKey key, const SecretChannel<cprf::ChallengerView>&, Rng&) {
        const std::size_t m_len = key.params().m_len;
        CpPirateOutput o;
        o.first = std::make_unique<KeyProgram>(std::move(key));
        o.second = std::make_unique<GuessProgram>(m_len);
        return o;
      },
      [](AntiPiracyKind kind, const cprf::CpParams& p) -> std::optional<double> {
        const double m = static_cast<double>(p.m_len);
        if (kind == AntiPiracyKind::kIndCprf) return 0.5 * (1.0 - pow2(-m - 1.0));
        if (kind == AntiPiracyKind::kCopyProtection) return pow2(-m);
        return std::nullopt;
      }});
  out.push_back(CpPirate{
      "guess-both", false,
      [](cprf::CpKey key, const SecretChannel<cprf::ChallengerView>&, Rng&) {
        const std::size_t m_len = key.params().m_len;
        CpPirateOutput o;
        o.first = std::make_unique<GuessProgram>(m_len);
        o.second = std::make_unique<GuessProgram>(m_len);
        return o;
      },
      [](AntiPiracyKind kind, const cprf::CpParams& p) -> std::optional<double> {
        if (kind == AntiPiracyKind::kIndCprf) return 0.25;
        if (kind == AntiPiracyKind::kCopyProtection) return pow2(-2.0 * static_cast<double>(p.m_len));
        return std::nullopt;
      }});
  out.push_back(CpPirate{
      "peek-secret", true,
      [](cprf::CpKey, const SecretChannel<cprf::ChallengerView>& secret, Rng&) {
        CpPirateOutput o;
        o.first = std::make_unique<SecretProgram>(secret.peek());
        o.second = std::make_unique<SecretProgram>(secret.peek());
        return o;
      },
      [](AntiPiracyKind kind, const cprf::CpParams& p) -> std::optional<double> {
        // A random challenge equal to F1(x) still reads as b = 0.
        if (kind == AntiPiracyKind::kIndCprf) {
          const double side = 1.0 - pow2(-static_cast<double>(p.m_len) - 1.0);
          return side * side;
        }
        return 1.0;
      }});
  return out;
}

bool is_sde_kind(AntiPiracyKind kind) {
  return kind == AntiPiracyKind::kCpa || kind == AntiPiracyKind::kRandom || kind == AntiPiracyKind::kStrongTi;
}

std::string game_id(AntiPiracyKind kind) { return "anti-piracy-" + std::string(to_string(kind)); }

}  // namespace

std::string_view to_string(AntiPiracyKind kind) {
  switch (kind) {
    case AntiPiracyKind::kCpa: return "cpa";
    case AntiPiracyKind::kRandom: return "random";
    case AntiPiracyKind::kStrongTi: return "strong-ti";
    case AntiPiracyKind::kIndCprf: return "ind-cprf";
    case AntiPiracyKind::kCopyProtection: return "copy-protection";
  }
  return "unknown";
}

AntiPiracyKind parse_anti_piracy_kind(std::string_view name) {
  for (auto k : {AntiPiracyKind::kCpa, AntiPiracyKind::kRandom, AntiPiracyKind::kStrongTi,
                 AntiPiracyKind::kIndCprf, AntiPiracyKind::kCopyProtection}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown anti-piracy kind '" + std::string(name) + "'");
}

const std::vector<SdePirate>& sde_pirates() {
  static const std::vector<SdePirate> pirates = build_sde();
  return pirates;
}

const std::vector<CpPirate>& cp_pirates() {
  static const std::vector<CpPirate> pirates = build_cp();
  return pirates;
}

GameResult run_anti_piracy(AntiPiracyKind kind, const SdeInstance& inst, const SdePirate& pirate,
                           const GameOptions& opts) {
  if (!is_sde_kind(kind)) throw std::invalid_argument("run_anti_piracy: kind needs a copy-protected PRF instance");
  if (inst.m_len == 0 || inst.m_len > 64) throw std::invalid_argument("run_anti_piracy: m_len must be in 1..64");
  if (kind == AntiPiracyKind::kStrongTi) {
    if (inst.kappa != 1 || inst.n > meas::kMaxMixtureQubits) {
      throw std::invalid_argument("run_anti_piracy: strong-ti needs kappa = 1 and n <= 8");
    }
    if (inst.gamma <= 0.0 || inst.gamma > 0.5) throw std::invalid_argument("run_anti_piracy: gamma must be in (0, 1/2]");
  }
  const bool open = detail::secrets_open(pirate.sanity, pirate.name, opts);
  TrialSummary sum = run_trials(opts.trials, opts.seed, opts.jobs, [&](std::uint64_t, Rng& rng) {
    sde::SdeKeys keys = sde::setup(inst.n, inst.kappa, rng);
    SdePirateContext ctx{kind, inst.m_len, SecretChannel<sde::SdeSecretKey>(&keys.sk, open)};
    TrialOutcome o;
    if (kind == AntiPiracyKind::kStrongTi) {
      TiPirateOutput ti = pirate.play_ti(keys.pk, sde::qkeygen(keys.sk), ctx, rng);
      if (ti.m0 == ti.m1) throw std::invalid_argument("run_anti_piracy: pirate messages must differ");
      meas::ProjectiveMixture mix1 = meas::decryptor_mixture(keys.pk, nullptr, ti.first, ti.m0, ti.m1);
      meas::ProjectiveMixture mix2 = meas::decryptor_mixture(keys.pk, nullptr, ti.second, ti.m0, ti.m1);
      auto both = meas::threshold_imp_apply_both(mix1, mix2, 0.5 + inst.gamma, ti.joint, rng);
      o.success = both.first && both.second;
      return o;
    }
    SdePirateOutput p = pirate.play(keys.pk, sde::qkeygen(keys.sk), ctx, rng);
    gf2::BitVector m1;
    gf2::BitVector m2;
    if (kind == AntiPiracyKind::kCpa) {
      if (p.m0 == p.m1 || p.m0.size() != inst.m_len || p.m1.size() != inst.m_len) {
        throw std::invalid_argument("run_anti_piracy: pirate must choose two distinct m_len-bit messages");
      }
      m1 = rng.coin() ? p.m1 : p.m0;
      m2 = rng.coin() ? p.m1 : p.m0;
    } else {
      m1 = detail::random_vector(inst.m_len, rng);
      m2 = detail::random_vector(inst.m_len, rng);
    }
    sde::Ciphertext ct1 = sde::encrypt(keys.pk, m1, rng);
    sde::Ciphertext ct2 = sde::encrypt(keys.pk, m2, rng);
    auto out1 = p.first->decrypt(ct1, rng);
    auto out2 = p.second->decrypt(ct2, rng);
    o.success = out1 && *out1 == m1 && out2 && *out2 == m2;
    return o;
  });
  Json params;
  params["n"] = inst.n;
  params["kappa"] = inst.kappa;
  params["m_len"] = inst.m_len;
  if (kind == AntiPiracyKind::kStrongTi) params["gamma"] = inst.gamma;
  return detail::make_result(game_id(kind), std::move(params), pirate.name, opts, sum,
                             pirate.exact ? pirate.exact(kind, inst) : std::nullopt);
}

GameResult run_anti_piracy(AntiPiracyKind kind, const cprf::CpParams& params, const CpPirate& pirate,
                           const GameOptions& opts) {
  if (is_sde_kind(kind)) throw std::invalid_argument("run_anti_piracy: kind needs a single-decryptor instance");
  params.validate();
  const bool open = detail::secrets_open(pirate.sanity, pirate.name, opts);
  const std::size_t n = params.n();
  TrialSummary sum = run_trials(opts.trials, opts.seed, opts.jobs, [&](std::uint64_t, Rng& rng) {
    prf::MaskedPrfKey k1 = cprf::cp_setup(params, rng);
    cprf::CpKeyBundle bundle = cprf::cp_qkeygen(k1, params, rng);
    SecretChannel<cprf::ChallengerView> secret(bundle.view.get(), open);
    CpPirateOutput p = pirate.play(std::move(bundle.key), secret, rng);
    gf2::BitVector u = detail::random_vector(n, rng);
    gf2::BitVector w = detail::random_vector(n, rng);
    TrialOutcome o;
    if (kind == AntiPiracyKind::kCopyProtection) {
      o.success = p.first->evaluate(u, rng) == prf::extracting_prf_eval(k1, u) &&
                  p.second->evaluate(w, rng) == prf::extracting_prf_eval(k1, w);
      return o;
    }
    const int b1 = rng.coin() ? 1 : 0;
    const int b2 = rng.coin() ? 1 : 0;
    gf2::BitVector y1 = detail::random_vector(params.m_len, rng);
    gf2::BitVector y2 = detail::random_vector(params.m_len, rng);
    const gf2::BitVector c1 = b1 == 0 ? prf::extracting_prf_eval(k1, u) : y1;
    const gf2::BitVector c2 = b2 == 0 ? prf::extracting_prf_eval(k1, w) : y2;
    o.success = p.first->distinguish(u, c1, rng) == b1 && p.second->distinguish(w, c2, rng) == b2;
    return o;
  });
  Json j;
  j["l0"] = params.l0;
  j["l1"] = params.l1;
  j["l2"] = params.l2;
  j["lambda"] = params.lambda;
  j["m_len"] = params.m_len;
  j["toy"] = params.toy;
  return detail::make_result(game_id(kind), std::move(j), pirate.name, opts, sum,
                             pirate.exact ? pirate.exact(kind, params) : std::nullopt);
}

GameResult run_anti_piracy(AntiPiracyKind kind, const SdeInstance& inst, const cprf::CpParams& params,
                           const std::string& strategy, const GameOptions& opts) {
  if (is_sde_kind(kind)) {
    for (const auto& p : sde_pirates()) {
      if (p.name == strategy) return run_anti_piracy(kind, inst, p, opts);
    }
  } else {
    for (const auto& p : cp_pirates()) {
      if (p.name == strategy) return run_anti_piracy(kind, params, p, opts);
    }
  }
  detail::unknown_strategy(game_id(kind), strategy);
}

}  // namespace cosetlab::games
