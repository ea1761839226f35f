#include "cosetlab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cosetlab/cprf.hpp"
#include "cosetlab/games.hpp"
#include "cosetlab/gf2.hpp"
#include "cosetlab/glx.hpp"
#include "cosetlab/prf.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/sde.hpp"
#include "cosetlab/toksig.hpp"

namespace cosetlab::cli {

namespace {

using games::Json;
using games::round12;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vars {
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string json_path;
  unsigned jobs = 1;

  std::size_t n = 8;
  std::size_t d = 0;
  std::string rows;
  std::string s;
  std::string csv_path;

  std::string key_path;
  std::string out_path;
  int m_bit = 0;
  std::string sig;
  int sign_first = -1;

  std::size_t in_len = 8;
  std::size_t out_len = 8;
  std::string x;
  std::string set;

  std::size_t kappa = 1;
  std::string message;
  std::string form = "io";
  std::size_t count = 1;

  std::size_t l0 = 2, l1 = 16, l2 = 10, lambda = 4, m_len = 2;
  bool toy = true;
  std::string x0;
  std::string y;
  std::size_t cl0 = 0, cl1 = 0, cl2 = 0, clambda = 0, cm = 0;

  std::string game;
  std::string strategy;
  std::uint64_t trials = 1000;
  std::string mode = "it";
  bool comp = false;
  double gamma = 0.1;
  bool allow_sanity = false;

  std::uint64_t samples = 100000;
  double flip_fraction = 0.125;
  std::uint64_t reps = 1000;
};

gf2::BitVector parse_bits(const std::string& text, const char* what) {
  try {
    return gf2::BitVector::from_string(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string(what) + " must be a 0/1 string");
  }
}

std::vector<gf2::BitVector> parse_list(const std::string& text, const char* what) {
  std::vector<gf2::BitVector> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_bits(item, what));
  }
  return out;
}

Json bits_list(const std::vector<gf2::BitVector>& v) {
  Json j = Json::array();
  for (const auto& b : v) j.push_back(b.to_string());
  return j;
}

gf2::Subspace subspace_from(std::size_t n, const std::vector<gf2::BitVector>& rows) {
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("every row must have n bits");
  }
  return gf2::Subspace::span(n, rows);
}

void check_even(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("--n must be a positive even number");
}

// ---------------------------------------------------------------------------
// gf2 and qsim

Json gf2_rref(const Vars& v) {
  auto rows = parse_list(v.rows, "--rows");
  const std::size_t n = rows.empty() ? v.n : rows.front().size();
  gf2::Subspace a = subspace_from(n, rows);
  Json j;
  j["n"] = n;
  j["dim"] = a.dim();
  j["basis"] = bits_list(a.basis());
  j["pivots"] = a.pivots();
  return j;
}

Json gf2_canon(const Vars& v) {
  gf2::BitVector s = parse_bits(v.s, "--s");
  gf2::Subspace a = subspace_from(s.size(), parse_list(v.rows, "--rows"));
  Json j;
  j["n"] = s.size();
  j["dim"] = a.dim();
  j["canonical"] = gf2::canonical_rep(a, s).to_string();
  return j;
}

Json gf2_complement(const Vars& v) {
  auto rows = parse_list(v.rows, "--rows");
  const std::size_t n = rows.empty() ? v.n : rows.front().size();
  gf2::Subspace dual = gf2::complement(subspace_from(n, rows));
  Json j;
  j["n"] = n;
  j["dim"] = dual.dim();
  j["basis"] = bits_list(dual.basis());
  return j;
}

Json gf2_sample(const Vars& v) {
  if (v.d > v.n) throw std::invalid_argument("--d must not exceed --n");
  gf2::Subspace a = gf2::sample_subspace(v.n, v.d, v.seed);
  Json j;
  j["n"] = v.n;
  j["dim"] = a.dim();
  j["basis"] = bits_list(a.basis());
  return j;
}

void write_state_csv(const std::string& path, const qsim::StateVector& st) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path);
  qsim::write_csv(f, st);
  if (!f) throw IoError("failed writing " + path);
}

Json qsim_coset(const Vars& v) {
  check_even(v.n);
  Rng rng(v.seed);
  sde::CosetRecord rec = sde::sample_coset_record(v.n, rng);
  qsim::StateVector st = qsim::coset_state(rec.a, rec.s, rec.s_prime);
  qsim::StateVector dual = qsim::coset_state(gf2::complement(rec.a), rec.s_prime, rec.s);
  if (!v.csv_path.empty()) write_state_csv(v.csv_path, st);
  Json j;
  j["n"] = v.n;
  j["basis"] = bits_list(rec.a.basis());
  j["s"] = gf2::canonical_rep(rec.a, rec.s).to_string();
  j["s_prime"] = gf2::canonical_rep(gf2::complement(rec.a), rec.s_prime).to_string();
  j["support"] = st.support().size();
  j["norm"] = round12(st.norm());
  j["duality_fidelity"] = round12(qsim::fidelity(qsim::hadamard_all(st), dual));
  return j;
}

Json qsim_measure(const Vars& v) {
  check_even(v.n);
  Rng rng(v.seed);
  sde::CosetRecord rec = sde::sample_coset_record(v.n, rng);
  qsim::StateVector st = qsim::coset_state(rec.a, rec.s, rec.s_prime);
  qsim::MeasurementRecord m = qsim::measure_all(st, rng);
  Json j;
  j["n"] = v.n;
  j["outcome"] = m.outcome.to_string();
  j["probability"] = round12(m.probability);
  j["in_coset"] = gf2::coset_contains(rec.a, rec.s, m.outcome);
  return j;
}

// ---------------------------------------------------------------------------
// toksig

Json key_to_json(const toksig::TsSecretKey& sk) {
  Json j;
  j["n"] = sk.n();
  j["a"] = bits_list(sk.a.basis());
  j["s"] = sk.s.to_string();
  j["s_prime"] = sk.s_prime.to_string();
  return j;
}

toksig::TsSecretKey load_key(const Vars& v) {
  if (v.key_path.empty()) {
    check_even(v.n);
    return toksig::keygen(v.n, derive_seed(v.seed, 0)).sk;
  }
  std::ifstream f(v.key_path);
  if (!f) throw IoError("cannot open " + v.key_path);
  Json j;
  try {
    j = Json::parse(f);
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<gf2::BitVector> rows;
    for (const auto& r : j.at("a")) rows.push_back(parse_bits(r.get<std::string>(), "key row"));
    toksig::TsSecretKey sk{subspace_from(n, rows), parse_bits(j.at("s").get<std::string>(), "key s"),
                           parse_bits(j.at("s_prime").get<std::string>(), "key s_prime")};
    if (sk.s.size() != n || sk.s_prime.size() != n || sk.a.dim() != n / 2) {
      throw std::invalid_argument("key file is inconsistent");
    }
    return sk;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed key file: ") + e.what());
  }
}

Json toksig_keygen(const Vars& v) {
  check_even(v.n);
  toksig::KeyPair kp = toksig::keygen(v.n, derive_seed(v.seed, 0));
  Json j;
  j["n"] = v.n;
  j["public_program_size"] = kp.pk.c0.padded_size();
  if (!v.out_path.empty()) {
    std::ofstream f(v.out_path);
    if (!f) throw IoError("cannot open " + v.out_path);
    f << key_to_json(kp.sk).dump(2) << '\n';
    if (!f) throw IoError("failed writing " + v.out_path);
    j["key_file"] = v.out_path;
  } else {
    j["secret_key"] = key_to_json(kp.sk);
  }
  return j;
}

Json toksig_sign(const Vars& v) {
  toksig::TsSecretKey sk = load_key(v);
  toksig::Token token = toksig::token_gen(sk);
  toksig::Signature sig = toksig::sign(v.m_bit, token, derive_seed(v.seed, 1));
  Json j;
  j["n"] = sk.n();
  j["m"] = sig.m;
  j["sig"] = sig.sig.to_string();
  return j;
}

Json toksig_verify(const Vars& v) {
  toksig::TsSecretKey sk = load_key(v);
  toksig::TsPublicKey pk = toksig::make_public_key(sk);
  Json j;
  j["n"] = sk.n();
  j["m"] = v.m_bit;
  j["sig"] = v.sig;
  j["accepted"] = toksig::verify(pk, toksig::Signature{v.m_bit, parse_bits(v.sig, "--sig")});
  return j;
}

Json toksig_revoke(const Vars& v) {
  toksig::TsSecretKey sk = load_key(v);
  toksig::TsPublicKey pk = toksig::make_public_key(sk);
  toksig::Token token = toksig::token_gen(sk);
  Rng rng(derive_seed(v.seed, 2));
  if (v.sign_first >= 0) toksig::sign(v.sign_first, token, rng);
  toksig::RevokeResult r = toksig::revoke(pk, token, rng);
  Json j;
  j["n"] = sk.n();
  j["signed_first"] = v.sign_first >= 0 ? Json(v.sign_first) : Json(nullptr);
  j["accepted"] = r.accepted;
  j["probability"] = round12(r.probability);
  j["fidelity_to_fresh"] = round12(qsim::fidelity(token.state(), toksig::token_gen(sk).state()));
  return j;
}

// ---------------------------------------------------------------------------
// prf

prf::GgmKey cli_ggm_key(const Vars& v) {
  Rng rng(derive_seed(v.seed, 0));
  return prf::ggm_keygen(v.in_len, v.out_len, rng);
}

gf2::BitVector input_or_random(const std::string& text, std::size_t len, std::uint64_t seed, const char* what) {
  if (text.empty()) {
    Rng rng(derive_seed(seed, 3));
    return gf2::BitVector::random(len, rng);
  }
  gf2::BitVector x = parse_bits(text, what);
  if (x.size() != len) throw std::invalid_argument(std::string(what) + " has the wrong length");
  return x;
}

Json prf_eval(const Vars& v) {
  prf::GgmKey key = cli_ggm_key(v);
  gf2::BitVector x = input_or_random(v.x, v.in_len, v.seed, "--x");
  Json j;
  j["in_len"] = v.in_len;
  j["out_len"] = v.out_len;
  j["x"] = x.to_string();
  j["y"] = prf::ggm_eval(key, x).to_string();
  return j;
}

std::vector<gf2::BitVector> punctured_set(const Vars& v) {
  auto set = parse_list(v.set, "--set");
  for (const auto& p : set) {
    if (p.size() != v.in_len) throw std::invalid_argument("--set entries must have in_len bits");
  }
  return set;
}

Json prf_puncture(const Vars& v) {
  prf::PuncturedKey pk = prf::puncture(cli_ggm_key(v), punctured_set(v));
  std::vector<gf2::BitVector> prefixes;
  for (const auto& c : pk.copath) prefixes.push_back(c.prefix);
  Json j;
  j["in_len"] = v.in_len;
  j["punctured"] = bits_list(pk.punctured_set);
  j["copath_prefixes"] = bits_list(prefixes);
  return j;
}

Json prf_peval(const Vars& v) {
  prf::GgmKey key = cli_ggm_key(v);
  prf::PuncturedKey pk = prf::puncture(key, punctured_set(v));
  gf2::BitVector x = input_or_random(v.x, v.in_len, v.seed, "--x");
  auto y = prf::punctured_eval(pk, x);
  Json j;
  j["x"] = x.to_string();
  j["punctured"] = !y.has_value();
  j["y"] = y ? Json(y->to_string()) : Json(nullptr);
  if (y) j["matches_full_key"] = *y == prf::ggm_eval(key, x);
  return j;
}

Json report_json(const prf::ParamsReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json k;
    k["name"] = c.name;
    k["formula"] = c.formula;
    k["lhs"] = c.lhs;
    k["rhs"] = c.rhs;
    k["satisfied"] = c.satisfied;
    checks.push_back(k);
  }
  Json j;
  j["n"] = rep.n;
  j["ok"] = rep.ok();
  j["checks"] = checks;
  return j;
}

Json prf_check(const Vars& v) {
  return report_json(prf::params_check(v.cl0, v.cl1, v.cl2, v.clambda, v.cm));
}

// ---------------------------------------------------------------------------
// sde

sde::SdeKeys cli_sde_keys(const Vars& v) { return sde::setup(v.n, v.kappa, derive_seed(v.seed, 0)); }

gf2::BitVector cli_message(const Vars& v) {
  if (v.message.empty()) {
    Rng rng(derive_seed(v.seed, 4));
    return gf2::BitVector::random(v.m_len, rng);
  }
  return parse_bits(v.message, "--m");
}

sde::Ciphertext cli_encrypt(const Vars& v, const sde::SdeKeys& keys, const gf2::BitVector& m, Rng& rng) {
  if (v.form == "io") return sde::encrypt(keys.pk, m, rng);
  if (v.form == "cc") return sde::encrypt_cc(keys.sk, m, rng);
  if (v.form == "cc-sim") return sde::simulate(sde::encrypt_cc(keys.sk, m, rng));
  throw std::invalid_argument("--form must be io, cc or cc-sim");
}

Json sde_setup(const Vars& v) {
  sde::SdeKeys keys = cli_sde_keys(v);
  Json j;
  j["n"] = v.n;
  j["kappa"] = v.kappa;
  j["program_size"] = keys.pk.programs.front().r0.padded_size();
  Json dims = Json::array();
  for (const auto& c : keys.sk.cosets) dims.push_back(c.a.dim());
  j["subspace_dims"] = dims;
  return j;
}

Json sde_qkeygen(const Vars& v) {
  sde::SdeKeys keys = cli_sde_keys(v);
  sde::QuantumDecKey key = sde::qkeygen(keys.sk);
  Json j;
  j["n"] = v.n;
  j["registers"] = key.size();
  double min_norm = 1.0;
  for (const auto& r : key.registers()) min_norm = std::min(min_norm, r.norm());
  j["min_norm"] = round12(min_norm);
  return j;
}

Json sde_enc(const Vars& v) {
  sde::SdeKeys keys = cli_sde_keys(v);
  Rng rng(derive_seed(v.seed, 5));
  sde::Ciphertext ct = cli_encrypt(v, keys, cli_message(v), rng);
  Json j;
  j["n"] = v.n;
  j["kappa"] = v.kappa;
  j["form"] = std::string(sde::to_string(ct.form));
  j["r"] = ct.r.to_string();
  j["program_kind"] = std::string(obf::to_string(ct.program.kind()));
  j["input_len"] = ct.program.input_len();
  j["padded_size"] = ct.program.padded_size();
  return j;
}

Json sde_dec(const Vars& v) {
  if (v.count == 0) throw std::invalid_argument("--count must be positive");
  sde::SdeKeys keys = cli_sde_keys(v);
  sde::QuantumDecKey key = sde::qkeygen(keys.sk);
  gf2::BitVector m = cli_message(v);
  Rng rng(derive_seed(v.seed, 5));
  std::size_t matches = 0;
  std::optional<gf2::BitVector> last;
  for (std::size_t i = 0; i < v.count; ++i) {
    sde::Ciphertext ct = cli_encrypt(v, keys, m, rng);
    last = sde::decrypt(key, ct, rng).message;
    if (last && *last == m) ++matches;
  }
  sde::QuantumDecKey fresh = sde::qkeygen(keys.sk);
  double min_fid = 1.0;
  for (std::size_t i = 0; i < key.size(); ++i) {
    min_fid = std::min(min_fid, qsim::fidelity(key.registers()[i], fresh.registers()[i]));
  }
  Json j;
  j["n"] = v.n;
  j["kappa"] = v.kappa;
  j["form"] = v.form;
  j["m"] = m.to_string();
  j["count"] = v.count;
  j["decrypted"] = last ? Json(last->to_string()) : Json(nullptr);
  j["matches"] = matches;
  j["key_fidelity_min"] = round12(min_fid);
  return j;
}

// ---------------------------------------------------------------------------
// cprf

cprf::CpParams cli_params(const Vars& v) { return cprf::CpParams{v.l0, v.l1, v.l2, v.lambda, v.m_len, v.toy}; }

// Printed alongside any command that runs with toy waivers in effect.
void attach_waivers(Json& j, const cprf::CpParams& p) {
  prf::ParamsReport rep = p.report();
  if (p.toy && !rep.ok()) j["params_check"] = report_json(rep);
}

struct CpSession {
  prf::MaskedPrfKey k1;
  cprf::CpKeyBundle bundle;
};

CpSession cp_session(const cprf::CpParams& p, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  prf::MaskedPrfKey k1 = cprf::cp_setup(p, rng);
  cprf::CpKeyBundle bundle = cprf::cp_qkeygen(k1, p, rng);
  return CpSession{std::move(k1), std::move(bundle)};
}

Json params_json(const cprf::CpParams& p) {
  Json j;
  j["l0"] = p.l0;
  j["l1"] = p.l1;
  j["l2"] = p.l2;
  j["lambda"] = p.lambda;
  j["m_len"] = p.m_len;
  j["toy"] = p.toy;
  j["n"] = p.n();
  return j;
}

Json cprf_keygen(const Vars& v) {
  cprf::CpParams p = cli_params(v);
  CpSession s = cp_session(p, v.seed);
  Json j;
  j["params"] = params_json(p);
  j["registers"] = s.bundle.key.registers().size();
  j["program_input_len"] = s.bundle.key.program().input_len();
  attach_waivers(j, p);
  return j;
}

Json cprf_eval(const Vars& v) {
  cprf::CpParams p = cli_params(v);
  CpSession s = cp_session(p, v.seed);
  gf2::BitVector x = input_or_random(v.x, p.n(), v.seed, "--x");
  Rng rng(derive_seed(v.seed, 6));
  cprf::CpEvaluation e = cprf::cp_eval(s.bundle.key, x, rng);
  Json j;
  j["x"] = x.to_string();
  j["y"] = e.y ? Json(e.y->to_string()) : Json(nullptr);
  j["f1"] = prf::extracting_prf_eval(s.k1, x).to_string();
  j["is_trigger"] = cprf::is_trigger(x, s.bundle.view->k2, s.bundle.view->k3, p);
  attach_waivers(j, p);
  return j;
}

Json cprf_trigger(const Vars& v) {
  cprf::CpParams p = cli_params(v);
  CpSession s = cp_session(p, v.seed);
  gf2::BitVector x0 = input_or_random(v.x0, p.l0, v.seed, "--x0");
  gf2::BitVector y = v.y.empty() ? gf2::BitVector(p.m_len) : parse_bits(v.y, "--y");
  const cprf::ChallengerView& view = *s.bundle.view;
  cprf::TriggerInput t = cprf::gen_trigger(x0, y, view.k2, view.k3, view.cosets, p);
  gf2::BitVector full = t.full();
  Rng rng(derive_seed(v.seed, 6));
  cprf::CpEvaluation e = cprf::cp_eval(s.bundle.key, full, rng);
  Json j;
  j["x0"] = x0.to_string();
  j["planted_y"] = y.to_string();
  j["trigger"] = full.to_string();
  j["passes_step1"] = cprf::is_trigger(full, view.k2, view.k3, p);
  j["evaluation"] = e.y ? Json(e.y->to_string()) : Json(nullptr);
  attach_waivers(j, p);
  return j;
}

Json cprf_check(const Vars& v) {
  cprf::CpParams p = cli_params(v);
  Json j = report_json(p.report());
  j["toy"] = p.toy;
  p.validate();
  j["accepted"] = true;
  return j;
}

// ---------------------------------------------------------------------------
// games, bounds, glx

Json game_list() {
  Json j;
  auto names = [](const auto& strategies) {
    Json a = Json::array();
    for (const auto& s : strategies) {
      if (!s.sanity) a.push_back(s.name);
    }
    return a;
  };
  j["direct-product"] = names(games::direct_product_strategies());
  j["revoke-after-sign"] = Json::array({"sign-then-revoke"});
  j["monogamy"] = names(games::monogamy_strategies());
  j["strong-monogamy"] = names(games::strong_monogamy_strategies());
  for (auto kind : {"cpa", "random", "strong-ti"}) j[kind] = names(games::sde_pirates());
  for (auto kind : {"ind-cprf", "copy-protection"}) j[kind] = names(games::cp_pirates());
  j["hidden-trigger"] = names(games::hidden_trigger_strategies());
  return j;
}

Json game_run(const Vars& v) {
  games::GameOptions opts{v.trials, v.seed, v.jobs, v.allow_sanity};
  const cprf::CpParams cp = cli_params(v);
  games::GameResult r;
  bool uses_cp = false;
  if (v.game == "direct-product") {
    if (v.mode != "it" && v.mode != "comp") throw std::invalid_argument("--mode must be it or comp");
    r = games::run_direct_product(v.n, v.strategy,
                                  v.mode == "it" ? games::OracleMode::kInformationTheoretic
                                                 : games::OracleMode::kComputational,
                                  opts);
  } else if (v.game == "revoke-after-sign") {
    r = games::run_revoke_after_sign(v.n, opts);
  } else if (v.game == "monogamy") {
    r = games::run_monogamy(v.n, v.strategy, opts, v.comp);
  } else if (v.game == "strong-monogamy") {
    r = games::run_strong_monogamy(v.n, v.strategy, opts, v.comp);
  } else if (v.game == "hidden-trigger") {
    r = games::run_hidden_trigger_game(cp, v.strategy, opts);
    uses_cp = true;
  } else {
    const games::AntiPiracyKind kind = games::parse_anti_piracy_kind(v.game);
    games::SdeInstance inst{v.n, v.kappa, v.m_len, v.gamma};
    r = games::run_anti_piracy(kind, inst, cp, v.strategy, opts);
    uses_cp = kind == games::AntiPiracyKind::kIndCprf || kind == games::AntiPiracyKind::kCopyProtection;
  }
  Json j = r.to_json();
  if (uses_cp) attach_waivers(j, cp);
  return j;
}

Json fraction_json(const games::ExactFraction& f) {
  Json j;
  j["value"] = round12(f.value);
  j["fraction"] = f.numerator + "/" + f.denominator;
  return j;
}

Json bound_monogamy(const Vars& v) {
  Json j;
  j["n"] = v.n;
  Json f = fraction_json(games::monogamy_bound(v.n));
  j["value"] = f["value"];
  j["fraction"] = f["fraction"];
  j["unsimplified_fraction"] = fraction_json(games::monogamy_bound_unsimplified(v.n))["fraction"];
  return j;
}

Json bound_overlap(const Vars& v) {
  games::OverlapReport rep = games::overlap_check(v.n, v.samples, v.seed);
  Json j;
  j["n"] = rep.n;
  j["exhaustive"] = rep.exhaustive;
  j["pairs"] = rep.pairs;
  j["violations"] = rep.violations;
  j["equality_cases"] = rep.equality_cases;
  j["max_ratio"] = round12(rep.max_ratio);
  return j;
}

Json bound_epr(const Vars& v) {
  check_even(v.n);
  gf2::Subspace a = gf2::sample_subspace(v.n, v.n / 2, v.seed);
  Json j;
  j["n"] = v.n;
  j["basis"] = bits_list(a.basis());
  j["fidelity"] = round12(games::epr_identity_fidelity(a));
  return j;
}

Json glx_demo(const Vars& v) {
  if (v.reps == 0) throw std::invalid_argument("--reps must be positive");
  Rng rng(derive_seed(v.seed, 0));
  gf2::BitVector x = gf2::BitVector::random(v.n, rng);
  glx::Predictor pred = glx::build_ip_predictor(x, v.flip_fraction, derive_seed(v.seed, 1));
  qsim::StateVector aux(0);
  const double eps = glx::exact_epsilon(pred, x, aux);
  Json j;
  j["n"] = v.n;
  j["x"] = x.to_string();
  j["flip_fraction"] = round12(v.flip_fraction);
  j["epsilon"] = round12(eps);
  j["lower_bound"] = round12(4.0 * eps * eps);
  j["exact_success"] = round12(glx::exact_success(pred, aux, x));
  j["reps"] = v.reps;
  j["estimate"] = round12(glx::success_estimate(pred, aux, x, v.reps, derive_seed(v.seed, 2), v.jobs));
  return j;
}

// ---------------------------------------------------------------------------
// Output

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string csv_cell(const Json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void emit(const Json& result, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << result.dump(2) << '\n';
  } else if (format == "csv") {
    std::string header;
    std::string row;
    for (auto it = result.begin(); it != result.end(); ++it) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += it.key();
      row += csv_cell(it.value());
    }
    out << header << '\n' << row << '\n';
  } else {
    for (auto it = result.begin(); it != result.end(); ++it) out << it.key() << ": " << scalar_text(it.value()) << '\n';
  }
  if (!out) throw IoError("failed writing output");
}

struct Leaf {
  CLI::App* app;
  std::string name;
  std::function<Json(const Vars&)> run;
};

void add_cp_options(CLI::App* c, Vars& v) {
  c->add_option("--l0", v.l0, "number of coset registers");
  c->add_option("--l1", v.l1, "length of x1");
  c->add_option("--l2", v.l2, "length of x2");
  c->add_option("--lambda", v.lambda, "qubits per register");
  c->add_option("--m-len", v.m_len, "PRF output length");
  c->add_flag("--toy,!--strict", v.toy, "waive the extraction and injectivity bounds (default on)");
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Vars v;
  CLI::App app{"cosetlab: hidden-coset schemes, games and bounds"};
  app.name("cosetlab");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");
  app.add_option("--seed", v.seed, "64-bit seed")->envname("COSETLAB_SEED");
  app.add_option("--format", v.format, "stdout format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--json", v.json_path, "also write the JSON result to this file");
  app.add_option("--jobs", v.jobs, "worker threads for trial loops")->check(CLI::Range(1u, 256u));

  std::vector<Leaf> leaves;
  auto group = [&](const char* name, const char* desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* desc, std::function<Json(const Vars&)> fn) {
    CLI::App* c = parent->add_subcommand(name, desc);
    leaves.push_back(Leaf{c, parent->get_name() + " " + name, std::move(fn)});
    return c;
  };

  CLI::App* g = group("gf2", "subspace algebra over F_2");
  auto* c = leaf(g, "rref", "reduced row-echelon basis of the span", gf2_rref);
  c->add_option("--rows", v.rows, "comma-separated 0/1 rows");
  c->add_option("--n", v.n, "ambient dimension when --rows is empty");
  c = leaf(g, "canon", "canonical representative of A + s", gf2_canon);
  c->add_option("--rows", v.rows, "comma-separated 0/1 rows");
  c->add_option("--s", v.s, "offset")->required();
  c = leaf(g, "complement", "A^perp", gf2_complement);
  c->add_option("--rows", v.rows, "comma-separated 0/1 rows");
  c->add_option("--n", v.n, "ambient dimension when --rows is empty");
  c = leaf(g, "sample", "uniform subspace of dimension d", gf2_sample);
  c->add_option("--n", v.n)->required();
  c->add_option("--d", v.d)->required();

  g = group("qsim", "coset-state simulation");
  c = leaf(g, "coset", "sample a coset state and check Fourier duality", qsim_coset);
  c->add_option("--n", v.n);
  c->add_option("--csv", v.csv_path, "write amplitudes as index,re,im");
  c = leaf(g, "measure", "measure a coset state in the computational basis", qsim_measure);
  c->add_option("--n", v.n);

  g = group("toksig", "tokenized signatures");
  c = leaf(g, "keygen", "key pair from the seed", toksig_keygen);
  c->add_option("--n", v.n);
  c->add_option("--out", v.out_path, "write the secret key as JSON");
  for (auto [name, fn] : {std::pair{"sign", &toksig_sign}, std::pair{"verify", &toksig_verify},
                          std::pair{"revoke", &toksig_revoke}}) {
    c = leaf(g, name, name, fn);
    c->add_option("--n", v.n, "key size when no key file is given");
    c->add_option("--key", v.key_path, "secret key file from keygen --out");
    if (std::string(name) != "revoke") c->add_option("--m", v.m_bit)->required()->check(CLI::Range(0, 1));
    if (std::string(name) == "verify") c->add_option("--sig", v.sig)->required();
    if (std::string(name) == "revoke") c->add_option("--sign-first", v.sign_first)->check(CLI::Range(0, 1));
  }

  g = group("prf", "puncturable PRFs");
  for (auto [name, fn] : {std::pair{"eval", &prf_eval}, std::pair{"puncture", &prf_puncture},
                          std::pair{"peval", &prf_peval}}) {
    c = leaf(g, name, name, fn);
    c->add_option("--in-len", v.in_len);
    c->add_option("--out-len", v.out_len);
    if (std::string(name) != "puncture") c->add_option("--x", v.x, "input bits (random if omitted)");
    if (std::string(name) != "eval") c->add_option("--set", v.set, "comma-separated punctured inputs")->required();
  }
  c = leaf(g, "check", "parameter constraints of the PRF family", prf_check);
  c->add_option("--l0", v.cl0)->required();
  c->add_option("--l1", v.cl1)->required();
  c->add_option("--l2", v.cl2)->required();
  c->add_option("--lambda", v.clambda)->required();
  c->add_option("--m", v.cm)->required();

  g = group("sde", "single-decryptor encryption");
  for (auto [name, fn] : {std::pair{"setup", &sde_setup}, std::pair{"qkeygen", &sde_qkeygen},
                          std::pair{"enc", &sde_enc}, std::pair{"dec", &sde_dec}}) {
    c = leaf(g, name, name, fn);
    c->add_option("--n", v.n);
    c->add_option("--kappa", v.kappa);
    if (std::string(name) == "enc" || std::string(name) == "dec") {
      c->add_option("--m", v.message, "message bits (random m-len bits if omitted)");
      c->add_option("--m-len", v.m_len);
      c->add_option("--form", v.form)->check(CLI::IsMember({"io", "cc", "cc-sim"}));
    }
    if (std::string(name) == "dec") c->add_option("--count", v.count, "encryptions decrypted with one key");
  }

  g = group("cprf", "copy-protected PRF");
  for (auto [name, fn] : {std::pair{"keygen", &cprf_keygen}, std::pair{"eval", &cprf_eval},
                          std::pair{"trigger", &cprf_trigger}, std::pair{"check", &cprf_check}}) {
    c = leaf(g, name, name, fn);
    add_cp_options(c, v);
    if (std::string(name) == "eval") c->add_option("--x", v.x, "input bits (random if omitted)");
    if (std::string(name) == "trigger") {
      c->add_option("--x0", v.x0, "selector (random if omitted)");
      c->add_option("--y", v.y, "planted output (zero if omitted)");
    }
  }

  g = group("game", "security games");
  c = leaf(g, "run", "run a game with a named strategy", game_run);
  c->add_option("--game", v.game)
      ->required()
      ->check(CLI::IsMember({"direct-product", "revoke-after-sign", "monogamy", "strong-monogamy", "cpa", "random",
                             "strong-ti", "ind-cprf", "copy-protection", "hidden-trigger"}));
  c->add_option("--strategy", v.strategy);
  c->add_option("--n", v.n);
  c->add_option("--trials", v.trials);
  c->add_option("--mode", v.mode, "direct product: it or comp");
  c->add_flag("--comp", v.comp, "monogamy games: hand A0 the membership programs");
  c->add_option("--kappa", v.kappa);
  c->add_option("--gamma", v.gamma, "strong-ti threshold offset");
  c->add_flag("--allow-sanity", v.allow_sanity, "test only: let strategies read challenger secrets");
  add_cp_options(c, v);
  leaf(g, "list", "strategies per game", [](const Vars&) { return game_list(); });

  g = group("bound", "closed forms and exhaustive checks");
  c = leaf(g, "monogamy", "exact monogamy bound", bound_monogamy);
  c->add_option("--n", v.n)->required();
  c = leaf(g, "overlap", "coset-state overlap bound", bound_overlap);
  c->add_option("--n", v.n)->required();
  c->add_option("--samples", v.samples, "pairs sampled when n > 4");
  c = leaf(g, "epr", "EPR identity fidelity for a random subspace", bound_epr);
  c->add_option("--n", v.n)->required();

  g = group("glx", "Goldreich-Levin extraction");
  c = leaf(g, "demo", "extract x from a noisy inner-product predictor", glx_demo);
  c->add_option("--n", v.n);
  c->add_option("--flip-fraction", v.flip_fraction);
  c->add_option("--reps", v.reps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& l : leaves) {
      if (!l.app->parsed()) continue;
      Json body = l.run(v);
      Json result;
      result["command"] = l.name;
      if (!body.contains("seed")) result["seed"] = v.seed;
      for (auto it = body.begin(); it != body.end(); ++it) result[it.key()] = it.value();
      emit(result, v.format, out);
      if (!v.json_path.empty()) {
        std::ofstream f(v.json_path);
        if (!f) throw IoError("cannot open " + v.json_path);
        emit(result, "json", f);
      }
      return kExitOk;
    }
    err << "no command selected\n" << app.help();
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const games::InterfaceViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace cosetlab::cli
