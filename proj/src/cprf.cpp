#include "cosetlab/cprf.hpp"

#include <algorithm>
#include <stdexcept>

namespace cosetlab::cprf {

namespace {

struct SplitInput {
  gf2::BitVector x0, x1, x2;
};

SplitInput split_input(const gf2::BitVector& x, const CpParams& p) {
  if (x.size() != p.n()) throw std::invalid_argument("cprf: input must have n bits");
  return SplitInput{x.slice(0, p.l0), x.slice(p.l0, p.l1), x.slice(p.l0 + p.l1, p.l2)};
}

bool all_in_selected_cosets(const gf2::BitVector& selector, std::span<const gf2::BitVector> vs,
                            std::span<const sde::RegisterPrograms> memberships) {
  for (std::size_t i = 0; i < memberships.size(); ++i) {
    const auto& prog = selector.get(i) ? memberships[i].r1 : memberships[i].r0;
    if (!prog.accepts(vs[i])) return false;
  }
  return true;
}

}  // namespace

prf::ParamsReport CpParams::report() const { return prf::params_check(l0, l1, l2, lambda, m_len); }

void CpParams::validate() const {
  if (l0 == 0 || l1 == 0 || l2 == 0 || m_len == 0) {
    throw std::invalid_argument("cprf: l0, l1, l2 and m_len must be positive");
  }
  if (lambda > qsim::kMaxQubits) throw std::invalid_argument("cprf: lambda exceeds the qubit memory guard");
  if (l0 > 64) throw std::invalid_argument("cprf: l0 must be at most 64");
  for (const auto& c : report().checks) {
    if (c.satisfied) continue;
    const bool waivable = c.name == "extracting" || c.name == "injective";
    if (!(toy && waivable)) {
      throw std::invalid_argument("cprf: parameter constraint violated: " + c.formula);
    }
  }
}

CpParams CpParams::toy_preset() { return CpParams{2, 16, 10, 4, 2, true}; }

gf2::BitVector TriggerInput::full() const {
  const gf2::BitVector parts[] = {x0, x1, x2};
  return gf2::BitVector::concat(parts);
}

prf::MaskedPrfKey cp_setup(const CpParams& params, Rng& rng) {
  params.validate();
  return prf::extracting_prf_keygen(params.n(), params.m_len, params.lambda, params.mode(), rng);
}

CpKeyBundle cp_qkeygen(const prf::MaskedPrfKey& k1, const CpParams& params, Rng& rng) {
  params.validate();
  if (k1.ggm.in_len != params.n() || k1.ggm.out_len != params.m_len) {
    throw std::invalid_argument("cp_qkeygen: K1 does not match the parameters");
  }
  auto view = std::make_shared<ChallengerView>();
  view->params = params;
  view->k1 = k1;
  sde::SdeSecretKey cosets;
  cosets.n = params.lambda;
  for (std::size_t i = 0; i < params.l0; ++i) cosets.cosets.push_back(sde::sample_coset_record(params.lambda, rng));
  view->cosets = cosets.cosets;
  view->memberships = sde::make_public_key(cosets).programs;
  view->k2 = prf::injective_prf_keygen(params.l2, params.l1, params.lambda, params.mode(), rng);
  view->k3 = prf::ggm_keygen(params.l1, params.l2, rng);

  std::shared_ptr<const ChallengerView> cview = view;
  const std::size_t input_len = params.n() + params.l0 * params.lambda;
  obf::ObfProgram p = obf::raw_program(
      input_len, input_len * 8,
      [cview](const gf2::BitVector& in) -> obf::ProgramOutput {
        const auto& pr = cview->params;
        std::vector<gf2::BitVector> vs;
        for (std::size_t i = 0; i < pr.l0; ++i) vs.push_back(in.slice(pr.n() + i * pr.lambda, pr.lambda));
        return program_p(in.slice(0, pr.n()), vs, *cview);
      });

  std::vector<qsim::StateVector> regs;
  for (const auto& c : view->cosets) regs.push_back(qsim::coset_state(c.a, c.s, c.s_prime));
  CpKey key(std::move(regs), obf::io_stub(p, p.padded_size()), view->memberships, params);
  return CpKeyBundle{std::move(key), std::move(cview)};
}

std::optional<gf2::BitVector> program_p(const gf2::BitVector& x, std::span<const gf2::BitVector> vs,
                                        const ChallengerView& view) {
  const CpParams& p = view.params;
  if (vs.size() != p.l0) throw std::invalid_argument("program_p: need one vector per register");
  for (const auto& v : vs) {
    if (v.size() != p.lambda) throw std::invalid_argument("program_p: vector length must be lambda");
  }
  SplitInput in = split_input(x, p);

  // Step 1: hidden trigger.
  gf2::BitVector decoded = prf::ggm_eval(view.k3, in.x1) ^ in.x2;
  if (decoded.slice(0, p.l0) == in.x0 && prf::injective_prf_eval(view.k2, decoded) == in.x1) {
    auto q = decode_trigger_program(decoded.slice(p.l0, p.l2 - p.l0), p);
    if (!q) return std::nullopt;
    if (all_in_selected_cosets(q->x0, vs, view.memberships)) return q->y;
    return std::nullopt;
  }

  // Step 2: normal mode.
  if (all_in_selected_cosets(in.x0, vs, view.memberships)) return prf::extracting_prf_eval(view.k1, x);
  return std::nullopt;
}

CpEvaluation cp_eval(CpKey& key, const gf2::BitVector& x, Rng& rng) {
  const CpParams& p = key.params();
  SplitInput in = split_input(x, p);
  auto& regs = key.registers();
  for (std::size_t i = 0; i < p.l0; ++i) {
    if (in.x0.get(i)) regs[i].apply_hadamard_all();
  }
  std::vector<qsim::StateVector*> ptrs;
  for (auto& r : regs) ptrs.push_back(&r);
  const obf::ObfProgram& prog = key.program();
  const std::size_t lambda = p.lambda;
  qsim::FactorizedOutcome res = qsim::evaluate_factorized(
      ptrs,
      [&prog, &x, lambda](std::span<const std::uint64_t> u) {
        std::vector<gf2::BitVector> parts{x};
        for (auto v : u) parts.push_back(gf2::BitVector::from_uint(lambda, v));
        return prog(gf2::BitVector::concat(parts));
      },
      rng);
  for (std::size_t i = 0; i < p.l0; ++i) {
    if (in.x0.get(i)) regs[i].apply_hadamard_all();
  }
  return CpEvaluation{res.output, res.probability, res.exact};
}

gf2::BitVector encode_trigger_program(const gf2::BitVector& x0, const gf2::BitVector& y,
                                      const CpParams& params) {
  if (x0.size() != params.l0 || y.size() != params.m_len) {
    throw std::invalid_argument("encode_trigger_program: length mismatch");
  }
  const std::size_t width = params.l2 - std::min(params.l2, params.l0);
  if (prf::trigger_program_bits(params.l0, params.m_len) > width) {
    throw std::invalid_argument("encode_trigger_program: program does not fit in l2 - l0 bits");
  }
  gf2::BitVector out(width);
  out.set(1, true);  // tag 01
  for (std::size_t i = 0; i < params.l0; ++i) out.set(2 + i, x0.get(i));
  for (std::size_t i = 0; i < params.m_len; ++i) out.set(2 + params.l0 + i, y.get(i));
  return out;
}

std::optional<TriggerProgram> decode_trigger_program(const gf2::BitVector& bits, const CpParams& params) {
  const std::size_t used = prf::trigger_program_bits(params.l0, params.m_len);
  if (bits.size() < used) return std::nullopt;
  if (bits.get(0) || !bits.get(1)) return std::nullopt;
  for (std::size_t i = used; i < bits.size(); ++i) {
    if (bits.get(i)) return std::nullopt;
  }
  return TriggerProgram{bits.slice(2, params.l0), bits.slice(2 + params.l0, params.m_len)};
}

TriggerInput gen_trigger(const gf2::BitVector& x0, const gf2::BitVector& y, const prf::MaskedPrfKey& k2,
                         const prf::GgmKey& k3, std::span<const sde::CosetRecord> cosets,
                         const CpParams& params) {
  if (cosets.size() != params.l0) throw std::invalid_argument("gen_trigger: need l0 cosets");
  gf2::BitVector q = encode_trigger_program(x0, y, params);
  gf2::BitVector d = gf2::BitVector::concat(x0, q);
  gf2::BitVector x1 = prf::injective_prf_eval(k2, d);
  gf2::BitVector x2 = prf::ggm_eval(k3, x1) ^ d;
  return TriggerInput{x0, std::move(x1), std::move(x2), y};
}

bool is_trigger(const gf2::BitVector& x, const prf::MaskedPrfKey& k2, const prf::GgmKey& k3,
                const CpParams& params) {
  SplitInput in = split_input(x, params);
  gf2::BitVector decoded = prf::ggm_eval(k3, in.x1) ^ in.x2;
  return decoded.slice(0, params.l0) == in.x0 && prf::injective_prf_eval(k2, decoded) == in.x1;
}

}  // namespace cosetlab::cprf
