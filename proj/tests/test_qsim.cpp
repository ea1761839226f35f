#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "cosetlab/qsim.hpp"
#include "cosetlab/sde.hpp"
#include "test_util.hpp"

using namespace cosetlab;
using gf2::BitVector;
using gf2::Subspace;
using qsim::StateVector;

namespace {

// Dense amplitudes of |A_{s,s'}> written from the definition.
std::vector<double> coset_oracle(std::size_t n, const std::set<std::uint64_t>& a, std::uint64_t s,
                                 std::uint64_t sp) {
  std::vector<double> v(std::size_t{1} << n, 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(a.size()));
  for (auto x : a) v[x ^ s] = oracle::dot(x, sp) ? -amp : amp;
  return v;
}

}  // namespace

TEST(StateVector, BasicsAndGuards) {
  StateVector z(3);
  EXPECT_EQ(z.dimension(), 8u);
  EXPECT_DOUBLE_EQ(std::abs(z[0]), 1.0);
  EXPECT_THROW(StateVector(qsim::kMaxQubits + 1), std::invalid_argument);
  EXPECT_THROW(StateVector::from_amplitudes(1, {1.0, 1.0}), std::invalid_argument);
  StateVector b = StateVector::basis(2, 3);
  EXPECT_EQ(b.support(), std::vector<std::uint64_t>{3});
}

TEST(StateVector, TensorPutsFirstFactorOnLeadingQubits) {
  StateVector t = StateVector::basis(1, 1).tensor(StateVector::basis(2, 1));
  EXPECT_EQ(t.support(), std::vector<std::uint64_t>{0b101});
}

TEST(CosetState, MatchesDefinitionAndChainConstruction) {
  Rng rng(1);
  for (std::size_t n = 2; n <= 8; n += 2) {
    for (int rep = 0; rep < 10; ++rep) {
      sde::CosetRecord r = sde::sample_coset_record(n, rng);
      StateVector direct = qsim::coset_state(r.a, r.s, r.s_prime);
      StateVector chain = qsim::prepare_coset_state(r.a, r.s, r.s_prime);
      auto expected = coset_oracle(n, oracle::span_set(oracle::to_ints(r.a.basis())), r.s.to_uint(),
                                   r.s_prime.to_uint());
      for (std::uint64_t i = 0; i < direct.dimension(); ++i) {
        EXPECT_NEAR(direct[i].real(), expected[i], 1e-12);
        EXPECT_NEAR(direct[i].imag(), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(chain[i] - direct[i]), 0.0, 1e-9);
      }
    }
  }
}

TEST(CosetState, HadamardDuality) {
  Rng rng(2);
  for (std::size_t n = 2; n <= 10; n += 2) {
    sde::CosetRecord r = sde::sample_coset_record(n, rng);
    StateVector h = qsim::hadamard_all(qsim::coset_state(r.a, r.s, r.s_prime));
    StateVector dual = qsim::coset_state(gf2::complement(r.a), r.s_prime, r.s);
    EXPECT_NEAR(qsim::fidelity(h, dual), 1.0, 1e-9);
  }
}

TEST(CosetState, SubspaceStateIsUniformOverA) {
  Subspace a = gf2::sample_subspace(6, 3, 4);
  StateVector st = qsim::prepare_subspace_state(a);
  for (std::uint64_t x = 0; x < st.dimension(); ++x) {
    EXPECT_NEAR(std::norm(st[x]), a.contains_index(x) ? 1.0 / 8 : 0.0, 1e-12);
  }
}

TEST(Hadamard, BasisStateFormula) {
  for (std::uint64_t w = 0; w < 8; ++w) {
    StateVector direct = qsim::hadamard_basis_state(3, w);
    StateVector applied = qsim::hadamard_all(StateVector::basis(3, w));
    EXPECT_NEAR(qsim::fidelity(direct, applied), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(qsim::inner_product(direct, applied) - qsim::Amplitude(1.0)), 0.0, 1e-12);
  }
}

TEST(Measurement, BornStatisticsAndCollapse) {
  StateVector st = StateVector::from_amplitudes(2, {std::sqrt(0.1), 0.0, std::sqrt(0.3), std::sqrt(0.6)});
  Rng rng(5);
  std::map<std::uint64_t, int> counts;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    auto rec = qsim::measure_all(st, rng);
    counts[rec.outcome.to_uint()]++;
    EXPECT_NEAR(std::norm(rec.post_state[rec.outcome.to_uint()]), 1.0, 1e-12);
  }
  EXPECT_EQ(counts[1], 0);
  EXPECT_TRUE(oracle::within_4sigma(counts[0] / double(trials), 0.1, trials));
  EXPECT_TRUE(oracle::within_4sigma(counts[2] / double(trials), 0.3, trials));
}

TEST(Measurement, CoherentPredicateIsGentleOnDefiniteStates) {
  Rng rng(6);
  sde::CosetRecord r = sde::sample_coset_record(6, rng);
  StateVector st = qsim::coset_state(r.a, r.s, r.s_prime);
  auto pred = [&](std::uint64_t v) { return gf2::coset_contains(r.a, r.s, BitVector::from_uint(6, v)); };
  auto m = qsim::coherent_predicate(st, pred, rng);
  EXPECT_TRUE(m.bit);
  EXPECT_NEAR(m.probability, 1.0, 1e-12);
  EXPECT_NEAR(qsim::fidelity(m.post_state, st), 1.0, 1e-12);
  EXPECT_NEAR(qsim::predicate_mass(st, pred), 1.0, 1e-12);
}

TEST(Measurement, CoherentPredicateProjects) {
  StateVector st = qsim::hadamard_all(StateVector(3));
  Rng rng(7);
  auto pred = [](std::uint64_t v) { return v < 2; };
  EXPECT_NEAR(qsim::predicate_mass(st, pred), 0.25, 1e-12);
  auto m = qsim::coherent_predicate(st, pred, rng);
  for (std::uint64_t v = 0; v < 8; ++v) {
    EXPECT_NEAR(std::norm(m.post_state[v]), m.bit == (v < 2) ? (m.bit ? 0.5 : 1.0 / 6) : 0.0, 1e-12);
  }
}

TEST(Measurement, RangeAndLabel) {
  // |0>|+>: measuring the second qubit gives a uniform bit.
  StateVector st = StateVector(1).tensor(qsim::hadamard_all(StateVector(1)));
  Rng rng(8);
  int ones = 0;
  for (int i = 0; i < 4000; ++i) {
    StateVector c = st;
    ones += static_cast<int>(qsim::measure_range(c, 1, 1, rng));
  }
  EXPECT_TRUE(oracle::within_4sigma(ones / 4000.0, 0.5, 4000));
  StateVector g = qsim::hadamard_all(StateVector(2));
  std::uint64_t lab = qsim::measure_label(g, 0, 2, [](std::uint64_t x) { return x % 2; }, rng);
  for (std::uint64_t v = 0; v < 4; ++v) EXPECT_NEAR(std::norm(g[v]), v % 2 == lab ? 0.5 : 0.0, 1e-12);
  StateVector h = StateVector(2);
  qsim::apply_hadamard_range(h, 1, 1);
  EXPECT_NEAR(std::norm(h[0]), 0.5, 1e-12);
  EXPECT_NEAR(std::norm(h[1]), 0.5, 1e-12);
}

TEST(Factorized, SingleRegisterIsExact) {
  Rng rng(9);
  StateVector st = qsim::hadamard_all(StateVector(3));
  std::vector<StateVector*> regs{&st};
  auto out = qsim::evaluate_factorized(
      regs, [](std::span<const std::uint64_t> u) -> std::optional<BitVector> {
        if (u[0] >= 6) return std::nullopt;
        return BitVector::from_uint(1, u[0] % 2);
      },
      rng);
  EXPECT_TRUE(out.exact);
  if (!out.output) {
    EXPECT_NEAR(out.probability, 0.25, 1e-12);
    EXPECT_NEAR(std::norm(st[6]) + std::norm(st[7]), 1.0, 1e-12);
  } else {
    EXPECT_NEAR(out.probability, 3.0 / 8, 1e-12);
  }
}

TEST(Factorized, ProductPreimageProjectsEachRegister) {
  Rng rng(10);
  StateVector a = qsim::hadamard_all(StateVector(2));
  StateVector b = qsim::hadamard_all(StateVector(2));
  std::vector<StateVector*> regs{&a, &b};
  // Accepts when both registers hold an even index.
  auto out = qsim::evaluate_factorized(
      regs, [](std::span<const std::uint64_t> u) -> std::optional<BitVector> {
        if (u[0] % 2 == 0 && u[1] % 2 == 0) return BitVector::from_string("1");
        return std::nullopt;
      },
      rng);
  if (out.output) {
    EXPECT_NEAR(out.probability, 0.25, 1e-12);
    EXPECT_NEAR(std::norm(a[0]) + std::norm(a[2]), 1.0, 1e-12);
    EXPECT_NEAR(std::norm(b[0]) + std::norm(b[2]), 1.0, 1e-12);
  } else {
    EXPECT_FALSE(out.exact);
    EXPECT_NEAR(std::norm(a[1]), 0.25, 1e-12);  // untouched
  }
}

TEST(Factorized, NonProductPreimageIsDetected) {
  Rng rng(11);
  bool threw = false;
  for (int i = 0; i < 50 && !threw; ++i) {
    StateVector a = qsim::hadamard_all(StateVector(1));
    StateVector b = qsim::hadamard_all(StateVector(1));
    std::vector<StateVector*> regs{&a, &b};
    try {
      qsim::evaluate_factorized(
          regs, [](std::span<const std::uint64_t> u) { return std::optional<BitVector>(BitVector::from_uint(1, u[0] ^ u[1])); },
          rng);
    } catch (const std::runtime_error&) {
      threw = true;
    }
  }
  EXPECT_TRUE(threw);
}

TEST(Csv, WritesOneLinePerAmplitude) {
  std::ostringstream out;
  qsim::write_csv(out, StateVector(2));
  std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
  EXPECT_EQ(text.substr(0, text.find('\n')), "index,re,im");
  EXPECT_NE(text.find("\n0,1,0\n"), std::string::npos);
}
