#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "games_internal.hpp"

namespace cosetlab::games {

namespace {

using Wide = unsigned __int128;

std::string to_decimal(Wide v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

Wide gcd(Wide a, Wide b) {
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Wide binom(std::size_t n, std::size_t k) {
  Wide r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ExactFraction reduce(Wide num, Wide den) {
  Wide g = gcd(num, den);
  num /= g;
  den /= g;
  return ExactFraction{to_decimal(num), to_decimal(den), static_cast<double>(num) / static_cast<double>(den)};
}

void check_bound_n(std::size_t n) {
  if (n == 0 || n % 2 != 0 || n > 64) throw std::invalid_argument("monogamy_bound: n must be even, 2..64");
}

// Vector of amplitudes of |A_{s,s'}> on n qubits, indexed by basis vector.
std::vector<double> coset_amplitudes(const gf2::Subspace& a, std::uint64_t s, std::uint64_t sp) {
  const std::size_t n = a.ambient_dim();
  std::vector<double> amps(std::size_t{1} << n, 0.0);
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(a.dim()));
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << a.dim()); ++c) {
    const std::uint64_t x = a.element_index(c);
    amps[x ^ s] = (std::popcount(x & sp) & 1) ? -amp : amp;
  }
  return amps;
}

// Canonical offsets of the cosets of a.
std::vector<std::uint64_t> coset_offsets(const gf2::Subspace& a) {
  std::set<std::uint64_t> reps;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << a.ambient_dim()); ++x) reps.insert(a.reduce_index(x));
  return {reps.begin(), reps.end()};
}

struct CosetFamily {
  gf2::Subspace a;
  std::vector<std::vector<double>> states;
};

CosetFamily all_coset_states(const gf2::Subspace& a) {
  CosetFamily f{a, {}};
  const gf2::Subspace dual = gf2::complement(a);
  for (auto s : coset_offsets(a)) {
    for (auto sp : coset_offsets(dual)) f.states.push_back(coset_amplitudes(a, s, sp));
  }
  return f;
}

void record_pair(OverlapReport& rep, const std::vector<double>& x, const std::vector<double>& y, double bound) {
  double ip = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) ip += x[k] * y[k];
  const double overlap = std::abs(ip);
  ++rep.pairs;
  if (overlap > bound + 1e-9) ++rep.violations;
  if (overlap > 1e-9 && std::abs(overlap - bound) <= 1e-9) ++rep.equality_cases;
  rep.max_ratio = std::max(rep.max_ratio, overlap / bound);
}

}  // namespace

ExactFraction monogamy_bound(std::size_t n) {
  check_bound_n(n);
  const std::size_t h = n / 2;
  Wide num = 0;
  for (std::size_t t = 0; t <= h; ++t) {
    const Wide c = binom(h, t);
    num += c * c * (Wide{1} << (h - t));
  }
  return reduce(num, binom(n, h) * (Wide{1} << h));
}

ExactFraction monogamy_bound_unsimplified(std::size_t n) {
  check_bound_n(n);
  const std::size_t h = n / 2;
  Wide num = 0;
  for (std::size_t t = 0; t <= h; ++t) {
    const Wide c = binom(h, t);
    num += c * c * (Wide{1} << t);
  }
  return reduce(num, binom(n, h) * (Wide{1} << h));
}

std::vector<gf2::Subspace> enumerate_subspaces(std::size_t n, std::size_t d) {
  if (d > n || n > 16) throw std::invalid_argument("enumerate_subspaces: need d <= n <= 16");
  std::vector<gf2::Subspace> out;
  // Walk over pivot sets, then over the free entries of the echelon form.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != d) continue;
    std::vector<std::size_t> pivots;
    for (std::size_t p = 0; p < n; ++p) {
      if (mask & (std::uint64_t{1} << p)) pivots.push_back(p);
    }
    std::vector<std::vector<std::size_t>> free(d);
    std::size_t total_free = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t p = pivots[i] + 1; p < n; ++p) {
        if (!(mask & (std::uint64_t{1} << p))) free[i].push_back(p);
      }
      total_free += free[i].size();
    }
    for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << total_free); ++fill) {
      std::vector<gf2::BitVector> rows;
      std::size_t bit = 0;
      for (std::size_t i = 0; i < d; ++i) {
        gf2::BitVector row(n);
        row.set(pivots[i], true);
        for (auto p : free[i]) row.set(p, ((fill >> bit++) & 1) != 0);
        rows.push_back(std::move(row));
      }
      out.push_back(gf2::Subspace::span(n, rows));
    }
  }
  return out;
}

OverlapReport overlap_check(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  if (n == 0 || n % 2 != 0 || n > 12) throw std::invalid_argument("overlap_check: n must be even, 2..12");
  OverlapReport rep;
  rep.n = n;
  const double half = 0.5 * static_cast<double>(n);
  if (n <= 4) {
    rep.exhaustive = true;
    std::vector<CosetFamily> families;
    for (auto& a : enumerate_subspaces(n, n / 2)) families.push_back(all_coset_states(a));
    for (const auto& f1 : families) {
      for (const auto& f2 : families) {
        const double bound = std::pow(2.0, static_cast<double>(gf2::intersect_dim(f1.a, f2.a)) - half);
        for (const auto& x : f1.states) {
          for (const auto& y : f2.states) record_pair(rep, x, y, bound);
        }
      }
    }
    return rep;
  }
  Rng rng(seed);
  for (std::uint64_t k = 0; k < samples; ++k) {
    sde::CosetRecord c1 = sde::sample_coset_record(n, rng);
    // Every fourth pair shares its subspace so the high-overlap cases show up.
    sde::CosetRecord c2 = sde::sample_coset_record(n, rng);
    if (k % 4 == 0) c2.a = c1.a;
    const double bound = std::pow(2.0, static_cast<double>(gf2::intersect_dim(c1.a, c2.a)) - half);
    auto x = coset_amplitudes(c1.a, c1.a.reduce_index(c1.s.to_uint()), c1.s_prime.to_uint());
    auto y = coset_amplitudes(c2.a, c2.a.reduce_index(c2.s.to_uint()), c2.s_prime.to_uint());
    record_pair(rep, x, y, bound);
  }
  return rep;
}

double epr_identity_fidelity(const gf2::Subspace& a) {
  const std::size_t n = a.ambient_dim();
  if (n == 0 || 2 * n > qsim::kMaxQubits) throw std::invalid_argument("epr_identity_fidelity: n out of range");
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<qsim::Amplitude> joint(dim * dim, 0.0);
  const double norm = std::pow(2.0, -0.5 * static_cast<double>(n));
  const gf2::Subspace dual = gf2::complement(a);
  for (auto s : coset_offsets(a)) {
    for (auto sp : coset_offsets(dual)) {
      auto v = coset_amplitudes(a, s, sp);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (v[i] == 0.0) continue;
        for (std::uint64_t j = 0; j < dim; ++j) joint[i * dim + j] += norm * v[i] * v[j];
      }
    }
  }
  std::vector<qsim::Amplitude> epr(dim * dim, 0.0);
  for (std::uint64_t i = 0; i < dim; ++i) epr[i * dim + i] = norm;
  return qsim::fidelity(qsim::StateVector::from_amplitudes(2 * n, std::move(joint)),
                        qsim::StateVector::from_amplitudes(2 * n, std::move(epr)));
}

}  // namespace cosetlab::games
