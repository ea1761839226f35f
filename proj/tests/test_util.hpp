#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "cosetlab/gf2.hpp"
#include "cosetlab/rng.hpp"

namespace oracle {

// Closure of the generators under addition, by breadth-first search over
// integer vectors. Independent of the echelon code.
inline std::set<std::uint64_t> span_set(const std::vector<std::uint64_t>& gens) {
  std::set<std::uint64_t> out{0};
  for (auto g : gens) {
    std::set<std::uint64_t> next = out;
    for (auto x : out) next.insert(x ^ g);
    out.swap(next);
  }
  return out;
}

inline std::vector<std::uint64_t> to_ints(const std::vector<cosetlab::gf2::BitVector>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& b : v) out.push_back(b.to_uint());
  return out;
}

inline std::vector<cosetlab::gf2::BitVector> random_gens(std::size_t n, std::size_t k, cosetlab::Rng& rng) {
  std::vector<cosetlab::gf2::BitVector> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(cosetlab::gf2::BitVector::random(n, rng));
  return out;
}

inline bool dot(std::uint64_t a, std::uint64_t b) { return (__builtin_popcountll(a & b) & 1) != 0; }

// Elements orthogonal to every member of the set, by scanning the cube.
inline std::set<std::uint64_t> dual_set(std::size_t n, const std::set<std::uint64_t>& a) {
  std::set<std::uint64_t> out;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
    bool ok = true;
    for (auto x : a) {
      if (dot(x, y)) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(y);
  }
  return out;
}

inline double sigma(double p, double trials) { return std::sqrt(p * (1.0 - p) / trials); }

// |estimate - p| <= 4 sigma, with a floor of one success worth of slack
// for p close to 0 or 1.
inline bool within_4sigma(double estimate, double p, double trials) {
  return std::abs(estimate - p) <= 4.0 * sigma(p, trials) + 1.0 / trials;
}

}  // namespace oracle
