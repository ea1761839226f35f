#include "cosetlab/prf.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cosetlab::prf {

namespace {

Seed hash_with_tag(const Seed& seed, std::uint8_t tag, std::uint32_t counter, bool with_counter) {
  std::uint8_t buf[32 + 1 + 4];
  std::copy(seed.begin(), seed.end(), buf);
  buf[32] = tag;
  std::size_t len = 33;
  if (with_counter) {
    buf[33] = static_cast<std::uint8_t>(counter >> 24);
    buf[34] = static_cast<std::uint8_t>(counter >> 16);
    buf[35] = static_cast<std::uint8_t>(counter >> 8);
    buf[36] = static_cast<std::uint8_t>(counter);
    len = 37;
  }
  Seed out;
  SHA256(buf, len, out.data());
  return out;
}

Seed walk(Seed node, const gf2::BitVector& x, std::size_t from) {
  // Only the child on the path is needed.
  for (std::size_t i = from; i < x.size(); ++i) node = hash_with_tag(node, x.get(i) ? 0x01 : 0x00, 0, false);
  return node;
}

bool is_prefix(const gf2::BitVector& prefix, const gf2::BitVector& x) {
  if (prefix.size() > x.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix.get(i) != x.get(i)) return false;
  }
  return true;
}

gf2::BitVector extend(const gf2::BitVector& prefix, bool bit) {
  gf2::BitVector out(prefix.size() + 1);
  for (std::size_t i = 0; i < prefix.size(); ++i) out.set(i, prefix.get(i));
  out.set(prefix.size(), bit);
  return out;
}

void check_len(const gf2::BitVector& x, std::size_t n, const char* what) {
  if (x.size() != n) throw std::invalid_argument(std::string(what) + ": input length mismatch");
}

ConstraintCheck make_check(std::string name, std::string formula, long long lhs, long long rhs) {
  return ConstraintCheck{std::move(name), std::move(formula), lhs, rhs, lhs >= rhs};
}

}  // namespace

std::array<Seed, 2> prg_expand(const Seed& seed) {
  return {hash_with_tag(seed, 0x00, 0, false), hash_with_tag(seed, 0x01, 0, false)};
}

gf2::BitVector leaf_output(const Seed& leaf, std::size_t out_len) {
  gf2::BitVector out(out_len);
  std::size_t pos = 0;
  for (std::uint32_t counter = 0; pos < out_len; ++counter) {
    Seed block = hash_with_tag(leaf, 0x02, counter, true);
    for (std::size_t byte = 0; byte < block.size() && pos < out_len; ++byte) {
      for (int b = 7; b >= 0 && pos < out_len; --b, ++pos) {
        if ((block[byte] >> b) & 1) out.set(pos, true);
      }
    }
  }
  return out;
}

GgmKey ggm_keygen(std::size_t in_len, std::size_t out_len, Rng& rng) {
  if (out_len == 0) throw std::invalid_argument("ggm_keygen: out_len must be positive");
  GgmKey key;
  key.in_len = in_len;
  key.out_len = out_len;
  for (std::size_t i = 0; i < key.root.size(); i += 8) {
    std::uint64_t w = rng.next();
    for (std::size_t j = 0; j < 8; ++j) key.root[i + j] = static_cast<std::uint8_t>(w >> (56 - 8 * j));
  }
  return key;
}

gf2::BitVector ggm_eval(const GgmKey& key, const gf2::BitVector& x) {
  check_len(x, key.in_len, "ggm_eval");
  return leaf_output(walk(key.root, x, 0), key.out_len);
}

PuncturedKey puncture(const GgmKey& key, std::span<const gf2::BitVector> set) {
  if (set.empty()) throw std::invalid_argument("puncture: punctured set is empty");
  std::set<gf2::BitVector> points;
  for (const auto& x : set) {
    check_len(x, key.in_len, "puncture");
    points.insert(x);
  }
  // Every node on a path to a punctured point, keyed by its prefix.
  std::set<gf2::BitVector> on_path;
  for (const auto& x : points) {
    for (std::size_t d = 0; d <= key.in_len; ++d) on_path.insert(x.slice(0, d));
  }
  PuncturedKey out;
  out.in_len = key.in_len;
  out.out_len = key.out_len;
  out.punctured_set.assign(points.begin(), points.end());
  for (const auto& node : on_path) {
    if (node.size() == key.in_len) continue;
    for (bool bit : {false, true}) {
      gf2::BitVector child = extend(node, bit);
      if (on_path.count(child)) continue;
      out.copath.push_back(CopathNode{child, walk(key.root, child, 0)});
    }
  }
  return out;
}

std::optional<gf2::BitVector> punctured_eval(const PuncturedKey& key, const gf2::BitVector& x) {
  check_len(x, key.in_len, "punctured_eval");
  for (const auto& node : key.copath) {
    if (is_prefix(node.prefix, x)) return leaf_output(walk(node.seed, x, node.prefix.size()), key.out_len);
  }
  return std::nullopt;
}

PairwiseHash PairwiseHash::sample(std::size_t in_len, std::size_t out_len, Rng& rng) {
  PairwiseHash h;
  h.in_len = in_len;
  for (std::size_t i = 0; i < out_len; ++i) h.rows.push_back(gf2::BitVector::random(in_len, rng));
  h.offset = gf2::BitVector::random(out_len, rng);
  return h;
}

gf2::BitVector PairwiseHash::apply(const gf2::BitVector& x) const {
  check_len(x, in_len, "PairwiseHash::apply");
  gf2::BitVector out = offset;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (gf2::dot(rows[i], x)) out.flip(i);
  }
  return out;
}

gf2::BitVector masked_eval(const MaskedPrfKey& key, const gf2::BitVector& x) {
  return ggm_eval(key.ggm, x) ^ key.hash.apply(x);
}

PuncturedMaskedKey puncture(const MaskedPrfKey& key, std::span<const gf2::BitVector> set) {
  return PuncturedMaskedKey{puncture(key.ggm, set), key.hash};
}

std::optional<gf2::BitVector> punctured_eval(const PuncturedMaskedKey& key, const gf2::BitVector& x) {
  auto y = punctured_eval(key.ggm, x);
  if (!y) return std::nullopt;
  return *y ^ key.hash.apply(x);
}

MaskedPrfKey injective_prf_keygen(std::size_t l2, std::size_t l1, std::size_t lambda,
                                  ParamMode mode, Rng& rng) {
  if (mode == ParamMode::kStrict && l1 < 2 * l2 + lambda) {
    throw std::invalid_argument("injective_prf_keygen: requires l1 >= 2*l2 + lambda");
  }
  GgmKey ggm = ggm_keygen(l2, l1, rng);
  return MaskedPrfKey{ggm, PairwiseHash::sample(l2, l1, rng)};
}

gf2::BitVector injective_prf_eval(const MaskedPrfKey& key, const gf2::BitVector& x) {
  return masked_eval(key, x);
}

MaskedPrfKey extracting_prf_keygen(std::size_t n, std::size_t m, std::size_t lambda,
                                   ParamMode mode, Rng& rng) {
  if (mode == ParamMode::kStrict && n < m + 2 * lambda + 4) {
    throw std::invalid_argument("extracting_prf_keygen: requires n >= m + 2*lambda + 4");
  }
  GgmKey ggm = ggm_keygen(n, m, rng);
  return MaskedPrfKey{ggm, PairwiseHash::sample(n, m, rng)};
}

gf2::BitVector extracting_prf_eval(const MaskedPrfKey& key, const gf2::BitVector& x) {
  return masked_eval(key, x);
}

std::size_t trigger_program_bits(std::size_t l0, std::size_t m_len) { return 2 + l0 + m_len; }

std::vector<std::string> ParamsReport::violations() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.satisfied) out.push_back(c.name);
  }
  return out;
}

ParamsReport params_check(std::size_t l0, std::size_t l1, std::size_t l2, std::size_t lambda,
                          std::size_t m) {
  ParamsReport r;
  r.n = l0 + l1 + l2;
  const auto n = static_cast<long long>(r.n);
  const auto L0 = static_cast<long long>(l0);
  const auto L1 = static_cast<long long>(l1);
  const auto L2 = static_cast<long long>(l2);
  const auto lam = static_cast<long long>(lambda);
  const auto M = static_cast<long long>(m);
  r.checks.push_back(make_check("extracting", "n >= m + 2*lambda + 4", n, M + 2 * lam + 4));
  r.checks.push_back(make_check("injective", "l1 >= 2*l2 + lambda", L1, 2 * L2 + lam));
  r.checks.push_back(make_check("trigger-capacity", "l2 >= l0 + |Q|", L2,
                                L0 + static_cast<long long>(trigger_program_bits(l0, m))));
  ConstraintCheck even = make_check("even-lambda", "lambda even and positive", lam > 0 && lam % 2 == 0, 1);
  r.checks.push_back(even);
  return r;
}

}  // namespace cosetlab::prf
