#include "cosetlab/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cosetlab::gf2 {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

std::uint64_t mask_bit(std::size_t pos) { return std::uint64_t{1} << (63 - pos % kWordBits); }

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

// BitVector ------------------------------------------------------------------

BitVector::BitVector(std::size_t n) : n_(n), words_(word_count(n), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitVector::from_string: expected 0/1 characters");
    }
  }
  return v;
}

BitVector BitVector::from_uint(std::size_t n, std::uint64_t value) {
  if (n > 64) throw std::invalid_argument("BitVector::from_uint: n > 64");
  if (n < 64 && (value >> n) != 0) {
    throw std::invalid_argument("BitVector::from_uint: value does not fit in n bits");
  }
  BitVector v(n);
  if (n > 0) v.words_[0] = value << (64 - n);
  return v;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t n) {
  if (hex.size() != (n + 3) / 4) {
    throw std::invalid_argument("BitVector::from_hex: wrong number of hex digits");
  }
  BitVector v(n);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    int x = hex_value(hex[i]);
    if (x < 0) throw std::invalid_argument("BitVector::from_hex: bad hex digit");
    for (int b = 0; b < 4; ++b) {
      std::size_t pos = 4 * i + b;
      bool bit = (x >> (3 - b)) & 1;
      if (pos >= n) {
        if (bit) throw std::invalid_argument("BitVector::from_hex: nonzero padding");
      } else {
        v.set(pos, bit);
      }
    }
  }
  return v;
}

BitVector BitVector::random(std::size_t n, Rng& rng) {
  BitVector v(n);
  for (auto& w : v.words_) w = rng.next();
  if (n % kWordBits != 0 && !v.words_.empty()) {
    v.words_.back() &= ~std::uint64_t{0} << (kWordBits - n % kWordBits);
  }
  return v;
}

BitVector BitVector::concat(std::span<const BitVector> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  BitVector out(total);
  std::size_t at = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.get(i)) out.set(at + i, true);
    }
    at += p.size();
  }
  return out;
}

BitVector BitVector::concat(const BitVector& a, const BitVector& b) {
  const BitVector parts[] = {a, b};
  return concat(parts);
}

bool BitVector::get(std::size_t pos) const {
  if (pos >= n_) throw std::out_of_range("BitVector::get");
  return (words_[pos / kWordBits] & mask_bit(pos)) != 0;
}

void BitVector::set(std::size_t pos, bool value) {
  if (pos >= n_) throw std::out_of_range("BitVector::set");
  if (value) {
    words_[pos / kWordBits] |= mask_bit(pos);
  } else {
    words_[pos / kWordBits] &= ~mask_bit(pos);
  }
}

void BitVector::flip(std::size_t pos) {
  if (pos >= n_) throw std::out_of_range("BitVector::flip");
  words_[pos / kWordBits] ^= mask_bit(pos);
}

bool BitVector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitVector::leading_one() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countl_zero(words_[i]));
  }
  return n_;
}

std::uint64_t BitVector::to_uint() const {
  if (n_ > 64) throw std::invalid_argument("BitVector::to_uint: n > 64");
  if (n_ == 0) return 0;
  return words_[0] >> (64 - n_);
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve((n_ + 3) / 4);
  for (std::size_t i = 0; i < n_; i += 4) {
    int x = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      x <<= 1;
      if (i + b < n_ && get(i + b)) x |= 1;
    }
    s.push_back(kDigits[x]);
  }
  return s;
}

BitVector BitVector::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > n_) throw std::out_of_range("BitVector::slice");
  BitVector out(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (get(pos + i)) out.set(i, true);
  }
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same(n_, other.n_, "BitVector xor");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same(n_, other.n_, "BitVector and");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool dot(const BitVector& a, const BitVector& b) {
  require_same(a.size(), b.size(), "dot");
  auto wa = a.words();
  auto wb = b.words();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) acc ^= wa[i] & wb[i];
  return (std::popcount(acc) & 1) != 0;
}

// Subspace -------------------------------------------------------------------

Subspace Subspace::zero(std::size_t n) {
  Subspace s;
  s.n_ = n;
  return s;
}

Subspace Subspace::full(std::size_t n) {
  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    BitVector e(n);
    e.set(i, true);
    rows.push_back(std::move(e));
  }
  return span(n, rows);
}

Subspace Subspace::span(std::size_t n, std::span<const BitVector> input) {
  std::vector<BitVector> rows;
  for (const auto& r : input) {
    require_same(r.size(), n, "rref");
    rows.push_back(r);
  }
  // Gauss-Jordan elimination, pivot columns left to right.
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && !rows[sel].get(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);

  Subspace s;
  s.n_ = n;
  s.rows_ = std::move(rows);
  s.pivots_ = std::move(pivots);
  if (n <= 64) {
    for (const auto& r : s.rows_) s.packed_.push_back(r.to_uint());
  }
  return s;
}

bool Subspace::contains(const BitVector& v) const {
  require_same(v.size(), n_, "Subspace::contains");
  return reduce(v).is_zero();
}

bool Subspace::contains_index(std::uint64_t v) const { return reduce_index(v) == 0; }

BitVector Subspace::reduce(const BitVector& v) const {
  require_same(v.size(), n_, "Subspace::reduce");
  BitVector out = v;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    if (out.get(pivots_[j])) out ^= rows_[j];
  }
  return out;
}

std::uint64_t Subspace::reduce_index(std::uint64_t v) const {
  if (n_ > 64) throw std::invalid_argument("Subspace::reduce_index: n > 64");
  for (std::size_t j = 0; j < packed_.size(); ++j) {
    if ((v >> (n_ - 1 - pivots_[j])) & 1) v ^= packed_[j];
  }
  return v;
}

BitVector Subspace::element(std::uint64_t coeffs) const {
  BitVector out(n_);
  const std::size_t d = rows_.size();
  for (std::size_t j = 0; j < d; ++j) {
    if ((coeffs >> (d - 1 - j)) & 1) out ^= rows_[j];
  }
  return out;
}

std::uint64_t Subspace::element_index(std::uint64_t coeffs) const {
  if (n_ > 64) throw std::invalid_argument("Subspace::element_index: n > 64");
  std::uint64_t out = 0;
  const std::size_t d = packed_.size();
  for (std::size_t j = 0; j < d; ++j) {
    if ((coeffs >> (d - 1 - j)) & 1) out ^= packed_[j];
  }
  return out;
}

std::vector<BitVector> Subspace::elements() const {
  if (dim() > 24) throw std::invalid_argument("Subspace::elements: dimension too large to enumerate");
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << dim());
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << dim()); ++c) out.push_back(element(c));
  return out;
}

std::string Subspace::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    if (j > 0) s.push_back('\n');
    s += rows_[j].to_string();
  }
  return s;
}

Subspace Subspace::from_string(std::size_t n, std::string_view text) {
  std::vector<BitVector> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) rows.push_back(BitVector::from_string(line));
    start = end + 1;
  }
  return span(n, rows);
}

// Coset ----------------------------------------------------------------------

Coset::Coset(Subspace space, const BitVector& offset)
    : space_(std::move(space)), offset_(canonical_rep(space_, offset)) {}

bool Coset::contains(const BitVector& v) const { return coset_contains(space_, offset_, v); }

// Free functions -------------------------------------------------------------

Subspace rref(std::size_t n, std::span<const BitVector> rows) { return Subspace::span(n, rows); }

Subspace rref(std::span<const BitVector> rows) {
  if (rows.empty()) throw std::invalid_argument("rref: cannot infer n from an empty row list");
  return Subspace::span(rows.front().size(), rows);
}

namespace {

// Extends base by uniformly random vectors, rejecting any that fall in the
// current span, until the dimension reaches d.
Subspace extend_randomly(const Subspace& base, std::size_t d, Rng& rng) {
  const std::size_t n = base.ambient_dim();
  std::vector<BitVector> rows = base.basis();
  Subspace current = base;
  while (current.dim() < d) {
    BitVector v = BitVector::random(n, rng);
    if (current.contains(v)) continue;
    rows.push_back(std::move(v));
    current = Subspace::span(n, rows);
    rows = current.basis();
  }
  return current;
}

}  // namespace

Subspace sample_subspace(std::size_t n, std::size_t d, Rng& rng) {
  if (d > n) throw std::invalid_argument("sample_subspace: d > n");
  return extend_randomly(Subspace::zero(n), d, rng);
}

Subspace sample_subspace(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return sample_subspace(n, d, rng);
}

Subspace complement(const Subspace& a) {
  // Kernel of the RREF matrix: one basis vector per free column.
  const std::size_t n = a.ambient_dim();
  const auto& rows = a.basis();
  const auto& piv = a.pivots();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<BitVector> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f, true);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j].get(f)) v.set(piv[j], true);
    }
    out.push_back(std::move(v));
  }
  return Subspace::span(n, out);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same(a.ambient_dim(), b.ambient_dim(), "sum");
  std::vector<BitVector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), rows);
}

bool coset_contains(const Subspace& a, const BitVector& s, const BitVector& v) {
  require_same(a.ambient_dim(), s.size(), "coset_contains");
  require_same(a.ambient_dim(), v.size(), "coset_contains");
  return a.contains(v ^ s);
}

BitVector canonical_rep(const Subspace& a, const BitVector& s) {
  const std::size_t n = a.ambient_dim();
  require_same(n, s.size(), "canonical_rep");
  const auto& rows = a.basis();
  const std::size_t d = rows.size();
  if (d > 64) return a.reduce(s);

  // Unknowns are the coefficients c of v = s + sum_j c_j rows[j]. Fixing
  // entry i of v to t adds the equation sum_j c_j rows[j][i] = s_i + t.
  // Equations are kept in echelon form keyed by their leading coefficient.
  std::vector<std::uint64_t> eq_lhs(d, 0);
  std::vector<bool> eq_rhs(d, false);
  std::vector<bool> used(d, false);

  BitVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t lhs = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (rows[j].get(i)) lhs |= std::uint64_t{1} << (d - 1 - j);
    }
    bool rhs = s.get(i);  // target entry 0
    while (lhs != 0) {
      std::size_t lead = 63 - static_cast<std::size_t>(std::countl_zero(lhs));
      if (!used[lead]) break;
      lhs ^= eq_lhs[lead];
      rhs = rhs != eq_rhs[lead];
    }
    if (lhs != 0) {
      // Entry is still free: fix it to zero.
      std::size_t lead = 63 - static_cast<std::size_t>(std::countl_zero(lhs));
      used[lead] = true;
      eq_lhs[lead] = lhs;
      eq_rhs[lead] = rhs;
    } else if (rhs) {
      // Zero is infeasible given earlier entries, so the entry is forced to one.
      out.set(i, true);
    }
  }
  return out;
}

std::size_t intersect_dim(const Subspace& a, const Subspace& b) {
  require_same(a.ambient_dim(), b.ambient_dim(), "intersect_dim");
  return a.dim() + b.dim() - sum(a, b).dim();
}

Subspace sample_superspace(const Subspace& a, std::size_t d1, Rng& rng) {
  if (d1 < a.dim() || d1 > a.ambient_dim()) {
    throw std::invalid_argument("sample_superspace: d1 out of range");
  }
  return extend_randomly(a, d1, rng);
}

Subspace sample_superspace(const Subspace& a, std::size_t d1, std::uint64_t seed) {
  Rng rng(seed);
  return sample_superspace(a, d1, rng);
}

}  // namespace cosetlab::gf2
