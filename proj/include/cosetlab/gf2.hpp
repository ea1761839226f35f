#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cosetlab/rng.hpp"

namespace cosetlab::gf2 {

// Packed vector over F_2. Positions are 0-based from the left; position 0 is
// the most significant bit, so a vector of length n <= 64 reads as the
// integer to_uint() and orders lexicographically like its 0/1 string.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n);

  static BitVector from_string(std::string_view bits);
  static BitVector from_uint(std::size_t n, std::uint64_t value);
  // Nibbles, most significant first; trailing padding bits must be zero.
  static BitVector from_hex(std::string_view hex, std::size_t n);
  static BitVector random(std::size_t n, Rng& rng);
  static BitVector concat(std::span<const BitVector> parts);
  static BitVector concat(const BitVector& a, const BitVector& b);

  std::size_t size() const { return n_; }
  bool get(std::size_t pos) const;
  void set(std::size_t pos, bool value);
  void flip(std::size_t pos);
  bool is_zero() const;
  std::size_t popcount() const;
  // Position of the leftmost set bit, or size() if the vector is zero.
  std::size_t leading_one() const;

  std::uint64_t to_uint() const;
  std::string to_string() const;
  std::string to_hex() const;

  BitVector slice(std::size_t pos, std::size_t len) const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

  std::span<const std::uint64_t> words() const { return words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Inner product mod 2.
bool dot(const BitVector& a, const BitVector& b);

// Subspace of F_2^n stored as its reduced row-echelon basis. Two Subspace
// values are equal exactly when they span the same set.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t n);
  static Subspace full(std::size_t n);
  static Subspace span(std::size_t n, std::span<const BitVector> rows);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<BitVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const BitVector& v) const;
  // Same test on the integer form of a vector; requires n <= 64.
  bool contains_index(std::uint64_t v) const;
  // Clears every pivot position of v using the basis rows.
  BitVector reduce(const BitVector& v) const;
  std::uint64_t reduce_index(std::uint64_t v) const;

  // Sum of the basis rows selected by the low dim() bits of coeffs, the
  // highest of those bits selecting the first row.
  BitVector element(std::uint64_t coeffs) const;
  std::uint64_t element_index(std::uint64_t coeffs) const;
  // All 2^dim elements; dim must be at most 24.
  std::vector<BitVector> elements() const;

  // Rows joined by newlines.
  std::string to_string() const;
  static Subspace from_string(std::size_t n, std::string_view text);

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::uint64_t> packed_;  // integer form of rows_, n <= 64 only
};

// Affine subspace space + offset with the offset kept canonical.
class Coset {
 public:
  Coset(Subspace space, const BitVector& offset);

  const Subspace& space() const { return space_; }
  const BitVector& offset() const { return offset_; }
  bool contains(const BitVector& v) const;

  friend bool operator==(const Coset&, const Coset&) = default;

 private:
  Subspace space_;
  BitVector offset_;
};

Subspace rref(std::size_t n, std::span<const BitVector> rows);
// Infers n from the rows, which must be non-empty.
Subspace rref(std::span<const BitVector> rows);

Subspace sample_subspace(std::size_t n, std::size_t d, Rng& rng);
Subspace sample_subspace(std::size_t n, std::size_t d, std::uint64_t seed);

Subspace complement(const Subspace& a);
Subspace sum(const Subspace& a, const Subspace& b);

bool coset_contains(const Subspace& a, const BitVector& s, const BitVector& v);

// Lexicographically smallest element of a + s, found one entry at a time by
// checking whether the entry can still be zero.
BitVector canonical_rep(const Subspace& a, const BitVector& s);

std::size_t intersect_dim(const Subspace& a, const Subspace& b);

Subspace sample_superspace(const Subspace& a, std::size_t d1, Rng& rng);
Subspace sample_superspace(const Subspace& a, std::size_t d1, std::uint64_t seed);

}  // namespace cosetlab::gf2
