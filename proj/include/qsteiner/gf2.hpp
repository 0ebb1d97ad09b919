#pragma once

// Bit-packed linear algebra over GF(2) for dimensions up to 64.
//
// Conventions used throughout the project:
//   * a vector of GF(2)^n is one 64-bit word, coordinate i in bit i;
//   * a BitMatrix stores rows, entry (i, j) is bit j of row i;
//   * a matrix acts on column vectors, v -> M v, so (M v)_i = <row_i, v>.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsteiner/error.hpp"

namespace qsteiner {

using Word = std::uint64_t;

inline constexpr int kMaxDim = 64;

// Mask with the low `width` bits set.
constexpr Word low_mask(int width) noexcept {
  return width >= 64 ? ~Word{0} : ((Word{1} << width) - 1);
}

constexpr bool parity(Word w) noexcept { return std::popcount(w) & 1; }

class BitVector {
 public:
  BitVector() = default;
  BitVector(int width, Word bits);

  int width() const noexcept { return width_; }
  Word bits() const noexcept { return bits_; }
  bool get(int i) const { return (bits_ >> i) & 1U; }
  void set(int i, bool value);
  int weight() const noexcept { return std::popcount(bits_); }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  int width_ = 0;
  Word bits_ = 0;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int nrows, int ncols);
  BitMatrix(int ncols, std::vector<Word> rows);

  static BitMatrix identity(int n);
  static BitMatrix zero(int nrows, int ncols) { return BitMatrix(nrows, ncols); }

  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows() == cols_; }

  bool get(int i, int j) const { return (rows_[i] >> j) & 1U; }
  void set(int i, int j, bool value);
  Word row(int i) const { return rows_[i]; }
  void set_row(int i, Word bits);
  std::span<const Word> row_words() const noexcept { return rows_; }

  BitVector row_vector(int i) const { return BitVector(cols_, rows_[i]); }

  BitMatrix transpose() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  int cols_ = 0;
  std::vector<Word> rows_;
};

// M v for a column vector v given as a word.
inline Word mat_vec(std::span<const Word> rows, Word v) noexcept {
  Word out = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) out |= Word{parity(rows[i] & v)} << i;
  return out;
}
inline Word mat_vec(const BitMatrix& m, Word v) noexcept { return mat_vec(m.row_words(), v); }

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);

struct RrefResult {
  BitMatrix reduced;        // zero rows removed
  std::vector<int> pivots;  // strictly increasing
  int rank = 0;
};

RrefResult rref(const BitMatrix& m);
int rank(const BitMatrix& m);

// In-place reduced row echelon form of up to 64 words; the pivot of a row is its
// lowest set bit. The first `rank` entries of `rows` receive the reduced basis sorted
// by pivot; the remainder is zeroed. Returns the rank.
inline int rref_words(std::span<Word> rows) noexcept {
  Word basis[kMaxDim];
  int rk = 0;
  for (Word v : rows) {
    for (int j = 0; j < rk && v; ++j) {
      if ((v >> std::countr_zero(basis[j])) & 1U) v ^= basis[j];
    }
    if (!v) continue;
    const int p = std::countr_zero(v);
    for (int j = 0; j < rk; ++j) {
      if ((basis[j] >> p) & 1U) basis[j] ^= v;
    }
    int pos = rk;
    while (pos > 0 && std::countr_zero(basis[pos - 1]) > p) {
      basis[pos] = basis[pos - 1];
      --pos;
    }
    basis[pos] = v;
    if (++rk == kMaxDim) break;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i < static_cast<std::size_t>(rk) ? basis[i] : 0;
  return rk;
}

BitMatrix mat_inverse(const BitMatrix& m);
BitMatrix mat_power(const BitMatrix& m, std::uint64_t e);

// Smallest e >= 1 with M^e = I, found by iteration; LimitError if it exceeds `bound`.
std::uint64_t matrix_order(const BitMatrix& m, std::uint64_t bound);

// True iff the multiplicative order of M is exactly `e` (M^e = I and M^(e/p) != I for
// every prime p dividing e). Handles orders far beyond what iteration can reach.
bool has_order(const BitMatrix& m, std::uint64_t e);

std::vector<std::uint64_t> prime_factors(std::uint64_t value);

// Monic polynomial of degree n; bit i of `low` is the coefficient of x^i for i < n.
struct GF2Polynomial {
  int degree = 0;
  Word low = 0;

  bool coefficient(int i) const { return i == degree ? true : ((low >> i) & 1U); }
  std::string to_string() const;
  friend bool operator==(const GF2Polynomial&, const GF2Polynomial&) = default;
};

inline constexpr int kMinPrimitiveDegree = 2;
inline constexpr int kMaxPrimitiveDegree = 32;

// Embedded table entry of degree n, 2 <= n <= 32.
GF2Polynomial primitive_polynomial(int n);

// Multiplication by x on GF(2)[x]/(p) in the power basis 1, x, ..., x^(n-1):
// column j is x^(j+1) reduced mod p.
BitMatrix companion_matrix(const GF2Polynomial& p);

// The map a -> a^2 on GF(2)[x]/(p) in the power basis: column j is x^(2j) mod p.
BitMatrix frobenius_matrix(const GF2Polynomial& p);

// Matrix text format: one row per line of '0'/'1' characters, leftmost is coordinate 0.
std::string format_matrix(const BitMatrix& m);

}  // namespace qsteiner
