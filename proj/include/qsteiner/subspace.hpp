#pragma once

// Subspaces of GF(2)^n in canonical form, dense ranking, enumeration and counting.
//
// A subspace is identified by its reduced row echelon basis (pivot = lowest set bit
// of a row, rows sorted by pivot, zero rows dropped). The total order used everywhere
// (representatives, enumeration, file output) compares
//   dimension, then pivot mask as an integer, then basis rows lexicographically.
// The packed key and the dense rank are both monotone in this order.

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qsteiner/gf2.hpp"

namespace qsteiner {

using BigInt = boost::multiprecision::cpp_int;

// 128-bit packed key: hi = dim << 56 | pivot mask, lo = concatenated non-pivot
// entries (row 0 most significant, higher columns more significant within a row).
struct SubspaceKey {
  Word hi = 0;
  Word lo = 0;
  friend auto operator<=>(const SubspaceKey&, const SubspaceKey&) = default;
};

class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(int n);
  // Rows must already be a reduced echelon basis; this is checked.
  static Subspace from_rref(int n, std::vector<Word> rows);

  int ambient() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(rows_.size()); }
  std::span<const Word> rows() const noexcept { return rows_; }
  BitMatrix basis() const { return BitMatrix(n_, rows_); }
  std::vector<int> pivots() const;
  Word pivot_mask() const noexcept;

  // Number of non-pivot entries to the right of each pivot.
  int free_bits() const noexcept;
  bool has_packed_key() const noexcept { return n_ <= 56 && free_bits() <= 64; }
  SubspaceKey key() const;
  // Order-equivalent key valid for every n <= 64.
  std::vector<Word> wide_key() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  Subspace(int n, std::vector<Word> rows) : n_(n), rows_(std::move(rows)) {}
  friend Subspace canonicalize(int n, std::span<const Word> rows);

  int n_ = 0;
  std::vector<Word> rows_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

Subspace canonicalize(const BitMatrix& m);
Subspace canonicalize(int n, std::span<const Word> rows);

bool contains(const Subspace& inner, const Subspace& outer);
bool contains_vector(const Subspace& space, Word v) noexcept;
int intersection_dim(const Subspace& u, const Subspace& v);
int subspace_distance(const Subspace& u, const Subspace& v);

// Gaussian coefficient [n k]_q, exact.
BigInt gaussian_binomial(int n, int k, int q);
std::uint64_t gaussian_binomial_u64(int n, int k);  // q = 2; LimitError when >= 2^64

struct SpreadInfo {
  bool exists = false;
  std::optional<BigInt> size;
};
SpreadInfo spread_size(int n, int k, int q);

// Bijection between k-subspaces of GF(2)^n and [0, [n k]_2), monotone in the subspace
// order. Requires [n k]_2 < 2^64.
class SubspaceIndexer {
 public:
  SubspaceIndexer(int n, int k);

  int ambient() const noexcept { return n_; }
  int dim() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return offsets_.back(); }

  // `rref_rows` must hold exactly k reduced rows.
  std::uint64_t rank(std::span<const Word> rref_rows) const noexcept;
  std::uint64_t rank(const Subspace& s) const;
  void unrank(std::uint64_t r, std::span<Word> out) const;
  Subspace subspace(std::uint64_t r) const;

 private:
  std::uint64_t mask_index(Word mask) const noexcept;
  Word mask_at(std::uint64_t index) const;

  int n_;
  int k_;
  std::vector<std::uint64_t> offsets_;  // per pivot mask, in increasing mask order
};

inline constexpr std::uint64_t kDefaultEnumerationGuard = 100'000'000;

// Every k-subspace of GF(2)^n exactly once, in increasing order. LimitError when
// [n k]_2 exceeds the guard (use orbit extension instead).
void for_each_subspace(int n, int k, const std::function<void(const Subspace&)>& fn,
                       std::uint64_t guard = kDefaultEnumerationGuard);
std::vector<Subspace> enumerate_subspaces(int n, int k,
                                          std::uint64_t guard = kDefaultEnumerationGuard);

// All t-subspaces of a d-dimensional space, pre-tabulated as coefficient rows so the
// t-subspaces of any concrete d-dimensional subspace can be produced with a few XORs.
class SubspacesOfEnumerator {
 public:
  SubspacesOfEnumerator(int d, int t);

  int outer_dim() const noexcept { return d_; }
  int inner_dim() const noexcept { return t_; }
  std::size_t count() const noexcept { return count_; }

  // Calls fn(std::span<const Word>) with the reduced basis (t rows) of every t-subspace
  // of the space spanned by `basis` (d independent rows).
  template <class Fn>
  void for_each(std::span<const Word> basis, Fn&& fn) const {
    Word buf[kMaxDim];
    for (std::size_t s = 0; s < count_; ++s) {
      for (int i = 0; i < t_; ++i) {
        Word acc = 0;
        for (Word c = coeffs_[s * t_ + i]; c; c &= c - 1) acc ^= basis[std::countr_zero(c)];
        buf[i] = acc;
      }
      rref_words(std::span<Word>(buf, static_cast<std::size_t>(t_)));
      fn(std::span<const Word>(buf, static_cast<std::size_t>(t_)));
    }
  }

 private:
  int d_;
  int t_;
  std::size_t count_ = 0;
  std::vector<Word> coeffs_;
};

std::vector<Subspace> subspaces_of(const Subspace& v, int t);

}  // namespace qsteiner
