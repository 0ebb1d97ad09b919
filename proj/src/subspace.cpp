#include "qsteiner/subspace.hpp"

#include <algorithm>
#include <array>

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace qsteiner {

namespace {

inline Word extract_bits(Word value, Word mask) noexcept {
#if defined(__BMI2__)
  return _pext_u64(value, mask);
#else
  Word out = 0;
  int pos = 0;
  for (; mask; mask &= mask - 1, ++pos) {
    if (value & (mask & -mask)) out |= Word{1} << pos;
  }
  return out;
#endif
}

inline Word deposit_bits(Word value, Word mask) noexcept {
#if defined(__BMI2__)
  return _pdep_u64(value, mask);
#else
  Word out = 0;
  for (; mask; mask &= mask - 1, value >>= 1) {
    if (value & 1U) out |= mask & -mask;
  }
  return out;
#endif
}

// Non-pivot columns to the right of pivot p.
inline Word free_columns(int n, Word mask, int p) noexcept {
  return low_mask(n) & ~mask & ~low_mask(p + 1);
}

using BinomialTable = std::array<std::array<std::uint64_t, kMaxDim + 2>, kMaxDim + 2>;

const BinomialTable& binomials() {
  static const BinomialTable table = [] {
    BinomialTable t{};
    for (int n = 0; n <= kMaxDim + 1; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

void check_params(int n, int k, const char* what) {
  if (n < 0 || n > kMaxDim || k < 0 || k > n) {
    throw DimensionError(std::string(what) + ": need 0 <= k <= n <= 64, got n=" + std::to_string(n) +
                         " k=" + std::to_string(k));
  }
}

}  // namespace

Subspace Subspace::zero(int n) {
  if (n < 0 || n > kMaxDim) throw DimensionError("Subspace::zero: ambient dimension out of range");
  return Subspace(n, {});
}

Subspace Subspace::from_rref(int n, std::vector<Word> rows) {
  Subspace s = canonicalize(n, rows);
  if (s.rows_ != rows) throw DimensionError("Subspace::from_rref: rows are not a reduced echelon basis");
  return s;
}

std::vector<int> Subspace::pivots() const {
  std::vector<int> out;
  out.reserve(rows_.size());
  for (Word r : rows_) out.push_back(std::countr_zero(r));
  return out;
}

Word Subspace::pivot_mask() const noexcept {
  Word m = 0;
  for (Word r : rows_) m |= r & -r;
  return m;
}

int Subspace::free_bits() const noexcept {
  const Word mask = pivot_mask();
  int total = 0;
  for (Word r : rows_) total += std::popcount(free_columns(n_, mask, std::countr_zero(r)));
  return total;
}

SubspaceKey Subspace::key() const {
  if (!has_packed_key()) throw LimitError("Subspace::key: does not fit 128 bits; use wide_key()");
  const Word mask = pivot_mask();
  SubspaceKey k{(static_cast<Word>(dim()) << 56) | mask, 0};
  for (Word r : rows_) {
    const Word fc = free_columns(n_, mask, std::countr_zero(r));
    const int w = std::popcount(fc);
    k.lo = (w == 64 ? 0 : (k.lo << w)) | extract_bits(r, fc);
  }
  return k;
}

std::vector<Word> Subspace::wide_key() const {
  std::vector<Word> out;
  out.reserve(rows_.size() + 2);
  out.push_back(static_cast<Word>(dim()));
  out.push_back(pivot_mask());
  out.insert(out.end(), rows_.begin(), rows_.end());
  return out;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.pivot_mask() <=> b.pivot_mask(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.rows_.begin(), a.rows_.end(), b.rows_.begin(),
                                                b.rows_.end());
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(s.ambient());
  for (Word r : s.rows()) {
    h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

Subspace canonicalize(const BitMatrix& m) { return canonicalize(m.cols(), m.row_words()); }

Subspace canonicalize(int n, std::span<const Word> rows) {
  if (n < 0 || n > kMaxDim) throw DimensionError("canonicalize: ambient dimension out of range");
  std::vector<Word> work(rows.begin(), rows.end());
  for (Word r : work) {
    if (r & ~low_mask(n)) throw DimensionError("canonicalize: row wider than ambient dimension");
  }
  const int rk = rref_words(work);
  work.resize(static_cast<std::size_t>(rk));
  return Subspace(n, std::move(work));
}

bool contains_vector(const Subspace& space, Word v) noexcept {
  for (Word r : space.rows()) {
    if ((v >> std::countr_zero(r)) & 1U) v ^= r;
  }
  return v == 0;
}

bool contains(const Subspace& inner, const Subspace& outer) {
  if (inner.ambient() != outer.ambient()) throw DimensionError("contains: ambient dimensions differ");
  return std::ranges::all_of(inner.rows(), [&](Word r) { return contains_vector(outer, r); });
}

int intersection_dim(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw DimensionError("intersection_dim: ambient dimensions differ");
  std::vector<Word> stacked(u.rows().begin(), u.rows().end());
  stacked.insert(stacked.end(), v.rows().begin(), v.rows().end());
  return u.dim() + v.dim() - rref_words(stacked);
}

int subspace_distance(const Subspace& u, const Subspace& v) {
  return u.dim() + v.dim() - 2 * intersection_dim(u, v);
}

BigInt gaussian_binomial(int n, int k, int q) {
  if (k < 0 || n < 0 || k > n) throw DimensionError("gaussian_binomial: need 0 <= k <= n");
  if (q < 2) throw DimensionError("gaussian_binomial: need q >= 2");
  BigInt num = 1;
  BigInt den = 1;
  const BigInt bq = q;
  for (int i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(bq, static_cast<unsigned>(n - i)) - 1;
    den *= boost::multiprecision::pow(bq, static_cast<unsigned>(k - i)) - 1;
  }
  return num / den;
}

std::uint64_t gaussian_binomial_u64(int n, int k) {
  const BigInt v = gaussian_binomial(n, k, 2);
  if (v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw LimitError("gaussian_binomial_u64: [" + std::to_string(n) + " " + std::to_string(k) +
                     "]_2 does not fit 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

SpreadInfo spread_size(int n, int k, int q) {
  if (k < 1 || k > n) throw DimensionError("spread_size: need 1 <= k <= n");
  if (q < 2) throw DimensionError("spread_size: need q >= 2");
  if (n % k != 0) return {false, std::nullopt};
  const BigInt bq = q;
  return {true, (boost::multiprecision::pow(bq, static_cast<unsigned>(n)) - 1) /
                    (boost::multiprecision::pow(bq, static_cast<unsigned>(k)) - 1)};
}

// ---------------------------------------------------------------------------------
// SubspaceIndexer

SubspaceIndexer::SubspaceIndexer(int n, int k) : n_(n), k_(k) {
  check_params(n, k, "SubspaceIndexer");
  (void)gaussian_binomial_u64(n, k);
  const std::uint64_t masks = binomials()[n][k];
  if (masks > (std::uint64_t{1} << 26)) throw LimitError("SubspaceIndexer: too many pivot patterns");
  offsets_.reserve(masks + 1);
  offsets_.push_back(0);
  for (std::uint64_t i = 0; i < masks; ++i) {
    const Word mask = mask_at(i);
    int free = 0;
    for (Word m = mask; m; m &= m - 1) free += std::popcount(free_columns(n, mask, std::countr_zero(m)));
    offsets_.push_back(offsets_.back() + (std::uint64_t{1} << free));
  }
}

std::uint64_t SubspaceIndexer::mask_index(Word mask) const noexcept {
  // Colex rank of the pivot set; colex order equals increasing mask value.
  const auto& b = binomials();
  std::uint64_t idx = 0;
  int i = 1;
  for (; mask; mask &= mask - 1, ++i) idx += b[std::countr_zero(mask)][i];
  return idx;
}

Word SubspaceIndexer::mask_at(std::uint64_t index) const {
  const auto& b = binomials();
  Word mask = 0;
  int hi = n_;
  for (int i = k_; i >= 1; --i) {
    int p = hi - 1;
    while (p >= 0 && b[p][i] > index) --p;
    mask |= Word{1} << p;
    index -= b[p][i];
    hi = p;
  }
  return mask;
}

std::uint64_t SubspaceIndexer::rank(std::span<const Word> rows) const noexcept {
  Word mask = 0;
  for (Word r : rows) mask |= r & -r;
  std::uint64_t value = 0;
  for (Word r : rows) {
    const Word fc = free_columns(n_, mask, std::countr_zero(r));
    value = (value << std::popcount(fc)) | extract_bits(r, fc);
  }
  return offsets_[mask_index(mask)] + value;
}

std::uint64_t SubspaceIndexer::rank(const Subspace& s) const {
  if (s.ambient() != n_ || s.dim() != k_) throw DimensionError("SubspaceIndexer::rank: wrong (n, k)");
  return rank(s.rows());
}

void SubspaceIndexer::unrank(std::uint64_t r, std::span<Word> out) const {
  if (r >= size()) throw DimensionError("SubspaceIndexer::unrank: rank out of range");
  if (out.size() < static_cast<std::size_t>(k_)) throw DimensionError("SubspaceIndexer::unrank: buffer too small");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), r);
  const auto idx = static_cast<std::uint64_t>(it - offsets_.begin() - 1);
  const Word mask = mask_at(idx);
  std::uint64_t value = r - offsets_[idx];
  std::array<int, kMaxDim> piv{};
  int i = 0;
  for (Word m = mask; m; m &= m - 1) piv[i++] = std::countr_zero(m);
  for (int row = k_ - 1; row >= 0; --row) {
    const Word fc = free_columns(n_, mask, piv[row]);
    const int w = std::popcount(fc);
    out[row] = (Word{1} << piv[row]) | deposit_bits(value & low_mask(w), fc);
    value = w == 64 ? 0 : (value >> w);
  }
}

Subspace SubspaceIndexer::subspace(std::uint64_t r) const {
  std::vector<Word> rows(static_cast<std::size_t>(k_));
  unrank(r, rows);
  return Subspace::from_rref(n_, std::move(rows));
}

void for_each_subspace(int n, int k, const std::function<void(const Subspace&)>& fn,
                       std::uint64_t guard) {
  check_params(n, k, "enumerate_subspaces");
  if (gaussian_binomial(n, k, 2) > BigInt(guard)) {
    throw LimitError("enumerate_subspaces: [" + std::to_string(n) + " " + std::to_string(k) +
                     "]_2 exceeds the enumeration guard; use the orbit extension strategy");
  }
  const SubspaceIndexer idx(n, k);
  for (std::uint64_t r = 0; r < idx.size(); ++r) fn(idx.subspace(r));
}

std::vector<Subspace> enumerate_subspaces(int n, int k, std::uint64_t guard) {
  std::vector<Subspace> out;
  for_each_subspace(n, k, [&](const Subspace& s) { out.push_back(s); }, guard);
  return out;
}

SubspacesOfEnumerator::SubspacesOfEnumerator(int d, int t) : d_(d), t_(t) {
  check_params(d, t, "SubspacesOfEnumerator");
  const SubspaceIndexer idx(d, t);
  count_ = static_cast<std::size_t>(idx.size());
  coeffs_.resize(count_ * static_cast<std::size_t>(t));
  for (std::size_t s = 0; s < count_; ++s) {
    idx.unrank(s, std::span<Word>(coeffs_.data() + s * t, static_cast<std::size_t>(t)));
  }
}

std::vector<Subspace> subspaces_of(const Subspace& v, int t) {
  if (t < 0 || t > v.dim()) throw DimensionError("subspaces_of: t exceeds the dimension of V");
  const SubspacesOfEnumerator e(v.dim(), t);
  std::vector<Subspace> out;
  out.reserve(e.count());
  e.for_each(v.rows(), [&](std::span<const Word> rows) {
    out.push_back(Subspace::from_rref(v.ambient(), std::vector<Word>(rows.begin(), rows.end())));
  });
  return out;
}

}  // namespace qsteiner
