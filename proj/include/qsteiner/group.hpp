#pragma once

// Matrix groups over GF(2) and their action on subspaces.
//
// Action convention: g acts on column vectors, v -> g v. A subspace is stored by row
// basis vectors, so act(g, U) maps every basis vector through g and canonicalizes.
// Composition: act(g * h, U) = act(g, act(h, U)).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qsteiner/gf2.hpp"
#include "qsteiner/subspace.hpp"

namespace qsteiner {

inline constexpr std::uint64_t kDefaultClosureCap = 10'000'000;

class MatrixGroup {
 public:
  MatrixGroup() = default;

  // Generators only (not expanded). All must be invertible n x n.
  static MatrixGroup from_generators(std::vector<BitMatrix> generators);
  static MatrixGroup trivial(int n);

  int dim() const noexcept;
  const std::vector<BitMatrix>& generators() const noexcept;
  // FNV-1a over the generator list; identifies the group source in output files.
  std::uint64_t generator_hash() const noexcept;
  std::string hash_hex() const;

  bool expanded() const noexcept;
  // Order of the expanded group; LimitError when not expanded.
  std::uint64_t order() const;
  std::size_t size() const noexcept;  // number of stored elements (0 if not expanded)

  // Element access (expanded groups). Element 0 is the identity.
  BitMatrix element(std::size_t e) const;
  std::uint32_t inverse_index(std::size_t e) const;

  // g_e v using per-element nibble tables when available.
  Word apply(std::size_t e, Word v) const noexcept {
    if (!tables_->empty()) {
      const Word* t = tables_->data() + e * chunks_ * 16;
      Word out = 0;
      for (int c = 0; c < chunks_; ++c, t += 16) out ^= t[(v >> (4 * c)) & 15U];
      return out;
    }
    return mat_vec(std::span<const Word>(rows_->data() + e * n_, static_cast<std::size_t>(n_)), v);
  }

  friend MatrixGroup group_closure(const MatrixGroup& group, std::uint64_t cap);

 private:
  struct Source {
    int n = 0;
    std::vector<BitMatrix> generators;
    std::uint64_t hash = 0;
  };
  void build_tables();

  std::shared_ptr<const Source> source_;
  int n_ = 0;
  int chunks_ = 0;
  std::shared_ptr<const std::vector<Word>> rows_ = std::make_shared<std::vector<Word>>();
  std::shared_ptr<const std::vector<std::uint32_t>> inverse_ = std::make_shared<std::vector<std::uint32_t>>();
  std::shared_ptr<const std::vector<Word>> tables_ = std::make_shared<std::vector<Word>>();
};

// Breadth-first closure under left multiplication by the generators, starting at I.
// Element order is the BFS order, hence deterministic. LimitError past `cap`.
MatrixGroup group_closure(const MatrixGroup& group, std::uint64_t cap = kDefaultClosureCap);
MatrixGroup group_closure(std::vector<BitMatrix> generators, std::uint64_t cap = kDefaultClosureCap);

// <frobenius, companion> for the embedded primitive polynomial of degree n; order (2^n - 1) n.
MatrixGroup singer_normalizer(int n, bool expand = true);

Subspace act(const BitMatrix& g, const Subspace& u);
Subspace act(const MatrixGroup& group, std::size_t element, const Subspace& u);

// BFS closure of {u} under the generators; first element is u.
std::vector<Subspace> orbit(const Subspace& u, const MatrixGroup& group);

}  // namespace qsteiner
