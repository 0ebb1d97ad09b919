#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version (namespace kernels) and
// a plain serial reference (namespace kernels::serial) with identical results; the test
// suite checks them against each other and tools/qsteiner_bench times them.

#include <cstdint>
#include <span>

#include "qsteiner/group.hpp"
#include "qsteiner/subspace.hpp"

namespace qsteiner {

// Worker threads used by the parallel kernels (0 = OpenMP default).
void set_thread_count(int threads);
int thread_count();

// a < b in the subspace order, for two reduced bases of the same dimension.
inline bool rref_less(const Word* a, const Word* b, int k) noexcept {
  Word ma = 0;
  Word mb = 0;
  for (int i = 0; i < k; ++i) {
    ma |= a[i] & -a[i];
    mb |= b[i] & -b[i];
  }
  if (ma != mb) return ma < mb;
  for (int i = 0; i < k; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

namespace kernels {

// out[e] = rank of g_e U for every element e of an expanded group.
void orbit_image_ranks(const MatrixGroup& group, std::span<const Word> rows,
                       const SubspaceIndexer& indexer, std::span<std::uint64_t> out);

// For each of `count` k-dimensional reduced bases stored back to back in `reps`, the
// smallest image over all group elements, written to `out` in the same layout.
void min_images(const MatrixGroup& group, int k, std::span<const Word> reps,
                std::span<Word> out);

// For every block (given by rank under block_indexer) and every t-subspace of it,
// increments counts[rank]; owner[rank] receives the index of a covering block.
void count_coverage(std::span<const std::uint64_t> blocks, const SubspaceIndexer& block_indexer,
                    const SubspaceIndexer& t_indexer, std::span<std::uint32_t> counts,
                    std::span<std::uint32_t> owner);

namespace serial {

void orbit_image_ranks(const MatrixGroup& group, std::span<const Word> rows,
                       const SubspaceIndexer& indexer, std::span<std::uint64_t> out);
void min_images(const MatrixGroup& group, int k, std::span<const Word> reps,
                std::span<Word> out);
void count_coverage(std::span<const std::uint64_t> blocks, const SubspaceIndexer& block_indexer,
                    const SubspaceIndexer& t_indexer, std::span<std::uint32_t> counts,
                    std::span<std::uint32_t> owner);

}  // namespace serial
}  // namespace kernels
}  // namespace qsteiner
