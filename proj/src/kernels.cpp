#include "qsteiner/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstring>
#include <vector>

namespace qsteiner {

namespace {

int g_threads = 0;

constexpr std::size_t kMinImageBatch = 64;

inline void image_of(const MatrixGroup& group, std::size_t e, const Word* rows, int k, Word* out) noexcept {
  for (int i = 0; i < k; ++i) out[i] = group.apply(e, rows[i]);
  rref_words(std::span<Word>(out, static_cast<std::size_t>(k)));
}

void check_min_images_args(const MatrixGroup& group, int k, std::span<const Word> reps,
                           std::span<Word> out) {
  if (!group.expanded()) throw LimitError("min_images: group must be expanded");
  if (k <= 0 || reps.size() % static_cast<std::size_t>(k) != 0 || out.size() != reps.size()) {
    throw DimensionError("min_images: buffer sizes do not match k");
  }
}

}  // namespace

void set_thread_count(int threads) { g_threads = threads < 0 ? 0 : threads; }

int thread_count() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

namespace kernels {

void orbit_image_ranks(const MatrixGroup& group, std::span<const Word> rows,
                       const SubspaceIndexer& indexer, std::span<std::uint64_t> out) {
  const int k = static_cast<int>(rows.size());
  const auto elements = static_cast<std::int64_t>(group.size());
  if (out.size() != group.size()) throw DimensionError("orbit_image_ranks: output size differs from group order");
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::int64_t e = 0; e < elements; ++e) {
    Word img[kMaxDim];
    image_of(group, static_cast<std::size_t>(e), rows.data(), k, img);
    out[static_cast<std::size_t>(e)] = indexer.rank(std::span<const Word>(img, static_cast<std::size_t>(k)));
  }
}

void min_images(const MatrixGroup& group, int k, std::span<const Word> reps, std::span<Word> out) {
  check_min_images_args(group, k, reps, out);
  const std::size_t count = reps.size() / static_cast<std::size_t>(k);
  const auto elements = static_cast<std::int64_t>(group.size());
  std::copy(reps.begin(), reps.end(), out.begin());
  for (std::size_t i = 0; i < count; ++i) rref_words(out.subspan(i * k, static_cast<std::size_t>(k)));

  for (std::size_t b0 = 0; b0 < count; b0 += kMinImageBatch) {
    const std::size_t nb = std::min(kMinImageBatch, count - b0);
    const Word* batch_reps = reps.data() + b0 * k;
    Word* batch_out = out.data() + b0 * k;
#pragma omp parallel num_threads(thread_count())
    {
      std::vector<Word> best(batch_out, batch_out + nb * k);
      Word img[kMaxDim];
#pragma omp for schedule(static)
      for (std::int64_t e = 0; e < elements; ++e) {
        for (std::size_t r = 0; r < nb; ++r) {
          image_of(group, static_cast<std::size_t>(e), batch_reps + r * k, k, img);
          Word* cur = best.data() + r * k;
          if (rref_less(img, cur, k)) std::memcpy(cur, img, sizeof(Word) * k);
        }
      }
#pragma omp critical(qsteiner_min_images)
      for (std::size_t r = 0; r < nb; ++r) {
        if (rref_less(best.data() + r * k, batch_out + r * k, k)) {
          std::memcpy(batch_out + r * k, best.data() + r * k, sizeof(Word) * k);
        }
      }
    }
  }
}

void count_coverage(std::span<const std::uint64_t> blocks, const SubspaceIndexer& block_indexer,
                    const SubspaceIndexer& t_indexer, std::span<std::uint32_t> counts,
                    std::span<std::uint32_t> owner) {
  const int k = block_indexer.dim();
  const SubspacesOfEnumerator sub(k, t_indexer.dim());
  const auto nblocks = static_cast<std::int64_t>(blocks.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::int64_t b = 0; b < nblocks; ++b) {
    Word rows[kMaxDim];
    block_indexer.unrank(blocks[static_cast<std::size_t>(b)], std::span<Word>(rows, static_cast<std::size_t>(k)));
    sub.for_each(std::span<const Word>(rows, static_cast<std::size_t>(k)), [&](std::span<const Word> t) {
      const std::uint64_t r = t_indexer.rank(t);
      std::uint32_t& c = counts[r];
      std::uint32_t& o = owner[r];
#pragma omp atomic update
      c += 1;
#pragma omp atomic write
      o = static_cast<std::uint32_t>(b);
    });
  }
}

namespace serial {

void orbit_image_ranks(const MatrixGroup& group, std::span<const Word> rows,
                       const SubspaceIndexer& indexer, std::span<std::uint64_t> out) {
  const int k = static_cast<int>(rows.size());
  if (out.size() != group.size()) throw DimensionError("orbit_image_ranks: output size differs from group order");
  Word img[kMaxDim];
  for (std::size_t e = 0; e < group.size(); ++e) {
    image_of(group, e, rows.data(), k, img);
    out[e] = indexer.rank(std::span<const Word>(img, static_cast<std::size_t>(k)));
  }
}

void min_images(const MatrixGroup& group, int k, std::span<const Word> reps, std::span<Word> out) {
  check_min_images_args(group, k, reps, out);
  const std::size_t count = reps.size() / static_cast<std::size_t>(k);
  Word img[kMaxDim];
  for (std::size_t r = 0; r < count; ++r) {
    Word* cur = out.data() + r * k;
    std::copy_n(reps.data() + r * k, k, cur);
    rref_words(std::span<Word>(cur, static_cast<std::size_t>(k)));
    for (std::size_t e = 0; e < group.size(); ++e) {
      image_of(group, e, reps.data() + r * k, k, img);
      if (rref_less(img, cur, k)) std::copy_n(img, k, cur);
    }
  }
}

void count_coverage(std::span<const std::uint64_t> blocks, const SubspaceIndexer& block_indexer,
                    const SubspaceIndexer& t_indexer, std::span<std::uint32_t> counts,
                    std::span<std::uint32_t> owner) {
  const int k = block_indexer.dim();
  const SubspacesOfEnumerator sub(k, t_indexer.dim());
  Word rows[kMaxDim];
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    block_indexer.unrank(blocks[b], std::span<Word>(rows, static_cast<std::size_t>(k)));
    sub.for_each(std::span<const Word>(rows, static_cast<std::size_t>(k)), [&](std::span<const Word> t) {
      const std::uint64_t r = t_indexer.rank(t);
      counts[r] += 1;
      owner[r] = static_cast<std::uint32_t>(b);
    });
  }
}

}  // namespace serial
}  // namespace kernels
}  // namespace qsteiner
