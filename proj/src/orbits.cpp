#include "qsteiner/orbits.hpp"

#include <algorithm>
#include <numeric>

#include "qsteiner/kernels.hpp"

namespace qsteiner {

namespace {

constexpr std::uint32_t kUnset = ~std::uint32_t{0};
constexpr std::uint64_t kCandidateCap = 200'000'000;

void require_expanded(const MatrixGroup& group, int n, const char* what) {
  if (!group.expanded()) throw LimitError(std::string(what) + ": group must be expanded (run group_closure)");
  if (group.dim() != n) throw DimensionError(std::string(what) + ": group acts on a different dimension");
}


}  // namespace

std::string to_string(OrbitStrategy s) {
  return s == OrbitStrategy::kFullEnumeration ? "full-enumeration" : "extension";
}

OrbitStrategy parse_orbit_strategy(const std::string& s) {
  if (s == "full-enumeration" || s == "full") return OrbitStrategy::kFullEnumeration;
  if (s == "extension") return OrbitStrategy::kExtension;
  throw Error("unknown orbit strategy '" + s + "' (expected full-enumeration or extension)");
}

OrbitTable::OrbitTable(int n, int k, std::uint64_t group_order, std::uint64_t group_hash,
                       std::vector<Subspace> reps, std::vector<std::uint64_t> lengths)
    : n_(n), k_(k), group_order_(group_order), group_hash_(group_hash), reps_(std::move(reps)),
      lengths_(std::move(lengths)) {
  if (reps_.size() != lengths_.size()) throw DimensionError("OrbitTable: reps and lengths differ in size");
  for (const Subspace& r : reps_) {
    if (r.ambient() != n || r.dim() != k) throw DimensionError("OrbitTable: representative has wrong (n, k)");
  }
  build_rep_index();
}

void OrbitTable::build_rep_index() {
  rep_index_.clear();
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    if (!rep_index_.emplace(reps_[i], static_cast<std::uint32_t>(i)).second) {
      throw ConsistencyError("OrbitTable: duplicate representative");
    }
  }
}

BigInt OrbitTable::total_length() const {
  BigInt total = 0;
  for (std::uint64_t l : lengths_) total += l;
  return total;
}

const SubspaceIndexer& OrbitTable::indexer() const {
  if (!indexer_) throw Error("OrbitTable: no dense index (not built by full enumeration)");
  return *indexer_;
}

std::span<const std::uint32_t> OrbitTable::stabilizer(std::size_t orbit) const {
  if (stabilizers_.empty()) throw Error("OrbitTable: stabilizers are only kept for dense tables");
  return stabilizers_.at(orbit);
}

std::vector<std::uint64_t> OrbitTable::anchored_images(std::span<const Word> k_rows,
                                                       const MatrixGroup& group) const {
  if (!base_) throw Error("OrbitTable::anchored_images: not an extension table");
  const OrbitTable& base = *base_;
  const SubspaceIndexer& tidx = base.indexer();
  const SubspacesOfEnumerator hyper(k_, k_ - 1);
  std::vector<std::uint64_t> out;
  Word moved[kMaxDim];
  Word img[kMaxDim];
  hyper.for_each(k_rows, [&](std::span<const Word> t) {
    const std::uint64_t r = tidx.rank(t);
    const std::uint32_t j = base.orbit_of_rank(r);
    const std::uint32_t h = base.transporter_of_rank(r);
    for (int i = 0; i < k_; ++i) moved[i] = group.apply(h, k_rows[i]);
    for (std::uint32_t s : base.stabilizer(j)) {
      for (int i = 0; i < k_; ++i) img[i] = group.apply(s, moved[i]);
      rref_words(std::span<Word>(img, static_cast<std::size_t>(k_)));
      out.push_back(k_indexer_->rank(std::span<const Word>(img, static_cast<std::size_t>(k_))));
    }
  });
  return out;
}

std::uint32_t OrbitTable::lookup(const Subspace& u, const MatrixGroup& group) const {
  if (u.ambient() != n_ || u.dim() != k_) {
    throw DimensionError("OrbitTable::lookup: subspace has dimension " + std::to_string(u.dim()) +
                         ", table is for k=" + std::to_string(k_));
  }
  if (indexer_) return dense_orbit_[indexer_->rank(u)];
  if (base_) {
    const auto imgs = anchored_images(u.rows(), group);
    const auto it = anchor_index_.find(*std::min_element(imgs.begin(), imgs.end()));
    if (it == anchor_index_.end()) throw ConsistencyError("OrbitTable::lookup: orbit missing from table");
    return it->second;
  }
  if (group.expanded()) {
    for (std::size_t e = 0; e < group.size(); ++e) {
      const auto it = rep_index_.find(act(group, e, u));
      if (it != rep_index_.end()) return it->second;
    }
  } else {
    for (const Subspace& s : orbit(u, group)) {
      const auto it = rep_index_.find(s);
      if (it != rep_index_.end()) return it->second;
    }
  }
  throw ConsistencyError("OrbitTable::lookup: orbit of the subspace contains no representative");
}

OrbitTable OrbitTable::full_enumeration(int n, int k, const MatrixGroup& group, std::uint64_t guard) {
  if (gaussian_binomial(n, k, 2) > BigInt(guard)) {
    throw LimitError("orbit_partition: [" + std::to_string(n) + " " + std::to_string(k) +
                     "]_2 exceeds the enumeration guard; use --strategy extension");
  }
  const SubspaceIndexer idx(n, k);
  const std::uint64_t total = idx.size();
  std::vector<std::uint32_t> orbit_of(total, kUnset);
  std::vector<std::uint32_t> transporter(total, 0);
  std::vector<std::uint64_t> images(group.size());
  std::vector<Subspace> reps;
  std::vector<std::uint64_t> lengths;
  std::vector<std::uint64_t> rep_ranks;
  std::vector<std::vector<std::uint32_t>> stabilizers;
  std::vector<Word> rows(static_cast<std::size_t>(k));

  for (std::uint64_t r = 0; r < total; ++r) {
    if (orbit_of[r] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    idx.unrank(r, rows);
    kernels::orbit_image_ranks(group, rows, idx, images);
    std::uint64_t length = 0;
    std::vector<std::uint32_t> stab;
    for (std::size_t e = 0; e < images.size(); ++e) {
      const std::uint64_t img = images[e];
      if (orbit_of[img] == kUnset) {
        orbit_of[img] = id;
        transporter[img] = group.inverse_index(e);
        ++length;
      } else if (orbit_of[img] != id) {
        throw ConsistencyError("orbit_partition: orbits overlap (group action is inconsistent)");
      }
      if (img == r) stab.push_back(static_cast<std::uint32_t>(e));
    }
    if (group.size() % length != 0 || group.size() / length != stab.size()) {
      throw ConsistencyError("orbit_partition: orbit-stabilizer identity fails");
    }
    reps.push_back(idx.subspace(r));
    lengths.push_back(length);
    rep_ranks.push_back(r);
    stabilizers.push_back(std::move(stab));
  }

  OrbitTable t(n, k, group.order(), group.generator_hash(), std::move(reps), std::move(lengths));
  t.indexer_ = idx;
  t.dense_orbit_ = std::move(orbit_of);
  t.dense_transporter_ = std::move(transporter);
  t.rep_ranks_ = std::move(rep_ranks);
  t.stabilizers_ = std::move(stabilizers);
  return t;
}


OrbitTable orbit_partition(int n, int k, const MatrixGroup& group, OrbitStrategy strategy,
                           std::uint64_t guard, std::shared_ptr<const OrbitTable> base) {
  if (n < 1 || n > kMaxDim || k < 0 || k > n) throw DimensionError("orbit_partition: need 0 <= k <= n <= 64");
  require_expanded(group, n, "orbit_partition");
  if (strategy == OrbitStrategy::kFullEnumeration) return OrbitTable::full_enumeration(n, k, group, guard);

  if (k == 0) throw Error("orbit_partition: extension needs k >= 1; use full-enumeration for k = 0");
  if (!base) {
    try {
      base = std::make_shared<const OrbitTable>(OrbitTable::full_enumeration(n, k - 1, group, guard));
    } catch (const LimitError&) {
      throw LimitError("orbit_partition: the (k-1)-subspace table needed for extension exceeds the "
                       "enumeration guard; extension is infeasible, try full-enumeration");
    }
  }
  if (!base->has_dense_index() || base->dim() != k - 1 || base->ambient() != n ||
      base->group_hash() != group.generator_hash()) {
    throw Error("orbit_partition: extension base must be a dense (k-1)-table for the same group");
  }

  OrbitTable t;
  t.n_ = n;
  t.k_ = k;
  t.group_order_ = group.order();
  t.group_hash_ = group.generator_hash();
  t.base_ = base;
  t.k_indexer_.emplace(n, k);
  const SubspaceIndexer& kidx = *t.k_indexer_;
  const SubspaceIndexer& tidx = base->indexer();

  // Candidates: <R, v> for every base representative R and every nonzero v reduced
  // modulo R (zero on R's pivot columns), which picks each coset v + R once.
  const std::uint64_t per_rep = (std::uint64_t{1} << (n - k + 1)) - 1;
  if (per_rep > kCandidateCap / std::max<std::size_t>(1, base->size())) {
    throw LimitError("orbit_partition: extension candidate set too large");
  }
  std::vector<std::uint64_t> candidates;
  candidates.reserve(per_rep * base->size());
  std::vector<Word> rows(static_cast<std::size_t>(k));
  for (const Subspace& rep : base->reps()) {
    const Word free = low_mask(n) & ~rep.pivot_mask();
    for (std::uint64_t x = 1; x <= per_rep; ++x) {
      Word v = 0;
      std::uint64_t bits = x;
      for (Word f = free; f; f &= f - 1, bits >>= 1) {
        if (bits & 1U) v |= f & -f;
      }
      std::copy(rep.rows().begin(), rep.rows().end(), rows.begin());
      rows[static_cast<std::size_t>(k - 1)] = v;
      rref_words(rows);
      candidates.push_back(kidx.rank(rows));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Walk candidates in increasing order; each unmarked one starts a new orbit and
  // marks exactly the candidates lying in that orbit.
  struct Found {
    std::uint64_t anchor;
    std::uint64_t length;
  };
  std::vector<Found> found;
  std::vector<bool> marked(candidates.size(), false);
  std::vector<Word> sub(static_cast<std::size_t>(k - 1));
  const SubspacesOfEnumerator hyper(k, k - 1);
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    if (marked[ci]) continue;
    kidx.unrank(candidates[ci], rows);
    std::vector<std::uint64_t> imgs = t.anchored_images(rows, group);
    const std::size_t pairs = imgs.size();
    std::sort(imgs.begin(), imgs.end());
    imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
    std::uint64_t anchored_reps = 0;
    for (std::uint64_t img : imgs) {
      const auto it = std::lower_bound(candidates.begin(), candidates.end(), img);
      if (it == candidates.end() || *it != img) {
        throw ConsistencyError("orbit_partition: anchored image is not a candidate");
      }
      marked[static_cast<std::size_t>(it - candidates.begin())] = true;
      kidx.unrank(img, rows);
      hyper.for_each(rows, [&](std::span<const Word> h) {
        const std::uint64_t r = tidx.rank(h);
        if (base->rep_rank(base->orbit_of_rank(r)) == r) ++anchored_reps;
      });
    }
    if (imgs.front() != candidates[ci]) throw ConsistencyError("orbit_partition: candidate order violated");
    // pairs = |Stab(K)| * sum over anchored images of the base reps they contain.
    if (anchored_reps == 0 || pairs % anchored_reps != 0) {
      throw ConsistencyError("orbit_partition: stabilizer count is not integral");
    }
    const std::uint64_t stab = pairs / anchored_reps;
    if (group.order() % stab != 0) throw ConsistencyError("orbit_partition: stabilizer order does not divide |G|");
    found.push_back({candidates[ci], group.order() / stab});
  }

  // True representatives: the smallest element of each orbit.
  std::vector<Word> anchors(found.size() * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < found.size(); ++i) {
    kidx.unrank(found[i].anchor, std::span<Word>(anchors.data() + i * k, static_cast<std::size_t>(k)));
  }
  std::vector<Word> mins(anchors.size());
  kernels::min_images(group, k, anchors, mins);

  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rref_less(mins.data() + a * k, mins.data() + b * k, k);
  });
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    t.reps_.push_back(Subspace::from_rref(n, std::vector<Word>(mins.begin() + static_cast<std::ptrdiff_t>(i * k),
                                                               mins.begin() + static_cast<std::ptrdiff_t>((i + 1) * k))));
    t.lengths_.push_back(found[i].length);
    t.anchor_index_.emplace(found[i].anchor, static_cast<std::uint32_t>(pos));
  }
  t.build_rep_index();
  return t;
}

}  // namespace qsteiner
