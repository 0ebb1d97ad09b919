#include "qsteiner/design.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "qsteiner/kernels.hpp"
#include "qsteiner/random.hpp"
#include "qsteiner/text_io.hpp"

namespace qsteiner {

Subspace BlockSet::block(std::size_t i) const { return SubspaceIndexer(n, k).subspace(ranks.at(i)); }

BlockSet expand_orbits(const std::vector<Subspace>& reps, const MatrixGroup& group) {
  if (!group.expanded()) throw Error("expand_orbits: group must be expanded");
  BlockSet out;
  out.n = group.dim();
  out.group_hash = group.generator_hash();
  if (reps.empty()) return out;
  out.k = reps.front().dim();
  for (const Subspace& r : reps) {
    if (r.ambient() != out.n) throw DimensionError("expand_orbits: representative and group dimensions differ");
    if (r.dim() != out.k) throw DimensionError("expand_orbits: representatives have mixed dimensions");
  }
  const SubspaceIndexer indexer(out.n, out.k);
  std::vector<std::uint64_t> images(group.size());
  for (const Subspace& r : reps) {
    kernels::orbit_image_ranks(group, r.rows(), indexer, images);
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    out.orbit_lengths.push_back(images.size());
    out.ranks.insert(out.ranks.end(), images.begin(), images.end());
    images.resize(group.size());
  }
  std::sort(out.ranks.begin(), out.ranks.end());
  out.ranks.erase(std::unique(out.ranks.begin(), out.ranks.end()), out.ranks.end());
  return out;
}

BlockSet block_set_from(int n, int k, const std::vector<Subspace>& blocks) {
  BlockSet out;
  out.n = n;
  out.k = k;
  const SubspaceIndexer indexer(n, k);
  for (const Subspace& b : blocks) {
    if (b.ambient() != n || b.dim() != k) throw DimensionError("block_set_from: block of the wrong shape");
    out.ranks.push_back(indexer.rank(b));
  }
  // Duplicates are kept so that verification sees (and reports) them.
  std::sort(out.ranks.begin(), out.ranks.end());
  return out;
}

CoverageIndex::CoverageIndex(const BlockSet& blocks, int t, std::uint64_t budget)
    : t_(t), t_indexer_(blocks.n, t) {
  if (t < 0 || t > blocks.k) throw DimensionError("CoverageIndex: need 0 <= t <= k");
  if (t_indexer_.size() > budget) {
    throw LimitError("CoverageIndex: " + std::to_string(t_indexer_.size()) + " t-subspaces exceed the budget of " +
                     std::to_string(budget));
  }
  counts_.assign(t_indexer_.size(), 0);
  owner_.assign(t_indexer_.size(), 0);
  kernels::count_coverage(blocks.ranks, SubspaceIndexer(blocks.n, blocks.k), t_indexer_, counts_, owner_);
}

DesignReport verify_design(const BlockSet& blocks, int t, std::uint32_t lambda, std::uint64_t budget) {
  if (t < 1 || t >= blocks.k) throw DimensionError("verify_design: need 1 <= t < k");
  const CoverageIndex index(blocks, t, budget);
  return verify_design(blocks, index, lambda);
}

DesignReport verify_design(const BlockSet& blocks, const CoverageIndex& index, std::uint32_t lambda) {
  if (lambda == 0) throw Error("verify_design: lambda must be at least 1");
  DesignReport r;
  r.n = blocks.n;
  r.k = blocks.k;
  r.t = index.t();
  r.lambda = lambda;
  r.blocks = blocks.size();
  r.t_subspaces = index.size();
  const BigInt num = BigInt(lambda) * gaussian_binomial(r.n, r.t, 2);
  const BigInt den = gaussian_binomial(r.k, r.t, 2);
  r.expected_blocks = num % den == 0 ? BigInt(num / den) : BigInt(-1);
  r.block_count_ok = r.expected_blocks == BigInt(r.blocks);

  std::vector<std::uint64_t> reported;
  for (std::uint64_t x = 0; x < index.size(); ++x) {
    const std::uint32_t c = index.count(x);
    ++r.histogram[c];
    if (c != lambda) {
      ++r.violation_count;
      if (reported.size() < kMaxReportedViolations) reported.push_back(x);
    }
  }
  r.pass = r.violation_count == 0;

  if (!reported.empty()) {
    // One more pass over the blocks to list the covering blocks of each reported violation.
    std::unordered_map<std::uint64_t, std::size_t> slot;
    for (std::size_t i = 0; i < reported.size(); ++i) {
      slot.emplace(reported[i], i);
      r.violations.push_back({index.indexer().subspace(reported[i]), index.count(reported[i]), {}});
    }
    const SubspaceIndexer block_indexer(blocks.n, blocks.k);
    const SubspacesOfEnumerator sub(blocks.k, r.t);
    std::vector<Word> rows(static_cast<std::size_t>(blocks.k));
    for (std::uint64_t rank : blocks.ranks) {
      block_indexer.unrank(rank, rows);
      sub.for_each(rows, [&](std::span<const Word> t_rows) {
        const auto it = slot.find(index.indexer().rank(t_rows));
        if (it == slot.end()) return;
        auto& v = r.violations[it->second];
        if (v.blocks.size() < 8) v.blocks.push_back(block_indexer.subspace(rank));
      });
    }
  }
  return r;
}

void write_design_report(std::ostream& os, const DesignReport& r) {
  os << "DESIGN n " << r.n << " k " << r.k << " t " << r.t << " lambda " << r.lambda << '\n';
  os << "blocks " << r.blocks << " expected " << r.expected_blocks << " block-count "
     << (r.block_count_ok ? "ok" : "mismatch") << '\n';
  os << "t-subspaces " << r.t_subspaces << '\n';
  os << "histogram\n";
  for (const auto& [count, how_many] : r.histogram) os << count << ' ' << how_many << '\n';
  os << "violations " << r.violation_count << " listed " << r.violations.size() << '\n';
  for (const Violation& v : r.violations) {
    os << "violation count " << v.count << '\n' << format_matrix(v.t_subspace.basis());
    for (const Subspace& b : v.blocks) os << "in-block\n" << format_matrix(b.basis());
    os << '\n';
  }
  os << "VERDICT " << (r.pass ? "pass" : "fail") << '\n';
}

DistanceCertificate min_distance_certificate(const BlockSet& blocks, const DesignReport& report,
                                             std::uint64_t samples, std::uint64_t seed) {
  if (!report.pass || report.lambda != 1) throw Error("min_distance_certificate: needs a passing lambda = 1 report");
  if (report.n != blocks.n || report.k != blocks.k || report.blocks != blocks.size()) {
    throw Error("min_distance_certificate: report does not belong to this block set");
  }
  for (std::size_t i = 1; i < blocks.ranks.size(); ++i) {
    if (blocks.ranks[i] == blocks.ranks[i - 1]) throw Error("min_distance_certificate: duplicated block");
  }
  DistanceCertificate c;
  c.min_distance = 2 * (blocks.k - report.t + 1);
  c.min_sampled = 2 * blocks.k;
  c.ok = true;
  if (blocks.size() < 2) return c;
  const SubspaceIndexer indexer(blocks.n, blocks.k);
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t i = uniform_below(rng, blocks.size());
    std::uint64_t j = uniform_below(rng, blocks.size() - 1);
    if (j >= i) ++j;
    const int d = subspace_distance(indexer.subspace(blocks.ranks[i]), indexer.subspace(blocks.ranks[j]));
    c.min_sampled = std::min(c.min_sampled, d);
    ++c.samples;
  }
  c.ok = c.min_sampled >= c.min_distance;
  return c;
}

BigInt packing_bound(int n, int k, int t) {
  if (!(0 <= t && t < k && k <= n)) throw DimensionError("packing_bound: need t < k <= n");
  const BigInt num = gaussian_binomial(n, t, 2);
  const BigInt den = gaussian_binomial(k, t, 2);
  if (num % den != 0) {
    throw Error("packing_bound: [" + std::to_string(n) + " " + std::to_string(t) + "] / [" + std::to_string(k) + " " +
                std::to_string(t) + "] is not an integer");
  }
  return num / den;
}

bool derived_triple_covered(const BlockSet& blocks, const CoverageIndex& index, Word x, Word y, Word z) {
  if (x == y || x == z || y == z) throw Error("derived_triple_covered: points must be distinct");
  const Word u = y ^ x;
  const Word v = z ^ x;
  Word rows[2] = {u, v};
  rref_words(std::span<Word>(rows, 2));
  const std::uint64_t r = index.indexer().rank(std::span<const Word>(rows, 2));
  if (index.count(r) != 1) return false;
  const Subspace b = SubspaceIndexer(blocks.n, blocks.k).subspace(blocks.ranks.at(index.owner(r)));
  // {x, y, z} lies in the coset x + B exactly when u and v lie in B.
  return contains_vector(b, u) && contains_vector(b, v);
}

DerivedCheck derived_steiner_sample_check(const BlockSet& blocks, const CoverageIndex& index,
                                          std::uint64_t samples, std::uint64_t seed) {
  if (blocks.k != 3 || index.t() != 2) throw Error("derived_steiner_sample_check: needs k = 3 blocks and t = 2 coverage");
  if (blocks.n >= 64) throw DimensionError("derived_steiner_sample_check: n too large");
  const std::uint64_t points = std::uint64_t{1} << blocks.n;
  std::mt19937_64 rng(seed);
  DerivedCheck out;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const Word x = uniform_below(rng, points);
    Word y = 0;
    Word z = 0;
    do y = uniform_below(rng, points); while (y == x);
    do z = uniform_below(rng, points); while (z == x || z == y);
    ++out.samples;
    if (!derived_triple_covered(blocks, index, x, y, z)) ++out.failures;
  }
  return out;
}

void save_block_set(const std::filesystem::path& path, const BlockSet& blocks) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(blocks.group_hash));
  os << "BLOCKS " << blocks.size() << ' ' << blocks.n << ' ' << blocks.k << ' ' << hex << '\n';
  const SubspaceIndexer indexer(blocks.n, blocks.k);
  std::vector<Word> rows(static_cast<std::size_t>(blocks.k));
  for (std::uint64_t r : blocks.ranks) {
    indexer.unrank(r, rows);
    os << '\n' << format_matrix(BitMatrix(blocks.n, rows));
  }
  if (!os) throw Error("failed writing " + path.string());
}

BlockSet load_block_set(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  std::string line;
  std::getline(is, line);
  std::istringstream header(line);
  std::string tag;
  std::string hex;
  std::uint64_t count = 0;
  int n = 0;
  int k = 0;
  if (!(header >> tag >> count >> n >> k >> hex) || tag != "BLOCKS") {
    throw ParseError(1, "expected 'BLOCKS count n k group-hash' header");
  }
  const auto subspaces = read_subspaces(is);
  if (subspaces.size() != count) throw ParseError(0, "block count disagrees with the header");
  BlockSet out = block_set_from(n, k, subspaces);
  out.group_hash = std::stoull(hex, nullptr, 16);
  return out;
}

}  // namespace qsteiner
