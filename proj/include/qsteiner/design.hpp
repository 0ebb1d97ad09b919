#pragma once

// Block sets (explicit k-subspaces) and their verification as t-(n,k,lambda)_2 designs.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qsteiner/group.hpp"
#include "qsteiner/subspace.hpp"

namespace qsteiner {

struct BlockSet {
  int n = 0;
  int k = 0;
  std::vector<std::uint64_t> ranks;          // sorted, distinct, in SubspaceIndexer(n, k)
  std::vector<std::uint64_t> orbit_lengths;  // per expanded representative
  std::uint64_t group_hash = 0;

  std::size_t size() const noexcept { return ranks.size(); }
  Subspace block(std::size_t i) const;
};

// Union of the orbits of `reps` under an expanded group. Orbits are expanded through
// the dense k-indexer, so [n k]_2 must fit in 64 bits.
BlockSet expand_orbits(const std::vector<Subspace>& reps, const MatrixGroup& group);
BlockSet block_set_from(int n, int k, const std::vector<Subspace>& blocks);

// Counts, for every t-subspace, how many blocks contain it.
class CoverageIndex {
 public:
  CoverageIndex(const BlockSet& blocks, int t, std::uint64_t budget);

  int t() const noexcept { return t_; }
  const SubspaceIndexer& indexer() const noexcept { return t_indexer_; }
  std::uint32_t count(std::uint64_t t_rank) const { return counts_[t_rank]; }
  // A block index covering t_rank; meaningful when count(t_rank) == 1.
  std::uint32_t owner(std::uint64_t t_rank) const { return owner_[t_rank]; }
  std::size_t size() const noexcept { return counts_.size(); }

 private:
  int t_;
  SubspaceIndexer t_indexer_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> owner_;
};

inline constexpr std::uint64_t kDefaultVerifyBudget = 200'000'000;
inline constexpr std::size_t kMaxReportedViolations = 100;

struct Violation {
  Subspace t_subspace;
  std::uint32_t count = 0;
  std::vector<Subspace> blocks;  // covering blocks (at most 8 listed)
};

struct DesignReport {
  int n = 0;
  int k = 0;
  int t = 0;
  std::uint32_t lambda = 0;
  std::uint64_t blocks = 0;
  std::uint64_t t_subspaces = 0;
  std::map<std::uint32_t, std::uint64_t> histogram;  // coverage count -> number of t-subspaces
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  // first kMaxReportedViolations in rank order
  BigInt expected_blocks;             // lambda [n t] / [k t]
  bool block_count_ok = false;
  bool pass = false;
};

DesignReport verify_design(const BlockSet& blocks, int t, std::uint32_t lambda,
                           std::uint64_t budget = kDefaultVerifyBudget);
// Same, reusing an existing coverage index for t.
DesignReport verify_design(const BlockSet& blocks, const CoverageIndex& index, std::uint32_t lambda);

void write_design_report(std::ostream& os, const DesignReport& report);

struct DistanceCertificate {
  int min_distance = 0;       // 2 (k - t + 1), implied by a passing lambda = 1 report
  std::uint64_t samples = 0;  // random distinct block pairs checked
  int min_sampled = 0;        // smallest distance seen among the samples
  bool ok = false;
};

// Refuses (Error) unless `report` is a passing lambda = 1 report for `blocks`.
DistanceCertificate min_distance_certificate(const BlockSet& blocks, const DesignReport& report,
                                             std::uint64_t samples, std::uint64_t seed);

// Largest possible number of k-subspaces pairwise meeting in dimension < t:
// [n t]_2 / [k t]_2. Error when the quotient is not integral.
BigInt packing_bound(int n, int k, int t);

struct DerivedCheck {
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
};

// For a 2-(n,3,1) system: random distinct nonzero x, y, z with span{y+x, z+x} of
// dimension 2 must be covered exactly once, by a block containing both vectors.
// The single-triple test behind the sampled check; x, y, z must be distinct points.
bool derived_triple_covered(const BlockSet& blocks, const CoverageIndex& index, Word x, Word y, Word z);

DerivedCheck derived_steiner_sample_check(const BlockSet& blocks, const CoverageIndex& index,
                                          std::uint64_t samples, std::uint64_t seed);

void save_block_set(const std::filesystem::path& path, const BlockSet& blocks);
BlockSet load_block_set(const std::filesystem::path& path);

}  // namespace qsteiner
