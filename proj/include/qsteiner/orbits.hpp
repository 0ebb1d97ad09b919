#pragma once

// Orbit partitions of the k-subspaces of GF(2)^n under an expanded matrix group.
//
// Orbit ids follow increasing representative order, and each representative is the
// smallest subspace of its orbit, so a table is identical for any thread count.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsteiner/group.hpp"
#include "qsteiner/subspace.hpp"

namespace qsteiner {

enum class OrbitStrategy {
  kFullEnumeration,  // walk every k-subspace; builds a dense rank -> orbit index
  kExtension,        // grow from a dense (k-1)-table; never touches the full universe
};

std::string to_string(OrbitStrategy s);
OrbitStrategy parse_orbit_strategy(const std::string& s);

class OrbitTable {
 public:
  OrbitTable() = default;
  // Representatives and lengths only (for instance read back from a file).
  OrbitTable(int n, int k, std::uint64_t group_order, std::uint64_t group_hash,
             std::vector<Subspace> reps, std::vector<std::uint64_t> lengths);

  int ambient() const noexcept { return n_; }
  int dim() const noexcept { return k_; }
  std::uint64_t group_order() const noexcept { return group_order_; }
  std::uint64_t group_hash() const noexcept { return group_hash_; }

  std::size_t size() const noexcept { return reps_.size(); }
  const Subspace& rep(std::size_t i) const { return reps_.at(i); }
  std::uint64_t length(std::size_t i) const { return lengths_.at(i); }
  const std::vector<Subspace>& reps() const noexcept { return reps_; }
  const std::vector<std::uint64_t>& lengths() const noexcept { return lengths_; }

  BigInt total_length() const;
  bool complete() const { return total_length() == gaussian_binomial(n_, k_, 2); }

  bool has_dense_index() const noexcept { return indexer_.has_value(); }
  bool has_extension_index() const noexcept { return base_ != nullptr; }

  // Orbit id of u. Uses the dense or extension index when present, otherwise traverses
  // the orbit of u until a representative is reached.
  std::uint32_t lookup(const Subspace& u, const MatrixGroup& group) const;

  // Dense-index access (full-enumeration tables only).
  const SubspaceIndexer& indexer() const;
  std::uint32_t orbit_of_rank(std::uint64_t r) const { return dense_orbit_[r]; }
  // Element index h with g_h U = rep(orbit_of_rank(r)), where U has rank r.
  std::uint32_t transporter_of_rank(std::uint64_t r) const { return dense_transporter_[r]; }
  std::uint64_t rep_rank(std::size_t orbit) const { return rep_ranks_.at(orbit); }
  // Element indices fixing the representative of `orbit`.
  std::span<const std::uint32_t> stabilizer(std::size_t orbit) const;

  // Ranks (in the k-indexer) of every element of orbit(K) that contains a representative
  // of the base (k-1)-table, with multiplicity: one entry per (hyperplane of K, base
  // stabilizer element). Extension tables only; exposed for tests.
  std::vector<std::uint64_t> anchored_images(std::span<const Word> k_rows, const MatrixGroup& group) const;

  friend OrbitTable orbit_partition(int, int, const MatrixGroup&, OrbitStrategy, std::uint64_t,
                                    std::shared_ptr<const OrbitTable>);

 private:
  static OrbitTable full_enumeration(int n, int k, const MatrixGroup& group, std::uint64_t guard);
  void build_rep_index();

  int n_ = 0;
  int k_ = 0;
  std::uint64_t group_order_ = 0;
  std::uint64_t group_hash_ = 0;
  std::vector<Subspace> reps_;
  std::vector<std::uint64_t> lengths_;
  std::map<Subspace, std::uint32_t> rep_index_;

  // full enumeration
  std::optional<SubspaceIndexer> indexer_;
  std::vector<std::uint32_t> dense_orbit_;
  std::vector<std::uint32_t> dense_transporter_;
  std::vector<std::uint64_t> rep_ranks_;
  std::vector<std::vector<std::uint32_t>> stabilizers_;

  // extension
  std::shared_ptr<const OrbitTable> base_;
  std::optional<SubspaceIndexer> k_indexer_;
  std::unordered_map<std::uint64_t, std::uint32_t> anchor_index_;  // min anchored rank -> id
};

// Complete orbit table for the k-subspaces of GF(2)^n. The group must be expanded.
// kExtension uses `base` (a dense table for k-1) or builds it by full enumeration.
OrbitTable orbit_partition(int n, int k, const MatrixGroup& group, OrbitStrategy strategy,
                           std::uint64_t guard = kDefaultEnumerationGuard,
                           std::shared_ptr<const OrbitTable> base = nullptr);

}  // namespace qsteiner
