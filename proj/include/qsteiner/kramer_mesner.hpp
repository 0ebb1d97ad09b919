#pragma once

// The G-incidence matrix between t-orbits and k-orbits of subspaces.
//
// Entry a(T, K) is the number of members of orbit(K) containing T. It is computed by
// the transposed count b(K, T) (t-subspaces of K lying in orbit(T)) and the
// double-counting identity a(T, K) |orbit(T)| = b(K, T) |orbit(K)|.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qsteiner/group.hpp"
#include "qsteiner/orbits.hpp"

namespace qsteiner {

struct OrbitLabel {
  std::uint32_t id = 0;
  std::uint64_t orbit_length = 0;
  friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
};

struct KMEntry {
  std::uint32_t row = 0;  // t-orbit id
  std::uint32_t col = 0;  // k-orbit id
  std::uint32_t value = 0;
  friend bool operator==(const KMEntry&, const KMEntry&) = default;
};

// A column removed by pruning together with its first offending entry (lowest row).
struct PrunedColumn {
  std::uint32_t col = 0;
  std::uint32_t row = 0;
  std::uint32_t value = 0;
  friend bool operator==(const PrunedColumn&, const PrunedColumn&) = default;
};

struct KMInstance {
  int n = 0;
  int t = 0;
  int k = 0;
  std::uint32_t lambda = 0;  // 0 while unpruned
  std::vector<OrbitLabel> rows;
  std::vector<OrbitLabel> cols;
  std::vector<KMEntry> entries;  // sorted by (col, row), values >= 1
  std::vector<PrunedColumn> pruned;

  std::uint32_t max_entry() const;
  // Sum of a(T, K) over all columns, per row (in row-label order).
  std::vector<std::uint64_t> row_sums() const;
  // Sum of all numeric fields mod 2^32, as written to the trailing checksum line.
  std::uint32_t checksum() const;

  friend bool operator==(const KMInstance&, const KMInstance&) = default;
};

// Requires t < k, both tables complete over the same group, and t_table indexed
// (dense or extension). Columns are processed in parallel with ordered output.
KMInstance build_km(const OrbitTable& t_table, const OrbitTable& k_table, const MatrixGroup& group);

// Reference path for small instances: expands every orbit(K) and counts containments
// directly. Independent of the transposed count used by build_km.
KMInstance build_km_brute_force(const OrbitTable& t_table, const OrbitTable& k_table,
                                const MatrixGroup& group);

// Drops every column with an entry above lambda.
KMInstance prune(const KMInstance& instance, std::uint32_t lambda);

void write_km(std::ostream& os, const KMInstance& instance);
KMInstance read_km(std::istream& is);
void export_km(const KMInstance& instance, const std::filesystem::path& path);
KMInstance import_km(const std::filesystem::path& path);

}  // namespace qsteiner
