#pragma once

// Plain text formats.
//
// Matrices: one row per line of '0'/'1' characters, leftmost character is coordinate 0.
// '#' starts a comment line and a blank line ends a block. Subspaces are written as
// matrix blocks holding their reduced basis rows.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qsteiner/gf2.hpp"
#include "qsteiner/group.hpp"
#include "qsteiner/orbits.hpp"
#include "qsteiner/subspace.hpp"

namespace qsteiner {

std::vector<BitMatrix> read_matrix_blocks(std::istream& is);
void write_matrix_blocks(std::ostream& os, const std::vector<BitMatrix>& blocks);

// Each block spans a subspace; blocks may be dependent spanning sets and are
// canonicalized. All blocks must share one ambient dimension.
std::vector<Subspace> read_subspaces(std::istream& is);
void write_subspaces(std::ostream& os, const std::vector<Subspace>& subspaces);

// Generators as matrix blocks; the result is not expanded.
MatrixGroup read_group(std::istream& is);
void write_group(std::ostream& os, const MatrixGroup& group);

// Header "n k group-hash group-order", then per orbit a line "id length" followed by
// the representative rows, orbits separated by blank lines.
void write_orbit_table(std::ostream& os, const OrbitTable& table);
OrbitTable read_orbit_table(std::istream& is);

std::vector<BitMatrix> load_matrix_blocks(const std::filesystem::path& path);
std::vector<Subspace> load_subspaces(const std::filesystem::path& path);
MatrixGroup load_group(const std::filesystem::path& path);
OrbitTable load_orbit_table(const std::filesystem::path& path);

void save_subspaces(const std::filesystem::path& path, const std::vector<Subspace>& subspaces);
void save_group(const std::filesystem::path& path, const MatrixGroup& group);
void save_orbit_table(const std::filesystem::path& path, const OrbitTable& table);

}  // namespace qsteiner
