#pragma once

// Published fixtures for the 2-(13,3,1) q-Steiner system over GF(2): the generators F
// and S of the group (order 106483) and the 15 orbit representatives of the blocks.

#include <cstdint>
#include <string>
#include <vector>

#include "qsteiner/gf2.hpp"
#include "qsteiner/subspace.hpp"

namespace qsteiner::fixtures {

inline constexpr int kSteinerDim = 13;
inline constexpr std::uint64_t kSteinerGroupOrder = 106483;
inline constexpr std::size_t kSteinerRepCount = 15;

BitMatrix frobenius_generator();  // F
BitMatrix singer_generator();     // S
std::vector<BitMatrix> steiner_generators();  // {F, S}
std::vector<Subspace> steiner_representatives();

// FNV-1a over the fixture text, to detect accidental edits.
std::uint64_t generators_checksum();
std::uint64_t representatives_checksum();

// The embedded text, in the matrix format of text_io.hpp.
const std::string& generators_text();
const std::string& representatives_text();

// Checks shapes, invertibility of F and S, and that every representative has dimension 3.
// Returns an empty string on success, otherwise a description of the first failure.
std::string self_test();

}  // namespace qsteiner::fixtures
