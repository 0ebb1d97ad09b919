#include "qsteiner/fixtures.hpp"

#include <sstream>

#include "qsteiner/text_io.hpp"

namespace qsteiner::fixtures {

namespace {

const std::string kGenerators = R"(# F
1000000000010
0000000100011
0100000100000
0000000010011
0010000110011
0000000101000
0001000011001
0000000010100
0000100001100
0000000001010
0000010000110
0000000000101
0000001000011

# S
0000000000001
1000000000001
0100000000000
0010000000001
0001000000001
0000100000000
0000010000000
0000001000000
0000000100000
0000000010000
0000000001000
0000000000100
0000000000010
)";

const std::string kRepresentatives = R"(0000010110000
0000000000010
0000000000001

0000010000000
0000000000110
0000000000001

0000001010100
0000000001000
0000000000001

0000111010110
0000000001100
0000000000001

0001000000000
0000000010110
0000000000001

0010101100110
0000000011110
0000000000001

0010011010110
0000000100000
0000000000001

1001011001000
0000000100010
0000000000001

0111000000100
0000000100110
0000000000001

1001101000100
0000000101010
0000000000001

0101110010100
0000001001000
0000000000001

1011110010110
0000001010010
0000000000001

1011110010000
0000001011010
0000000000001

0001010110100
0000001100000
0000000000001

0110000011000
0000010100110
0000000000001
)";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<BitMatrix> parse(const std::string& text) {
  std::istringstream is(text);
  return read_matrix_blocks(is);
}

}  // namespace

const std::string& generators_text() { return kGenerators; }
const std::string& representatives_text() { return kRepresentatives; }

std::vector<BitMatrix> steiner_generators() { return parse(kGenerators); }
BitMatrix frobenius_generator() { return steiner_generators().at(0); }
BitMatrix singer_generator() { return steiner_generators().at(1); }

std::vector<Subspace> steiner_representatives() {
  std::vector<Subspace> out;
  for (const BitMatrix& m : parse(kRepresentatives)) out.push_back(canonicalize(m));
  return out;
}

std::uint64_t generators_checksum() { return fnv1a(kGenerators); }
std::uint64_t representatives_checksum() { return fnv1a(kRepresentatives); }

std::string self_test() {
  const auto gens = steiner_generators();
  if (gens.size() != 2) return "expected two generators";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].rows() != kSteinerDim || gens[i].cols() != kSteinerDim) return "generator is not 13 x 13";
    if (rank(gens[i]) != kSteinerDim) return "generator is singular";
  }
  const auto blocks = parse(kRepresentatives);
  if (blocks.size() != kSteinerRepCount) return "expected 15 representatives";
  for (const BitMatrix& b : blocks) {
    if (b.cols() != kSteinerDim || b.rows() != 3) return "representative is not 3 x 13";
    if (rank(b) != 3) return "representative basis is dependent";
  }
  return {};
}

}  // namespace qsteiner::fixtures
