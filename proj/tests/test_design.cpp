#include <doctest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "qsteiner/design.hpp"
#include "qsteiner/error.hpp"
#include "qsteiner/fixtures.hpp"
#include "qsteiner/group.hpp"

using namespace qsteiner;

namespace {

const MatrixGroup& fixture_group() {
  static const MatrixGroup g = group_closure(fixtures::steiner_generators());
  return g;
}

const BlockSet& fixture_blocks() {
  static const BlockSet b = expand_orbits(fixtures::steiner_representatives(), fixture_group());
  return b;
}

std::vector<Subspace> spread4() {
  std::vector<Subspace> out;
  for (const std::vector<Word>& rows : std::vector<std::vector<Word>>{
           {1, 2}, {4, 8}, {5, 10}, {6, 11}, {7, 9}}) {
    out.push_back(canonicalize(4, rows));
  }
  return out;
}

}  // namespace

TEST_CASE("expand_orbits") {
  const auto reps = fixtures::steiner_representatives();
  CHECK(expand_orbits({reps[0]}, group_closure(MatrixGroup::trivial(13))).size() == 1);
  const BlockSet one = expand_orbits({reps[3]}, fixture_group());
  CHECK(one.size() == 106483);
  CHECK(one.orbit_lengths == std::vector<std::uint64_t>{106483});
  CHECK(fixture_blocks().size() == 1597245);
  CHECK(std::is_sorted(fixture_blocks().ranks.begin(), fixture_blocks().ranks.end()));
  CHECK(fixture_blocks().group_hash == fixture_group().generator_hash());
  CHECK_THROWS_AS(expand_orbits({reps[0], canonicalize(13, std::vector<Word>{1, 2})}, fixture_group()),
                  DimensionError);
}

TEST_CASE("the fixture design is a 2-(13,3,1) design") {
  const DesignReport r = verify_design(fixture_blocks(), 2, 1);
  CHECK(r.pass);
  CHECK(r.block_count_ok);
  CHECK(r.t_subspaces == 11180715);
  REQUIRE(r.histogram.size() == 1);
  CHECK(r.histogram.at(1) == 11180715);
  CHECK(r.violations.empty());
}

TEST_CASE("removing one block uncovers exactly 7 two-subspaces") {
  BlockSet b = fixture_blocks();
  b.ranks.erase(b.ranks.begin() + 12345);
  const DesignReport r = verify_design(b, 2, 1);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.block_count_ok);
  CHECK(r.histogram.at(0) == 7);
  CHECK(r.histogram.at(1) == 11180715 - 7);
  CHECK(r.violation_count == 7);
  CHECK(r.violations.size() == 7);
  for (const Violation& v : r.violations) CHECK(v.blocks.empty());
}

TEST_CASE("spread of GF(2)^4") {
  const BlockSet b = block_set_from(4, 2, spread4());
  const DesignReport r = verify_design(b, 1, 1);
  CHECK(r.pass);
  CHECK(r.histogram.at(1) == 15);
  const DistanceCertificate c = min_distance_certificate(b, r, 10, 1);
  CHECK(c.min_distance == 4);
  CHECK(c.ok);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) CHECK(subspace_distance(b.block(i), b.block(j)) == 4);
  }
}

TEST_CASE("verify_design agrees with a naive double loop for n <= 6") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 4 + trial % 3;
    const int k = 2 + static_cast<int>(rng() % (n - 2));
    const int t = 1 + static_cast<int>(rng() % (k - 1));
    const auto all = enumerate_subspaces(n, k);
    std::vector<Subspace> chosen;
    for (const Subspace& s : all) {
      if (rng() % 4 == 0) chosen.push_back(s);
    }
    if (chosen.empty()) chosen.push_back(all.front());
    const BlockSet b = block_set_from(n, k, chosen);
    const DesignReport r = verify_design(b, t, 1);
    std::map<std::uint32_t, std::uint64_t> naive;
    for (const Subspace& ts : enumerate_subspaces(n, t)) {
      std::uint32_t c = 0;
      for (const Subspace& blk : chosen) c += contains(ts, blk);
      ++naive[c];
    }
    CHECK(r.histogram == naive);
    std::uint64_t weighted = 0;
    for (const auto& [c, m] : r.histogram) weighted += c * m;
    CHECK(BigInt(weighted) == BigInt(b.size()) * gaussian_binomial(k, t, 2));
  }
}

TEST_CASE("verification guard") {
  CHECK_THROWS_AS(verify_design(fixture_blocks(), 2, 1, 1000), LimitError);
  CHECK_THROWS_AS(verify_design(fixture_blocks(), 3, 1), DimensionError);
}

TEST_CASE("distance certificate") {
  const DesignReport r = verify_design(fixture_blocks(), 2, 1);
  const DistanceCertificate c = min_distance_certificate(fixture_blocks(), r, 100000, 3);
  CHECK(c.ok);
  CHECK(c.min_distance == 4);
  CHECK(c.min_sampled >= 4);
  CHECK(c.samples == 100000);

  BlockSet dup = block_set_from(4, 2, spread4());
  dup.ranks.push_back(dup.ranks.front());
  std::sort(dup.ranks.begin(), dup.ranks.end());
  const DesignReport bad = verify_design(dup, 1, 1);
  CHECK_FALSE(bad.pass);
  CHECK_THROWS(min_distance_certificate(dup, bad, 10, 1));
  CHECK_THROWS(min_distance_certificate(dup, r, 10, 1));
}

TEST_CASE("packing bounds") {
  CHECK(packing_bound(13, 3, 2) == 1597245);
  CHECK(packing_bound(4, 2, 1) == 5);
  CHECK(packing_bound(5, 5, 2) == 1);
  CHECK(packing_bound(7, 3, 2) == 381);
  CHECK_THROWS(packing_bound(5, 2, 1));
  CHECK_THROWS_AS(packing_bound(5, 2, 2), DimensionError);
}

TEST_CASE("derived Steiner system") {
  const BlockSet& b = fixture_blocks();
  const CoverageIndex index(b, 2, kDefaultVerifyBudget);
  const DerivedCheck c = derived_steiner_sample_check(b, index, 20000, 8);
  CHECK(c.samples == 20000);
  CHECK(c.failures == 0);

  // A triple inside one known coset x + B.
  const Subspace blk = b.block(99);
  const Word x = 0x1abc;
  CHECK(derived_triple_covered(b, index, x, x ^ blk.rows()[0], x ^ blk.rows()[1] ^ blk.rows()[2]));

  // Delete that block: the same triple must now fail.
  BlockSet holed = b;
  holed.ranks.erase(holed.ranks.begin() + 99);
  const CoverageIndex holed_index(holed, 2, kDefaultVerifyBudget);
  CHECK_FALSE(derived_triple_covered(holed, holed_index, x, x ^ blk.rows()[0], x ^ blk.rows()[1] ^ blk.rows()[2]));
  CHECK_THROWS(derived_triple_covered(b, index, x, x, 1));
}

TEST_CASE("block set file round trip") {
  const BlockSet b = block_set_from(4, 2, spread4());
  const auto path = std::filesystem::temp_directory_path() / "qsteiner_blocks_test.txt";
  save_block_set(path, b);
  const BlockSet back = load_block_set(path);
  CHECK(back.ranks == b.ranks);
  CHECK(back.n == 4);
  CHECK(back.k == 2);
  std::filesystem::remove(path);
}
