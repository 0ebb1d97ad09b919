#include <doctest.h>

#include <sstream>

#include "qsteiner/error.hpp"
#include "qsteiner/group.hpp"
#include "qsteiner/kramer_mesner.hpp"
#include "qsteiner/orbits.hpp"

using namespace qsteiner;

namespace {

struct Tables {
  OrbitTable t;
  OrbitTable k;
};

Tables tables(int n, int t, int k, const MatrixGroup& g) {
  return {orbit_partition(n, t, g, OrbitStrategy::kFullEnumeration),
          orbit_partition(n, k, g, OrbitStrategy::kFullEnumeration)};
}

}  // namespace

TEST_CASE("build_km matches the brute-force expansion for n <= 6") {
  std::vector<MatrixGroup> groups;
  for (int n : {4, 5, 6}) {
    groups.push_back(singer_normalizer(n));
    groups.push_back(group_closure({companion_matrix(primitive_polynomial(n))}));
  }
  groups.push_back(group_closure(MatrixGroup::trivial(4)));
  for (const MatrixGroup& g : groups) {
    const int n = g.dim();
    for (int t = 1; t < n; ++t) {
      for (int k = t + 1; k < n; ++k) {
        CAPTURE(n);
        CAPTURE(t);
        CAPTURE(k);
        const Tables tb = tables(n, t, k, g);
        const KMInstance fast = build_km(tb.t, tb.k, g);
        const KMInstance slow = build_km_brute_force(tb.t, tb.k, g);
        CHECK(fast == slow);
        const auto sums = fast.row_sums();
        for (std::uint64_t s : sums) CHECK(BigInt(s) == gaussian_binomial(n - t, k - t, 2));
      }
    }
  }
}

TEST_CASE("row sums and entries for the trivial group are plain incidences") {
  const MatrixGroup g = group_closure(MatrixGroup::trivial(4));
  const Tables tb = tables(4, 1, 2, g);
  const KMInstance km = build_km(tb.t, tb.k, g);
  CHECK(km.rows.size() == 15);
  CHECK(km.cols.size() == 35);
  CHECK(km.entries.size() == 35 * 3);
  CHECK(km.max_entry() == 1);
  for (std::uint64_t s : km.row_sums()) CHECK(s == 7);
}

TEST_CASE("prune drops columns above lambda and records them") {
  KMInstance km;
  km.n = 4;
  km.t = 1;
  km.k = 2;
  km.rows = {{0, 1}, {1, 1}, {2, 1}};
  km.cols = {{0, 1}, {1, 1}, {2, 1}};
  km.entries = {{0, 0, 1}, {1, 0, 1}, {1, 1, 3}, {2, 1, 2}, {0, 2, 2}, {2, 2, 1}};
  const KMInstance p1 = prune(km, 1);
  CHECK(p1.lambda == 1);
  REQUIRE(p1.cols.size() == 1);
  CHECK(p1.cols[0].id == 0);
  CHECK(p1.entries.size() == 2);
  REQUIRE(p1.pruned.size() == 2);
  CHECK(p1.pruned[0] == PrunedColumn{1, 1, 3});
  CHECK(p1.pruned[1] == PrunedColumn{2, 0, 2});
  const KMInstance p2 = prune(km, 2);
  CHECK(p2.cols.size() == 2);
  CHECK(p2.pruned.size() == 1);
  CHECK_THROWS(prune(km, 0));
}

TEST_CASE("KM file round trip is bit exact") {
  const MatrixGroup g = singer_normalizer(6);
  const Tables tb = tables(6, 2, 3, g);
  const KMInstance km = build_km(tb.t, tb.k, g);
  for (const KMInstance& inst : {km, prune(km, 1)}) {
    std::stringstream ss;
    write_km(ss, inst);
    const std::string text = ss.str();
    const KMInstance back = read_km(ss);
    CHECK(back == inst);
    std::stringstream again;
    write_km(again, back);
    CHECK(again.str() == text);
  }
}

TEST_CASE("KM parse errors carry line numbers") {
  auto parse = [](const std::string& s) {
    std::istringstream is(s);
    return read_km(is);
  };
  const std::string good = "KM 4 1 2 0 1 1\nR 0 15\nC 0 35\nE 0 0 7\nX 66\n";
  CHECK_NOTHROW(parse(good));
  CHECK_THROWS_AS(parse("KM 4 1 2 0 1 1\nR 0 15\nC 0 35\nE 0 0 7\nX 67\n"), ParseError);
  CHECK_THROWS_AS(parse("KM 4 1 2 0 1 1\nR 0 15\nC 0 35\nQ 1\nX 66\n"), ParseError);
  CHECK_THROWS_AS(parse("KM 4 1 2 0 1 1\nR 0 15\nC 0 35\nE 0 0 7\n"), ParseError);
  CHECK_THROWS_AS(parse("R 0 15\n"), ParseError);
  CHECK_THROWS_AS(parse("KM 4 1 2 0 1 1\nR 0 15 9\nC 0 35\nX 68\n"), ParseError);
  try {
    parse("KM 4 1 2 0 1 1\nR 0 15\nC 0 x\nX 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("tables from different groups are refused") {
  const MatrixGroup a = singer_normalizer(5);
  const MatrixGroup b = group_closure(MatrixGroup::trivial(5));
  const OrbitTable ta = orbit_partition(5, 1, a, OrbitStrategy::kFullEnumeration);
  const OrbitTable tb = orbit_partition(5, 2, b, OrbitStrategy::kFullEnumeration);
  CHECK_THROWS(build_km(ta, tb, a));
  CHECK_THROWS_AS(build_km(tb, ta, a), DimensionError);
}
