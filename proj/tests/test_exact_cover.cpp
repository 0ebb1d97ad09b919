#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qsteiner/error.hpp"
#include "qsteiner/exact_cover.hpp"
#include "qsteiner/group.hpp"
#include "qsteiner/kramer_mesner.hpp"
#include "qsteiner/orbits.hpp"

using namespace qsteiner;

namespace {

std::set<std::vector<std::uint32_t>> as_set(const SolveResult& r) {
  std::set<std::vector<std::uint32_t>> s;
  for (const CoverSolution& c : r.solutions) s.insert(c.options);
  return s;
}

CoverProblem random_problem(std::mt19937_64& rng, std::uint32_t lambda) {
  CoverProblem p;
  const int items = 3 + static_cast<int>(rng() % 8);
  const int options = 4 + static_cast<int>(rng() % 16);
  for (int i = 0; i < items; ++i) {
    p.item_labels.push_back(static_cast<std::uint32_t>(100 + i));
    p.multiplicity.push_back(lambda);
  }
  for (int o = 0; o < options; ++o) {
    std::vector<std::uint32_t> its;
    for (int i = 0; i < items; ++i) {
      if (rng() % 3 == 0) its.push_back(static_cast<std::uint32_t>(i));
    }
    if (its.empty()) its.push_back(static_cast<std::uint32_t>(rng() % items));
    p.option_labels.push_back(static_cast<std::uint32_t>(7 * o + 1));
    p.option_items.push_back(its);
  }
  return p;
}

}  // namespace

TEST_CASE("STS(7) has 30 pair covers") {
  const CoverProblem p = oracle::sts_problem(7);
  const auto brute = oracle::subsets_brute_force(p, 7);
  CHECK(brute.size() == 30);
  const SolveResult r = solve(p, {});
  CHECK(r.solutions.size() == 30);
  CHECK(as_set(r) == brute);
  CHECK(r.stats.exhausted);
  CHECK(r.stats.restored);
  CHECK(r.stats.limit == LimitHit::kNone);
}

TEST_CASE("GF(2)^4 has 56 line spreads") {
  const CoverProblem p = oracle::spread4_problem();
  const auto brute = oracle::subsets_brute_force(p, 5);
  CHECK(brute.size() == 56);
  CHECK(oracle::backtrack_all(p) == brute);
  const SolveResult r = solve(p, {});
  CHECK(as_set(r) == brute);
  for (const CoverSolution& s : r.solutions) CHECK(s.options.size() == 5);
}

TEST_CASE("the spread instance built through KM gives the same count") {
  const MatrixGroup g = group_closure(MatrixGroup::trivial(4));
  const OrbitTable pts = orbit_partition(4, 1, g, OrbitStrategy::kFullEnumeration);
  const OrbitTable lines = orbit_partition(4, 2, g, OrbitStrategy::kFullEnumeration);
  const CoverProblem p = from_km(build_km(pts, lines, g));
  CHECK(solve(p, {}).solutions.size() == 56);
}

TEST_CASE("solver is complete and sound on random small instances") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint32_t lambda = 1 + static_cast<std::uint32_t>(trial % 3);
    const CoverProblem p = random_problem(rng, lambda);
    const auto brute = oracle::backtrack_all(p);
    for (OptionOrder order : {OptionOrder::kFile, OptionOrder::kRandomized}) {
      SolveConfig c;
      c.order = order;
      c.seed = static_cast<std::uint64_t>(trial);
      const SolveResult r = solve(p, c);
      CHECK(as_set(r) == brute);
      CHECK(r.solutions.size() == brute.size());
      CHECK(r.stats.restored);
      for (const CoverSolution& s : r.solutions) CHECK(check_solution(p, s.options).ok);
    }
  }
}

TEST_CASE("lambda = 2 toy: every pair of 4 points twice by triples") {
  CoverProblem p = oracle::sts_problem(4);
  for (auto& m : p.multiplicity) m = 2;
  const auto brute = oracle::backtrack_all(p);
  REQUIRE(brute.size() == 1);
  CHECK(brute.begin()->size() == 4);
  CHECK(as_set(solve(p, {})) == brute);
  p = oracle::sts_problem(6);
  for (auto& m : p.multiplicity) m = 2;
  CHECK(as_set(solve(p, {})) == oracle::backtrack_all(p));
}

TEST_CASE("limits") {
  const CoverProblem p = oracle::sts_problem(7);
  SolveConfig c;
  c.max_solutions = 4;
  SolveResult r = solve(p, c);
  CHECK(r.solutions.size() == 4);
  CHECK(r.stats.limit == LimitHit::kMaxSolutions);
  CHECK_FALSE(r.stats.exhausted);
  CHECK(r.stats.restored);

  c = {};
  c.node_limit = 10;
  r = solve(p, c);
  CHECK(r.stats.limit == LimitHit::kNodeLimit);
  CHECK(r.stats.nodes <= 10);
  CHECK(r.stats.restored);

  c = {};
  c.time_limit = 1e-9;
  r = solve(oracle::sts_problem(9), c);
  CHECK(r.stats.limit == LimitHit::kTimeLimit);
}

TEST_CASE("seeded order is deterministic") {
  const CoverProblem p = oracle::sts_problem(7);
  SolveConfig c;
  c.order = OptionOrder::kRandomized;
  c.seed = 42;
  c.max_solutions = 1;
  const SolveResult a = solve(p, c);
  const SolveResult b = solve(p, c);
  CHECK(a.solutions == b.solutions);
  CHECK(a.stats.nodes == b.stats.nodes);
  c.max_solutions = 0;
  CHECK(solve(p, c).solutions.size() == 30);
}

TEST_CASE("forced options") {
  const CoverProblem p = oracle::spread4_problem();
  const SolveResult all = solve(p, {});
  const auto target = all.solutions[17].options;
  SolveConfig c;
  c.forced = {target[0], target[3]};
  const SolveResult r = solve(p, c);
  REQUIRE_FALSE(r.solutions.empty());
  for (const CoverSolution& s : r.solutions) {
    CHECK(std::count(s.options.begin(), s.options.end(), target[0]) == 1);
    CHECK(std::count(s.options.begin(), s.options.end(), target[3]) == 1);
  }
  c.forced = target;
  const SolveResult exact = solve(p, c);
  REQUIRE(exact.solutions.size() == 1);
  CHECK(exact.solutions[0].options == target);
  CHECK(exact.stats.restored);

  c.forced = {target[0], target[0]};
  CHECK(solve(p, c).solutions.empty());
  c.forced = {9999};
  CHECK_THROWS(solve(p, c));
}

TEST_CASE("portfolio merges and deduplicates") {
  const CoverProblem p = oracle::sts_problem(7);
  SolveConfig c;
  c.order = OptionOrder::kRandomized;
  const SolveResult r = solve_portfolio(p, c, {1, 2, 3, 4});
  CHECK(r.solutions.size() == 30);
  CHECK(std::is_sorted(r.solutions.begin(), r.solutions.end(),
                       [](const CoverSolution& a, const CoverSolution& b) { return a.options < b.options; }));
  c.max_solutions = 1;
  const SolveResult one = solve_portfolio(p, c, {1, 2, 3, 4, 5, 6});
  CHECK(one.solutions.size() >= 1);
  CHECK(one.solutions.size() <= 6);
}

TEST_CASE("validation and KM conversion") {
  CoverProblem p = oracle::sts_problem(4);
  p.option_items[0] = {};
  CHECK_THROWS_AS(p.validate(), DimensionError);
  p = oracle::sts_problem(4);
  p.option_items[0] = {1, 1};
  CHECK_THROWS_AS(p.validate(), DimensionError);
  p = oracle::sts_problem(4);
  p.option_items[0] = {0, 99};
  CHECK_THROWS_AS(p.validate(), DimensionError);

  KMInstance km;
  km.rows = {{0, 1}, {1, 1}};
  km.cols = {{5, 1}, {6, 1}};
  km.entries = {{0, 5, 1}, {1, 5, 2}, {1, 6, 1}};
  try {
    from_km(km);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("column 5") != std::string::npos);
  }
  const CoverProblem q = from_km(prune(km, 1));
  CHECK(q.option_labels == std::vector<std::uint32_t>{6});
  CHECK(q.multiplicity == std::vector<std::uint32_t>{1, 1});
  CHECK_THROWS(check_solution(q, {5}));
  const CoverCheck chk = check_solution(q, {6});
  CHECK_FALSE(chk.ok);
  CHECK(chk.histogram.at(0) == 1);
  CHECK(chk.histogram.at(1) == 1);
}

TEST_CASE("solution files") {
  const CoverProblem p = oracle::sts_problem(7);
  SolveConfig c;
  c.seed = 5;
  const SolveResult r = solve(p, c);
  std::stringstream ss;
  write_solutions(ss, p, c, r);
  const std::string text = ss.str();
  CHECK(text.find("# problem-checksum") != std::string::npos);
  const auto back = read_solutions(ss);
  REQUIRE(back.size() == r.solutions.size());
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == r.solutions[i].options);
  std::stringstream again;
  write_solutions(again, p, c, solve(p, c));
  CHECK(again.str() == text);
  std::istringstream bad("1 2 x\n");
  CHECK_THROWS_AS(read_solutions(bad), ParseError);
  CHECK(p.checksum() == oracle::sts_problem(7).checksum());
  CHECK(p.checksum() != oracle::sts_problem(6).checksum());
}
