// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qsteiner/design.hpp"
#include "qsteiner/exact_cover.hpp"
#include "qsteiner/fixtures.hpp"
#include "qsteiner/group.hpp"
#include "qsteiner/kramer_mesner.hpp"
#include "qsteiner/orbits.hpp"

using namespace qsteiner;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds,
               const std::function<std::string(bool&)>& body) {
  const auto t0 = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    detail = body(ok);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    ok = false;
    detail += " (over the " + std::to_string(static_cast<int>(limit_seconds)) + " s target)";
  }
  if (!ok) ++failures;
  std::printf("[%s] %2d %-34s %8.2f s  %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs, detail.c_str());
  std::fflush(stdout);
}

std::set<std::vector<std::uint32_t>> solution_set(const SolveResult& r) {
  std::set<std::vector<std::uint32_t>> s;
  for (const CoverSolution& c : r.solutions) s.insert(c.options);
  return s;
}

// Property checks, each returning the number of counterexamples found.
std::uint64_t rref_properties(std::mt19937_64& rng) {
  std::uint64_t bad = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 16);
    const int r = 1 + static_cast<int>(rng() % 8);
    std::vector<Word> rows(static_cast<std::size_t>(r));
    for (auto& x : rows) x = rng() & low_mask(n);
    const Subspace s = canonicalize(n, rows);
    bad += canonicalize(n, {s.rows().begin(), s.rows().end()}) != s;
    std::vector<Word> mixed = rows;
    for (std::size_t i = 1; i < mixed.size(); ++i) mixed[i] ^= mixed[i - 1];
    std::reverse(mixed.begin(), mixed.end());
    bad += canonicalize(n, mixed) != s;
    if (n <= 10) bad += oracle::span(rows) != oracle::span({s.rows().begin(), s.rows().end()});
  }
  return bad;
}

std::uint64_t action_properties(const MatrixGroup& g, std::mt19937_64& rng) {
  std::uint64_t bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Word> rows{rng() & 0x1fff, rng() & 0x1fff};
    const Subspace u = canonicalize(13, rows);
    const std::size_t a = rng() % g.size();
    const std::size_t b = rng() % g.size();
    bad += act(g.element(a) * g.element(b), u) != act(g, a, act(g, b, u));
    bad += act(g, 0, u) != u;
    bad += act(g, g.inverse_index(a), act(g, a, u)) != u;
  }
  return bad;
}

std::uint64_t orbit_and_km_properties() {
  std::uint64_t bad = 0;
  for (int n : {4, 5, 6}) {
    const MatrixGroup g = singer_normalizer(n);
    std::vector<OrbitTable> tables;
    for (int k = 0; k <= n; ++k) tables.push_back(orbit_partition(n, k, g, OrbitStrategy::kFullEnumeration));
    for (int k = 1; k < n; ++k) {
      for (std::size_t i = 0; i < tables[k].size(); ++i) {
        bad += g.order() % tables[k].length(i) != 0;
        bad += tables[k].stabilizer(i).size() * tables[k].length(i) != g.order();
      }
      if (k >= 2) {
        const OrbitTable ext = orbit_partition(n, k, g, OrbitStrategy::kExtension);
        bad += ext.reps() != tables[k].reps() || ext.lengths() != tables[k].lengths();
      }
    }
    for (int t = 1; t < n; ++t) {
      for (int k = t + 1; k < n; ++k) {
        // build_km throws on a non-integral double count; equality with the brute force
        // expansion covers the values themselves.
        bad += build_km(tables[t], tables[k], g) != build_km_brute_force(tables[t], tables[k], g);
      }
    }
  }
  return bad;
}

std::uint64_t solver_properties(std::mt19937_64& rng) {
  std::uint64_t bad = 0;
  for (int trial = 0; trial < 300; ++trial) {
    CoverProblem p;
    const int items = 3 + static_cast<int>(rng() % 10);
    const int options = 4 + static_cast<int>(rng() % 18);
    const std::uint32_t lambda = 1 + static_cast<std::uint32_t>(trial % 2);
    for (int i = 0; i < items; ++i) {
      p.item_labels.push_back(static_cast<std::uint32_t>(i));
      p.multiplicity.push_back(lambda);
    }
    for (int o = 0; o < options; ++o) {
      std::vector<std::uint32_t> its;
      for (int i = 0; i < items; ++i) {
        if (rng() % 3 == 0) its.push_back(static_cast<std::uint32_t>(i));
      }
      if (its.empty()) its.push_back(0);
      p.option_labels.push_back(static_cast<std::uint32_t>(o));
      p.option_items.push_back(its);
    }
    SolveConfig c;
    c.order = trial % 3 ? OptionOrder::kRandomized : OptionOrder::kFile;
    c.seed = static_cast<std::uint64_t>(trial);
    const SolveResult r = solve(p, c);
    for (const CoverSolution& s : r.solutions) bad += !check_solution(p, s.options).ok;
    bad += solution_set(r) != oracle::backtrack_all(p);
    bad += !r.stats.restored;
  }
  return bad;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  std::optional<MatrixGroup> group;
  std::shared_ptr<const OrbitTable> two_orbits;
  BlockSet blocks;
  DesignReport report;
  std::optional<CoverageIndex> index;

  criterion(1, "group order 106483", 60, [&](bool& ok) {
    group.emplace(group_closure(fixtures::steiner_generators()));
    ok = group->order() == 106483;
    return "|<F,S>| = " + std::to_string(group->order());
  });

  criterion(2, "105 two-orbits of length 106483", 600, [&](bool& ok) {
    two_orbits = std::make_shared<const OrbitTable>(orbit_partition(13, 2, *group, OrbitStrategy::kFullEnumeration));
    std::size_t regular = 0;
    for (std::size_t i = 0; i < two_orbits->size(); ++i) regular += two_orbits->length(i) == 106483;
    ok = two_orbits->size() == 105 && regular == 105 && two_orbits->total_length() == 11180715;
    return std::to_string(two_orbits->size()) + " orbits, " + std::to_string(regular) + " of length 106483";
  });

  // Runs before any KM matrix or solver exists.
  criterion(4, "Table 1 design certification", 900, [&](bool& ok) {
    blocks = expand_orbits(fixtures::steiner_representatives(), *group);
    index.emplace(blocks, 2, kDefaultVerifyBudget);
    report = verify_design(blocks, *index, 1);
    const bool hist = report.histogram.size() == 1 && report.histogram.count(1) &&
                      report.histogram.at(1) == 11180715;
    ok = blocks.size() == 1597245 && report.pass && hist;
    std::ostringstream os;
    os << blocks.size() << " blocks, histogram {";
    for (const auto& [c, m] : report.histogram) os << c << ": " << m;
    os << "}";
    return os.str();
  });

  criterion(7, "packing bound and distance 4", 0, [&](bool& ok) {
    const BigInt bound = packing_bound(13, 3, 2);
    const DistanceCertificate c = min_distance_certificate(blocks, report, 1'000'000, 20240101);
    ok = bound == 1597245 && c.ok && c.min_distance == 4 && c.samples == 1'000'000 && c.min_sampled >= 4;
    return "bound " + bound.str() + ", d = " + std::to_string(c.min_distance) + ", " + std::to_string(c.samples) +
           " pairs, min sampled " + std::to_string(c.min_sampled);
  });

  criterion(8, "derived S(3,8,8192) triples", 120, [&](bool& ok) {
    const DerivedCheck c = derived_steiner_sample_check(blocks, *index, 100'000, 77);
    ok = c.samples == 100'000 && c.failures == 0;
    return std::to_string(c.samples) + " triples, " + std::to_string(c.failures) + " failures";
  });

  std::optional<OrbitTable> three_orbits;
  KMInstance pruned;
  criterion(3, "KM 105 x 25572 after pruning", 7200, [&](bool& ok) {
    three_orbits.emplace(
        orbit_partition(13, 3, *group, OrbitStrategy::kExtension, kDefaultEnumerationGuard, two_orbits));
    const KMInstance km = build_km(*two_orbits, *three_orbits, *group);
    std::size_t sums_ok = 0;
    for (std::uint64_t s : km.row_sums()) sums_ok += s == 2047;
    pruned = prune(km, 1);
    ok = three_orbits->complete() && sums_ok == 105 && pruned.rows.size() == 105 && pruned.cols.size() == 25572 &&
         pruned.max_entry() == 1;
    return std::to_string(three_orbits->size()) + " three-orbits (sum " + three_orbits->total_length().str() +
           "), row sums 2047: " + std::to_string(sums_ok) + "/105, pruned " + std::to_string(pruned.rows.size()) +
           " x " + std::to_string(pruned.cols.size());
  });

  criterion(5, "Table 1 columns solve the system", 0, [&](bool& ok) {
    const CoverProblem problem = from_km(pruned, 1);
    std::vector<std::uint32_t> cols;
    for (const Subspace& r : fixtures::steiner_representatives()) cols.push_back(three_orbits->lookup(r, *group));
    const CoverCheck check = check_solution(problem, cols);
    ok = check.ok && cols.size() == 15;
    std::ostringstream os;
    os << "columns";
    for (std::uint32_t c : cols) os << ' ' << c;
    return os.str();
  });

  criterion(6, "STS(7) = 30, GF(2)^4 spreads = 56", 20, [&](bool& ok) {
    const CoverProblem sts = oracle::sts_problem(7);
    const CoverProblem spread = oracle::spread4_problem();
    const auto sts_brute = oracle::subsets_brute_force(sts, 7);
    const auto spread_brute = oracle::subsets_brute_force(spread, 5);
    const SolveResult a = solve(sts, {});
    const SolveResult b = solve(spread, {});
    bool five = true;
    for (const CoverSolution& s : b.solutions) five = five && s.options.size() == 5;
    ok = a.solutions.size() == 30 && sts_brute.size() == 30 && solution_set(a) == sts_brute &&
         b.solutions.size() == 56 && spread_brute.size() == 56 && solution_set(b) == spread_brute && five;
    return "solver " + std::to_string(a.solutions.size()) + " / " + std::to_string(b.solutions.size()) +
           ", brute force " + std::to_string(sts_brute.size()) + " / " + std::to_string(spread_brute.size());
  });

  criterion(10, "property suites", 300, [&](bool& ok) {
    std::mt19937_64 rng(10);
    const std::uint64_t r1 = rref_properties(rng);
    const std::uint64_t r2 = action_properties(*group, rng);
    const std::uint64_t r3 = orbit_and_km_properties();
    const std::uint64_t r4 = solver_properties(rng);
    ok = r1 + r2 + r3 + r4 == 0;
    return "counterexamples: rref " + std::to_string(r1) + ", action " + std::to_string(r2) + ", orbits/KM " +
           std::to_string(r3) + ", solver " + std::to_string(r4);
  });

  std::printf("[SKIP]  9 unassisted solve of the full system: stretch goal, not a gate\n");
  std::printf("%s (%d failing)\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failures);
  return failures ? 1 : 0;
}
