#pragma once

// Dancing-links search for 0/1 solutions of A x = lambda * 1.
//
// Items carry a required multiplicity; an item leaves the active list only once it has
// been covered that many times. Branching on an item tries its options in list order
// and excludes each tried option from the later siblings, so every solution is produced
// exactly once for any multiplicity.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qsteiner/kramer_mesner.hpp"

namespace qsteiner {

struct CoverProblem {
  std::vector<std::uint32_t> item_labels;
  std::vector<std::uint32_t> multiplicity;  // per item, >= 1
  std::vector<std::uint32_t> option_labels;
  std::vector<std::vector<std::uint32_t>> option_items;  // item positions, ascending

  std::size_t item_count() const noexcept { return item_labels.size(); }
  std::size_t option_count() const noexcept { return option_labels.size(); }

  // Throws DimensionError when an option is empty, repeats an item, or names a
  // nonexistent item, or when labels are duplicated.
  void validate() const;
  std::uint64_t checksum() const;
};

// Items = rows (multiplicity lambda, or instance.lambda when lambda is 0); options =
// columns. Entries above 1 are rejected.
CoverProblem from_km(const KMInstance& instance, std::uint32_t lambda = 0);

enum class OptionOrder { kFile, kRandomized };
std::string to_string(OptionOrder o);
OptionOrder parse_option_order(const std::string& s);

struct SolveConfig {
  std::uint64_t max_solutions = 0;  // 0 = unlimited
  std::uint64_t node_limit = 0;     // 0 = unlimited
  double time_limit = 0.0;          // seconds, 0 = unlimited
  std::uint64_t seed = 0;
  OptionOrder order = OptionOrder::kFile;
  std::vector<std::uint32_t> forced;  // option labels selected before the search
};

enum class LimitHit { kNone, kMaxSolutions, kNodeLimit, kTimeLimit };
std::string to_string(LimitHit l);

struct SearchStats {
  std::uint64_t nodes = 0;  // option-selection events during the search
  std::uint64_t max_depth = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  LimitHit limit = LimitHit::kNone;
  bool exhausted = false;  // whole tree searched
  bool restored = false;   // link structure identical to its initial state afterwards
};

struct CoverSolution {
  std::vector<std::uint32_t> options;  // sorted option labels
  std::uint64_t found_at_node = 0;
  friend bool operator==(const CoverSolution& a, const CoverSolution& b) { return a.options == b.options; }
};

struct SolveResult {
  std::vector<CoverSolution> solutions;
  SearchStats stats;
};

SolveResult solve(const CoverProblem& problem, const SolveConfig& config);

// Independent solver instances, one per seed, run in parallel; solutions are merged,
// deduplicated by label set and sorted. Stats are summed (nodes) or maximized.
SolveResult solve_portfolio(const CoverProblem& problem, const SolveConfig& config,
                            const std::vector<std::uint64_t>& seeds);

struct CoverCheck {
  bool ok = false;
  std::map<std::uint32_t, std::uint64_t> histogram;  // coverage count -> number of items
};

// Throws Error on an unknown option label.
CoverCheck check_solution(const CoverProblem& problem, const std::vector<std::uint32_t>& selection);

void write_solutions(std::ostream& os, const CoverProblem& problem, const SolveConfig& config,
                     const SolveResult& result);
std::vector<std::vector<std::uint32_t>> read_solutions(std::istream& is);

}  // namespace qsteiner
