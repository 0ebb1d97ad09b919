// qsteiner: command line front end for the orbit / Kramer-Mesner / exact cover pipeline.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsteiner/design.hpp"
#include "qsteiner/error.hpp"
#include "qsteiner/exact_cover.hpp"
#include "qsteiner/fixtures.hpp"
#include "qsteiner/group.hpp"
#include "qsteiner/kernels.hpp"
#include "qsteiner/kramer_mesner.hpp"
#include "qsteiner/orbits.hpp"
#include "qsteiner/subspace.hpp"
#include "qsteiner/text_io.hpp"

namespace fs = std::filesystem;
using namespace qsteiner;

namespace {

enum Exit { kPass = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct UsageError : Error {
  using Error::Error;
};

struct Globals {
  int threads = 0;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

struct GroupSource {
  std::string fixture;
  int singer = 0;
  std::string generators;
  bool trivial = false;
  int n = 0;

  void add_to(CLI::App* app) {
    app->add_option("--fixture", fixture, "Embedded fixture group")->check(CLI::IsMember({"paper-13"}));
    app->add_option("--singer-normalizer", singer, "Normalizer of a Singer cycle of GF(2)^N")
        ->check(CLI::Range(kMinPrimitiveDegree, kMaxPrimitiveDegree));
    app->add_option("--generators", generators, "Generator matrix file")->check(CLI::ExistingFile);
    app->add_flag("--trivial-group", trivial, "Trivial group on GF(2)^n (needs --n)");
    app->add_option("--n", n, "Ambient dimension for --trivial-group")->check(CLI::Range(1, 64));
  }

  MatrixGroup load(bool expand = true) const {
    const int sources = (!fixture.empty()) + (singer > 0) + (!generators.empty()) + trivial;
    if (sources != 1) {
      throw UsageError("choose exactly one of --fixture, --singer-normalizer, --generators, --trivial-group");
    }
    MatrixGroup g;
    if (!fixture.empty()) {
      if (n && n != fixtures::kSteinerDim) throw UsageError("--fixture paper-13 forces n = 13");
      const std::string problem = fixtures::self_test();
      if (!problem.empty()) throw ConsistencyError("embedded fixture self-test failed: " + problem);
      g = MatrixGroup::from_generators(fixtures::steiner_generators());
    } else if (singer) {
      return singer_normalizer(singer, expand);
    } else if (!generators.empty()) {
      g = load_group(generators);
    } else {
      if (n <= 0) throw UsageError("--trivial-group needs --n");
      g = MatrixGroup::trivial(n);
    }
    return expand ? group_closure(g) : g;
  }

  bool is_paper() const { return !fixture.empty(); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path out_path(const Globals& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / name;
}

std::vector<std::uint32_t> parse_label_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad label '" + tok + "' in list");
    }
  }
  return out;
}

std::shared_ptr<const OrbitTable> build_orbits(int n, int k, const MatrixGroup& group, OrbitStrategy strategy,
                                               std::uint64_t guard) {
  return std::make_shared<const OrbitTable>(orbit_partition(n, k, group, strategy, guard));
}

// Subspace representatives from a file or the embedded fixture, optionally with one bit flipped.
std::vector<Subspace> load_reps(const std::string& reps_file, bool paper, const std::string& flip) {
  std::vector<Subspace> reps;
  if (!reps_file.empty()) {
    reps = load_subspaces(reps_file);
  } else if (paper) {
    reps = fixtures::steiner_representatives();
  } else {
    throw UsageError("no representatives: give --reps or --fixture paper-13");
  }
  if (!flip.empty()) {
    const auto f = parse_label_list(flip);
    if (f.size() != 3 || f[0] >= reps.size() || f[1] >= static_cast<std::uint32_t>(reps[f[0]].dim()) ||
        f[2] >= static_cast<std::uint32_t>(reps[f[0]].ambient())) {
      throw UsageError("--flip-bit expects REP,ROW,COL within range");
    }
    std::vector<Word> rows(reps[f[0]].rows().begin(), reps[f[0]].rows().end());
    rows[f[1]] ^= Word{1} << f[2];
    reps[f[0]] = canonicalize(reps[f[0]].ambient(), rows);
  }
  return reps;
}

// ---------------------------------------------------------------------------------
// group

int cmd_group(const Globals& g, const GroupSource& src) {
  const auto t0 = std::chrono::steady_clock::now();
  const MatrixGroup group = src.load();
  const fs::path path = out_path(g, "group.txt");
  save_group(path, group);
  std::cout << "n " << group.dim() << "\norder " << group.order() << "\ngenerators " << group.generators().size()
            << "\nhash " << group.hash_hex() << "\nfile " << path.string() << "\n";
  std::cerr << "# closure " << std::fixed << std::setprecision(2) << seconds_since(t0) << " s\n";
  return kPass;
}

// ---------------------------------------------------------------------------------
// orbits

struct OrbitsArgs {
  int k = 0;
  std::string strategy = "full-enumeration";
  std::uint64_t guard = kDefaultEnumerationGuard;
};

int cmd_orbits(const Globals& g, const GroupSource& src, const OrbitsArgs& a) {
  const MatrixGroup group = src.load();
  if (a.k < 0 || a.k > group.dim()) throw UsageError("--dim must lie in [0, n]");
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = build_orbits(group.dim(), a.k, group, parse_orbit_strategy(a.strategy), a.guard);
  const fs::path path = out_path(g, "orbits_n" + std::to_string(group.dim()) + "_k" + std::to_string(a.k) + ".txt");
  save_orbit_table(path, *table);
  std::cout << "orbits " << table->size() << "\ntotal-length " << table->total_length() << "\ngaussian-binomial "
            << gaussian_binomial(group.dim(), a.k, 2) << "\ncomplete " << (table->complete() ? "yes" : "no")
            << "\nfile " << path.string() << "\n";
  std::cerr << "# orbits " << std::fixed << std::setprecision(2) << seconds_since(t0) << " s\n";
  return table->complete() ? kPass : kVerifyFailed;
}

// ---------------------------------------------------------------------------------
// km

struct KmArgs {
  int t = 2;
  int k = 3;
  std::uint32_t lambda = 1;
  std::string strategy = "extension";
  std::uint64_t guard = kDefaultEnumerationGuard;
};

int cmd_km(const Globals& g, const GroupSource& src, const KmArgs& a) {
  const MatrixGroup group = src.load();
  const int n = group.dim();
  if (!(0 < a.t && a.t < a.k && a.k <= n)) throw UsageError("need 0 < t < k <= n");
  if (a.lambda == 0) throw UsageError("--lambda must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  const auto t_table = build_orbits(n, a.t, group, OrbitStrategy::kFullEnumeration, a.guard);
  const auto strategy = parse_orbit_strategy(a.strategy);
  std::shared_ptr<const OrbitTable> k_table;
  if (strategy == OrbitStrategy::kExtension && a.k - 1 == a.t) {
    k_table = std::make_shared<const OrbitTable>(orbit_partition(n, a.k, group, strategy, a.guard, t_table));
  } else {
    k_table = build_orbits(n, a.k, group, strategy, a.guard);
  }
  const KMInstance km = build_km(*t_table, *k_table, group);
  const KMInstance pruned = prune(km, a.lambda);

  const std::string stem = "n" + std::to_string(n) + "_t" + std::to_string(a.t) + "_k" + std::to_string(a.k);
  save_orbit_table(out_path(g, "orbits_n" + std::to_string(n) + "_k" + std::to_string(a.t) + ".txt"), *t_table);
  save_orbit_table(out_path(g, "orbits_n" + std::to_string(n) + "_k" + std::to_string(a.k) + ".txt"), *k_table);
  export_km(km, out_path(g, "km_" + stem + ".txt"));
  export_km(pruned, out_path(g, "km_" + stem + "_lambda" + std::to_string(a.lambda) + ".txt"));

  const auto sums = km.row_sums();
  const BigInt expected_sum = gaussian_binomial(n - a.t, a.k - a.t, 2);
  bool sums_ok = true;
  for (std::uint64_t s : sums) sums_ok = sums_ok && BigInt(s) == expected_sum;
  std::cout << "rows " << km.rows.size() << "\ncolumns " << km.cols.size() << "\nmax-entry " << km.max_entry()
            << "\nrow-sum " << (sums.empty() ? 0 : sums.front()) << " expected " << expected_sum << ' '
            << (sums_ok ? "ok" : "MISMATCH") << "\npruned-columns " << pruned.cols.size() << " (lambda "
            << a.lambda << ", removed " << pruned.pruned.size() << ")\n";
  std::cerr << "# km " << std::fixed << std::setprecision(2) << seconds_since(t0) << " s\n";
  return sums_ok ? kPass : kVerifyFailed;
}

// ---------------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string km_file;
  std::uint32_t lambda = 0;
  std::uint64_t max_solutions = 0;
  std::uint64_t node_limit = 0;
  double time_limit = 0;
  std::string order = "file";
  std::string force;
  int portfolio = 0;
};

int cmd_solve(const Globals& g, const SolveArgs& a) {
  KMInstance km = import_km(a.km_file);
  const std::uint32_t lambda = a.lambda ? a.lambda : (km.lambda ? km.lambda : 1);
  if (km.max_entry() > lambda) km = prune(km, lambda);
  const CoverProblem problem = from_km(km, lambda);

  SolveConfig config;
  config.max_solutions = a.max_solutions;
  config.node_limit = a.node_limit;
  config.time_limit = a.time_limit;
  config.seed = g.seed;
  config.order = parse_option_order(a.order);
  config.forced = parse_label_list(a.force);

  SolveResult result;
  if (a.portfolio > 1) {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < a.portfolio; ++i) seeds.push_back(g.seed + static_cast<std::uint64_t>(i));
    result = solve_portfolio(problem, config, seeds);
  } else {
    result = solve(problem, config);
  }
  const fs::path path = out_path(g, "solutions.txt");
  {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    write_solutions(os, problem, config, result);
  }
  std::cout << "items " << problem.item_count() << "\noptions " << problem.option_count() << "\nsolutions "
            << result.solutions.size() << "\nnodes " << result.stats.nodes << "\nlimit " << to_string(result.stats.limit)
            << "\nfile " << path.string() << "\n";
  std::cerr << "# solve " << std::fixed << std::setprecision(2) << result.stats.wall_seconds << " s\n";
  const bool resource = result.stats.limit == LimitHit::kNodeLimit || result.stats.limit == LimitHit::kTimeLimit;
  return resource ? kResource : kPass;
}

// ---------------------------------------------------------------------------------
// expand

struct ExpandArgs {
  std::string reps;
  std::string orbits;
  std::string solutions;
  std::size_t index = 0;
  std::string flip;
};

std::vector<Subspace> reps_from_solution(const ExpandArgs& a) {
  const OrbitTable table = load_orbit_table(a.orbits);
  std::ifstream is(a.solutions);
  if (!is) throw Error("cannot open " + a.solutions);
  const auto sols = read_solutions(is);
  if (a.index >= sols.size()) throw UsageError("solution index out of range");
  std::vector<Subspace> reps;
  for (std::uint32_t label : sols[a.index]) {
    if (label >= table.size()) throw Error("solution names orbit " + std::to_string(label) + " missing from the table");
    reps.push_back(table.rep(label));
  }
  return reps;
}

std::vector<Subspace> expand_inputs(const GroupSource& src, const ExpandArgs& a) {
  if (!a.solutions.empty()) {
    if (a.orbits.empty()) throw UsageError("--solutions needs --orbits");
    return reps_from_solution(a);
  }
  return load_reps(a.reps, src.is_paper(), a.flip);
}

int cmd_expand(const Globals& g, const GroupSource& src, const ExpandArgs& a) {
  const MatrixGroup group = src.load();
  const auto reps = expand_inputs(src, a);
  const auto t0 = std::chrono::steady_clock::now();
  const BlockSet blocks = expand_orbits(reps, group);
  const fs::path path = out_path(g, "blocks.txt");
  save_block_set(path, blocks);
  std::cout << "representatives " << reps.size() << "\nblocks " << blocks.size() << "\norbit-lengths";
  for (std::uint64_t l : blocks.orbit_lengths) std::cout << ' ' << l;
  std::cout << "\nfile " << path.string() << "\n";
  std::cerr << "# expand " << std::fixed << std::setprecision(2) << seconds_since(t0) << " s\n";
  return kPass;
}

// ---------------------------------------------------------------------------------
// verify

struct VerifyArgs {
  ExpandArgs input;
  std::string blocks;
  int t = 2;
  std::uint32_t lambda = 1;
  std::uint64_t budget = kDefaultVerifyBudget;
};

int cmd_verify(const Globals& g, const GroupSource& src, const VerifyArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  BlockSet blocks;
  if (!a.blocks.empty()) {
    blocks = load_block_set(a.blocks);
  } else {
    blocks = expand_orbits(expand_inputs(src, a.input), src.load());
  }
  const DesignReport report = verify_design(blocks, a.t, a.lambda, a.budget);
  const fs::path path = out_path(g, "design_report.txt");
  {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    write_design_report(os, report);
  }
  std::cout << "blocks " << report.blocks << " (expected " << report.expected_blocks << ")\n";
  for (const auto& [count, how_many] : report.histogram) std::cout << "covered " << count << "x: " << how_many << "\n";
  std::cout << "violations " << report.violation_count << "\nVERDICT " << (report.pass ? "pass" : "fail") << "\nfile "
            << path.string() << "\n";
  std::cerr << "# verify " << std::fixed << std::setprecision(2) << seconds_since(t0) << " s\n";
  return report.pass ? kPass : kVerifyFailed;
}

// ---------------------------------------------------------------------------------
// paper-check

struct PaperArgs {
  bool skip_3_orbits = false;
  std::uint64_t pair_samples = 1'000'000;
  std::uint64_t triple_samples = 100'000;
  std::string flip;
};

class StageTable {
 public:
  bool run(const std::string& name, const std::function<std::string(bool&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      detail = body(ok);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("error: ") + e.what();
    }
    rows_.push_back({name, ok ? "PASS" : "FAIL", detail, seconds_since(t0)});
    if (!ok && first_failure_.empty()) first_failure_ = name;
    return ok;
  }
  void skip(const std::string& name, const std::string& why) { rows_.push_back({name, "SKIP", why, 0.0}); }

  void print(std::ostream& os) const {
    os << std::left << std::setw(26) << "stage" << std::setw(6) << "state" << std::setw(10) << "seconds"
       << "detail\n";
    for (const Row& r : rows_) {
      os << std::left << std::setw(26) << r.name << std::setw(6) << r.state << std::setw(10) << std::fixed
         << std::setprecision(2) << r.seconds << r.detail << "\n";
    }
    os << (first_failure_.empty() ? "ALL STAGES PASSED" : "FIRST FAILING STAGE: " + first_failure_) << "\n";
  }
  bool all_ok() const { return first_failure_.empty(); }

 private:
  struct Row {
    std::string name;
    std::string state;
    std::string detail;
    double seconds;
  };
  std::vector<Row> rows_;
  std::string first_failure_;
};

int cmd_paper_check(const Globals& g, const PaperArgs& a) {
  StageTable table;
  MatrixGroup group;
  std::shared_ptr<const OrbitTable> t_table;
  std::vector<Subspace> reps;

  table.run("fixture self-test", [&](bool& ok) {
    const std::string problem = fixtures::self_test();
    reps = load_reps("", true, a.flip);
    ok = problem.empty();
    std::ostringstream os;
    os << "generators " << std::hex << fixtures::generators_checksum() << ", table " << fixtures::representatives_checksum();
    return ok ? os.str() : problem;
  });
  table.run("group order", [&](bool& ok) {
    group = group_closure(fixtures::steiner_generators());
    ok = group.order() == fixtures::kSteinerGroupOrder;
    return "|G| = " + std::to_string(group.order());
  });
  table.run("2-subspace orbits", [&](bool& ok) {
    t_table = std::make_shared<const OrbitTable>(orbit_partition(13, 2, group, OrbitStrategy::kFullEnumeration));
    ok = t_table->size() == 105 && t_table->complete();
    for (std::size_t i = 0; i < t_table->size(); ++i) ok = ok && t_table->length(i) == fixtures::kSteinerGroupOrder;
    return std::to_string(t_table->size()) + " orbits, all regular: " + (ok ? "yes" : "no");
  });

  if (a.skip_3_orbits) {
    table.skip("3-subspace orbits", "--skip-3-orbits");
    table.skip("KM matrix", "--skip-3-orbits");
    table.skip("Table 1 as exact cover", "--skip-3-orbits");
  } else {
    std::optional<OrbitTable> k_table;
    KMInstance pruned;
    table.run("3-subspace orbits", [&](bool& ok) {
      k_table.emplace(orbit_partition(13, 3, group, OrbitStrategy::kExtension, kDefaultEnumerationGuard, t_table));
      ok = k_table->complete();
      return std::to_string(k_table->size()) + " orbits, total length " + k_table->total_length().str();
    });
    table.run("KM matrix", [&](bool& ok) {
      const KMInstance km = build_km(*t_table, *k_table, group);
      bool sums = true;
      for (std::uint64_t s : km.row_sums()) sums = sums && s == 2047;
      pruned = prune(km, 1);
      ok = sums && pruned.rows.size() == 105 && pruned.cols.size() == 25572 && pruned.max_entry() == 1;
      return std::to_string(pruned.rows.size()) + " x " + std::to_string(pruned.cols.size()) +
             " after pruning, row sums 2047: " + (sums ? "yes" : "no");
    });
    table.run("Table 1 as exact cover", [&](bool& ok) {
      const CoverProblem problem = from_km(pruned, 1);
      SolveConfig config;
      for (const Subspace& r : reps) config.forced.push_back(k_table->lookup(r, group));
      const CoverCheck check = check_solution(problem, config.forced);
      config.max_solutions = 1;
      const SolveResult result = solve(problem, config);
      ok = check.ok && result.solutions.size() == 1;
      return std::string("check_solution ") + (check.ok ? "ok" : "failed") + ", forced solve found " +
             std::to_string(result.solutions.size());
    });
  }

  BlockSet blocks;
  std::optional<CoverageIndex> index;
  DesignReport report;
  table.run("expand Table 1", [&](bool& ok) {
    blocks = expand_orbits(reps, group);
    ok = blocks.size() == 1'597'245;
    return std::to_string(blocks.size()) + " distinct blocks";
  });
  table.run("verify 2-(13,3,1)", [&](bool& ok) {
    index.emplace(blocks, 2, kDefaultVerifyBudget);
    report = verify_design(blocks, *index, 1);
    ok = report.pass && report.histogram.size() == 1 && report.histogram.count(1) &&
         report.histogram.at(1) == 11'180'715;
    std::ostringstream os;
    for (const auto& [c, m] : report.histogram) os << c << ":" << m << ' ';
    return "histogram " + os.str();
  });
  table.run("packing bound", [&](bool& ok) {
    const BigInt b = packing_bound(13, 3, 2);
    ok = b == 1'597'245 && BigInt(blocks.size()) == b;
    return "A_2(13,4,3) = " + b.str();
  });
  table.run("minimum distance", [&](bool& ok) {
    const DistanceCertificate c = min_distance_certificate(blocks, report, a.pair_samples, g.seed);
    ok = c.ok && c.min_distance == 4;
    return "d = " + std::to_string(c.min_distance) + ", " + std::to_string(c.samples) +
           " sampled pairs, smallest " + std::to_string(c.min_sampled);
  });
  table.run("derived S(3,8,8192)", [&](bool& ok) {
    if (!report.pass) throw Error("needs a passing design report");
    const DerivedCheck c = derived_steiner_sample_check(blocks, *index, a.triple_samples, g.seed);
    ok = c.failures == 0;
    return std::to_string(c.samples) + " triples, " + std::to_string(c.failures) + " failures";
  });

  table.print(std::cout);
  return table.all_ok() ? kPass : kVerifyFailed;
}

// ---------------------------------------------------------------------------------
// spread-demo

struct SpreadArgs {
  int n = 4;
  int k = 2;
  std::uint64_t max_solutions = 0;
};

int cmd_spread_demo(const Globals& g, const SpreadArgs& a) {
  const SpreadInfo info = spread_size(a.n, a.k, 2);
  if (!info.exists) {
    std::cout << "no " << a.k << "-spread of GF(2)^" << a.n << " exists (" << a.k << " does not divide " << a.n
              << ")\n";
    return kVerifyFailed;
  }
  const MatrixGroup group = group_closure(MatrixGroup::trivial(a.n));
  const OrbitTable points = orbit_partition(a.n, 1, group, OrbitStrategy::kFullEnumeration);
  const OrbitTable lines = orbit_partition(a.n, a.k, group, OrbitStrategy::kFullEnumeration);
  const KMInstance km = build_km(points, lines, group);
  const CoverProblem problem = from_km(km, 1);
  SolveConfig config;
  config.max_solutions = a.max_solutions;
  config.seed = g.seed;
  const SolveResult result = solve(problem, config);
  std::cout << "spread size " << *info.size << "\nsolutions " << result.solutions.size()
            << (result.stats.exhausted ? " (exhaustive)" : " (limited)") << "\n";
  if (result.solutions.empty()) return kVerifyFailed;
  std::vector<Subspace> spread;
  for (std::uint32_t label : result.solutions.front().options) spread.push_back(lines.rep(label));
  const BlockSet blocks = block_set_from(a.n, a.k, spread);
  const DesignReport report = verify_design(blocks, 1, 1);
  const fs::path path = out_path(g, "spread.txt");
  save_subspaces(path, spread);
  std::cout << "first spread verified: " << (report.pass ? "pass" : "fail") << "\nfile " << path.string() << "\n";
  return report.pass ? kPass : kVerifyFailed;
}

// ---------------------------------------------------------------------------------
// bounds

int cmd_bounds(int n, int k, int t) {
  if (!(0 <= t && t < k && k <= n)) throw UsageError("need 0 <= t < k <= n");
  std::cout << "[" << n << " " << k << "]_2 = " << gaussian_binomial(n, k, 2) << "\n";
  std::cout << "[" << n << " " << t << "]_2 = " << gaussian_binomial(n, t, 2) << "\n";
  std::cout << "[" << k << " " << t << "]_2 = " << gaussian_binomial(k, t, 2) << "\n";
  try {
    std::cout << "packing bound A_2(" << n << "," << 2 * (k - t + 1) << "," << k << ") = " << packing_bound(n, k, t)
              << "\n";
  } catch (const DimensionError&) {
    throw;
  } catch (const Error&) {
    std::cout << "packing bound: quotient not integral, no Steiner system with these parameters\n";
  }
  const SpreadInfo s = spread_size(n, k, 2);
  if (s.exists) std::cout << "spread size " << *s.size << "\n";
  else std::cout << "no " << k << "-spread of GF(2)^" << n << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsteiner: q-Steiner systems over GF(2) via orbits, Kramer-Mesner matrices and dancing links"};
  app.set_config("--config", "", "TOML/INI file with option values (flags override)");
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--threads", globals.threads, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", globals.seed, "Random seed");
  app.add_option("--out-dir", globals.out_dir, "Directory for output files");

  GroupSource src;
  auto* group_cmd = app.add_subcommand("group", "Close a generator set and write the group file");
  src.add_to(group_cmd);

  OrbitsArgs orbits_args;
  GroupSource orbits_src;
  auto* orbits_cmd = app.add_subcommand("orbits", "Orbit table of the k-subspaces");
  orbits_src.add_to(orbits_cmd);
  orbits_cmd->add_option("--dim", orbits_args.k, "Subspace dimension k")->required();
  orbits_cmd->add_option("--strategy", orbits_args.strategy, "full-enumeration or extension");
  orbits_cmd->add_option("--guard", orbits_args.guard, "Largest universe to enumerate");

  KmArgs km_args;
  GroupSource km_src;
  auto* km_cmd = app.add_subcommand("km", "Build the Kramer-Mesner matrix and its pruned variant");
  km_src.add_to(km_cmd);
  km_cmd->add_option("--t", km_args.t, "Row dimension t");
  km_cmd->add_option("--k", km_args.k, "Column dimension k");
  km_cmd->add_option("--lambda", km_args.lambda, "Pruning threshold");
  km_cmd->add_option("--strategy", km_args.strategy, "Strategy for the k-orbits");
  km_cmd->add_option("--guard", km_args.guard, "Largest universe to enumerate");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve A x = lambda 1 by dancing links");
  solve_cmd->add_option("--km", solve_args.km_file, "KM file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--lambda", solve_args.lambda, "Required multiplicity (default: from file, else 1)");
  solve_cmd->add_option("--max-solutions", solve_args.max_solutions, "Stop after this many (0 = all)");
  solve_cmd->add_option("--node-limit", solve_args.node_limit, "Search node budget (0 = none)");
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "Seconds (0 = none)");
  solve_cmd->add_option("--order", solve_args.order, "Option order")->check(CLI::IsMember({"file", "randomized"}));
  solve_cmd->add_option("--force", solve_args.force, "Comma separated column labels to preselect");
  solve_cmd->add_option("--portfolio", solve_args.portfolio, "Independent runs with seeds seed, seed+1, ...");

  ExpandArgs expand_args;
  GroupSource expand_src;
  auto* expand_cmd = app.add_subcommand("expand", "Expand orbit representatives into a block set");
  expand_src.add_to(expand_cmd);
  expand_cmd->add_option("--reps", expand_args.reps, "Subspace file of representatives");
  expand_cmd->add_option("--orbits", expand_args.orbits, "Orbit table for --solutions");
  expand_cmd->add_option("--solutions", expand_args.solutions, "Solution file");
  expand_cmd->add_option("--index", expand_args.index, "Which solution of the file");
  expand_cmd->add_option("--flip-bit", expand_args.flip, "REP,ROW,COL: flip one bit (negative control)");

  VerifyArgs verify_args;
  GroupSource verify_src;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a block set as a t-design");
  verify_src.add_to(verify_cmd);
  verify_cmd->add_option("--blocks", verify_args.blocks, "Block set file");
  verify_cmd->add_option("--reps", verify_args.input.reps, "Subspace file of representatives");
  verify_cmd->add_option("--orbits", verify_args.input.orbits, "Orbit table for --solutions");
  verify_cmd->add_option("--solutions", verify_args.input.solutions, "Solution file");
  verify_cmd->add_option("--index", verify_args.input.index, "Which solution of the file");
  verify_cmd->add_option("--flip-bit", verify_args.input.flip, "REP,ROW,COL: flip one bit (negative control)");
  verify_cmd->add_option("--t", verify_args.t, "t");
  verify_cmd->add_option("--lambda", verify_args.lambda, "lambda");
  verify_cmd->add_option("--budget", verify_args.budget, "Largest number of t-subspaces to count");

  PaperArgs paper_args;
  auto* paper_cmd = app.add_subcommand("paper-check", "Run the whole chain on the embedded 2-(13,3,1) fixtures");
  paper_cmd->add_flag("--skip-3-orbits", paper_args.skip_3_orbits, "Skip 3-orbits, KM and exact cover stages");
  paper_cmd->add_option("--pair-samples", paper_args.pair_samples, "Random block pairs for the distance check");
  paper_cmd->add_option("--triple-samples", paper_args.triple_samples, "Random point triples for the derived check");
  paper_cmd->add_option("--flip-bit", paper_args.flip, "REP,ROW,COL: corrupt Table 1 (negative control)");

  SpreadArgs spread_args;
  auto* spread_cmd = app.add_subcommand("spread-demo", "Enumerate k-spreads of GF(2)^n by exact cover");
  spread_cmd->add_option("--n", spread_args.n, "n")->check(CLI::Range(1, 8));
  spread_cmd->add_option("--k", spread_args.k, "k")->check(CLI::Range(1, 8));
  spread_cmd->add_option("--max-solutions", spread_args.max_solutions, "Stop after this many (0 = all)");

  int bn = 13;
  int bk = 3;
  int bt = 2;
  auto* bounds_cmd = app.add_subcommand("bounds", "Gaussian binomials, packing bound and spread size");
  bounds_cmd->add_option("--n", bn, "n");
  bounds_cmd->add_option("--k", bk, "k");
  bounds_cmd->add_option("--t", bt, "t");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    set_thread_count(globals.threads);
    if (*group_cmd) return cmd_group(globals, src);
    if (*orbits_cmd) return cmd_orbits(globals, orbits_src, orbits_args);
    if (*km_cmd) return cmd_km(globals, km_src, km_args);
    if (*solve_cmd) return cmd_solve(globals, solve_args);
    if (*expand_cmd) return cmd_expand(globals, expand_src, expand_args);
    if (*verify_cmd) return cmd_verify(globals, verify_src, verify_args);
    if (*paper_cmd) return cmd_paper_check(globals, paper_args);
    if (*spread_cmd) return cmd_spread_demo(globals, spread_args);
    if (*bounds_cmd) return cmd_bounds(bn, bk, bt);
  } catch (const LimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kUsage;
}
