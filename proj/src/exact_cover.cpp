#include "qsteiner/exact_cover.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qsteiner/kernels.hpp"
#include "qsteiner/random.hpp"

namespace qsteiner {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
}

class DancingLinks {
 public:
  DancingLinks(const CoverProblem& problem, const SolveConfig& config)
      : problem_(problem), config_(config), items_(static_cast<int>(problem.item_count())) {
    const int root = items_;
    prev_.resize(static_cast<std::size_t>(items_) + 1);
    next_.resize(static_cast<std::size_t>(items_) + 1);
    for (int i = 0; i <= items_; ++i) {
      prev_[i] = i == 0 ? root : i - 1;
      next_[i] = i == root ? 0 : i + 1;
    }
    if (items_ == 0) prev_[root] = next_[root] = root;
    else prev_[root] = items_ - 1;

    len_.assign(static_cast<std::size_t>(items_), 0);
    need_.assign(problem.multiplicity.begin(), problem.multiplicity.end());
    // Header nodes occupy [0, items); option nodes follow.
    up_.resize(static_cast<std::size_t>(items_));
    down_.resize(static_cast<std::size_t>(items_));
    top_.resize(static_cast<std::size_t>(items_));
    owner_.resize(static_cast<std::size_t>(items_), -1);
    for (int i = 0; i < items_; ++i) top_[i] = i;
    std::vector<std::vector<int>> column(static_cast<std::size_t>(items_));
    begin_.reserve(problem.option_count() + 1);
    for (std::size_t o = 0; o < problem.option_count(); ++o) {
      begin_.push_back(static_cast<int>(top_.size()));
      for (std::uint32_t it : problem.option_items[o]) {
        const int node = static_cast<int>(top_.size());
        top_.push_back(static_cast<int>(it));
        owner_.push_back(static_cast<int>(o));
        up_.push_back(0);
        down_.push_back(0);
        column[it].push_back(node);
      }
    }
    begin_.push_back(static_cast<int>(top_.size()));

    std::mt19937_64 rng(config.seed);
    for (int i = 0; i < items_; ++i) {
      auto& col = column[i];
      if (config.order == OptionOrder::kRandomized) {
        for (std::size_t j = col.size(); j > 1; --j) std::swap(col[j - 1], col[uniform_below(rng, j)]);
      }
      int last = i;
      for (int node : col) {
        down_[last] = node;
        up_[node] = last;
        last = node;
      }
      down_[last] = i;
      up_[i] = last;
      len_[i] = static_cast<int>(col.size());
    }
    for (std::size_t o = 0; o < problem.option_count(); ++o) label_to_option_.emplace(problem.option_labels[o], o);
  }

  SolveResult run() {
    const auto start = std::chrono::steady_clock::now();
    start_ = start;
    const std::uint64_t before = structure_hash();
    SolveResult result;
    result.stats.seed = config_.seed;

    std::vector<int> forced;
    bool feasible = true;
    std::unordered_set<std::uint32_t> seen;
    for (std::uint32_t label : config_.forced) {
      const auto it = label_to_option_.find(label);
      if (it == label_to_option_.end()) throw Error("solve: forced option label " + std::to_string(label) + " is unknown");
      if (!seen.insert(label).second || !selectable(static_cast<int>(it->second))) {
        feasible = false;
        break;
      }
      select(static_cast<int>(it->second));
      forced.push_back(static_cast<int>(it->second));
    }
    if (feasible) search(0);
    for (auto it = forced.rbegin(); it != forced.rend(); ++it) deselect(*it);

    result.solutions = std::move(solutions_);
    result.stats.nodes = nodes_;
    result.stats.max_depth = max_depth_;
    result.stats.limit = limit_;
    result.stats.exhausted = limit_ == LimitHit::kNone;
    result.stats.restored = structure_hash() == before;
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

 private:
  void remove_option(int o) {
    for (int q = begin_[o]; q < begin_[o + 1]; ++q) {
      up_[down_[q]] = up_[q];
      down_[up_[q]] = down_[q];
      --len_[top_[q]];
    }
  }

  void restore_option(int o) {
    for (int q = begin_[o + 1] - 1; q >= begin_[o]; --q) {
      up_[down_[q]] = q;
      down_[up_[q]] = q;
      ++len_[top_[q]];
    }
  }

  void hide(int p) {
    const int o = owner_[p];
    for (int q = begin_[o]; q < begin_[o + 1]; ++q) {
      if (q == p) continue;
      up_[down_[q]] = up_[q];
      down_[up_[q]] = down_[q];
      --len_[top_[q]];
    }
  }

  void unhide(int p) {
    const int o = owner_[p];
    for (int q = begin_[o + 1] - 1; q >= begin_[o]; --q) {
      if (q == p) continue;
      up_[down_[q]] = q;
      down_[up_[q]] = q;
      ++len_[top_[q]];
    }
  }

  void cover(int i) {
    next_[prev_[i]] = next_[i];
    prev_[next_[i]] = prev_[i];
    for (int p = down_[i]; p != i; p = down_[p]) hide(p);
  }

  void uncover(int i) {
    for (int p = up_[i]; p != i; p = up_[p]) unhide(p);
    next_[prev_[i]] = i;
    prev_[next_[i]] = i;
  }

  bool selectable(int o) const {
    for (int q = begin_[o]; q < begin_[o + 1]; ++q) {
      if (need_[top_[q]] == 0) return false;
    }
    return true;
  }

  void select(int o) {
    remove_option(o);
    for (int q = begin_[o]; q < begin_[o + 1]; ++q) {
      if (--need_[top_[q]] == 0) cover(top_[q]);
    }
    chosen_.push_back(o);
  }

  void deselect(int o) {
    chosen_.pop_back();
    for (int q = begin_[o + 1] - 1; q >= begin_[o]; --q) {
      if (need_[top_[q]]++ == 0) uncover(top_[q]);
    }
    restore_option(o);
  }

  bool out_of_budget() {
    if (config_.node_limit && nodes_ >= config_.node_limit) {
      limit_ = LimitHit::kNodeLimit;
      return true;
    }
    if (config_.time_limit > 0 && (nodes_ & 1023U) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > config_.time_limit) {
      limit_ = LimitHit::kTimeLimit;
      return true;
    }
    return false;
  }

  void search(std::uint64_t depth) {
    max_depth_ = std::max(max_depth_, depth);
    const int root = items_;
    if (next_[root] == root) {
      record();
      return;
    }
    int best = -1;
    for (int i = next_[root]; i != root; i = next_[i]) {
      if (len_[i] < need_[i]) return;
      if (best < 0 || len_[i] < len_[best]) best = i;
    }
    std::vector<int> excluded;
    for (int p = down_[best]; p != best && limit_ == LimitHit::kNone;) {
      const int o = owner_[p];
      if (out_of_budget()) break;
      ++nodes_;
      select(o);
      search(depth + 1);
      deselect(o);
      const int after = down_[p];
      remove_option(o);
      excluded.push_back(o);
      p = after;
    }
    for (auto it = excluded.rbegin(); it != excluded.rend(); ++it) restore_option(*it);
  }

  void record() {
    CoverSolution s;
    for (int o : chosen_) s.options.push_back(problem_.option_labels[o]);
    std::sort(s.options.begin(), s.options.end());
    s.found_at_node = nodes_;
    solutions_.push_back(std::move(s));
    if (config_.max_solutions && solutions_.size() >= config_.max_solutions) limit_ = LimitHit::kMaxSolutions;
  }

  std::uint64_t structure_hash() const {
    std::uint64_t h = kFnvOffset;
    for (const auto* v : {&prev_, &next_, &up_, &down_, &len_, &need_}) {
      for (int x : *v) fnv(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)));
    }
    return h;
  }

  const CoverProblem& problem_;
  const SolveConfig& config_;
  int items_;
  std::vector<int> prev_, next_;  // active item list, root = items_
  std::vector<int> len_, need_;
  std::vector<int> up_, down_, top_, owner_;
  std::vector<int> begin_;
  std::unordered_map<std::uint32_t, std::size_t> label_to_option_;

  std::vector<int> chosen_;
  std::vector<CoverSolution> solutions_;
  std::uint64_t nodes_ = 0;
  std::uint64_t max_depth_ = 0;
  LimitHit limit_ = LimitHit::kNone;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

void CoverProblem::validate() const {
  if (multiplicity.size() != item_labels.size()) throw DimensionError("CoverProblem: multiplicity size mismatch");
  if (option_items.size() != option_labels.size()) throw DimensionError("CoverProblem: option size mismatch");
  if (std::set<std::uint32_t>(item_labels.begin(), item_labels.end()).size() != item_labels.size()) {
    throw DimensionError("CoverProblem: duplicate item label");
  }
  if (std::set<std::uint32_t>(option_labels.begin(), option_labels.end()).size() != option_labels.size()) {
    throw DimensionError("CoverProblem: duplicate option label");
  }
  for (std::uint32_t m : multiplicity) {
    if (m == 0) throw DimensionError("CoverProblem: item multiplicity must be at least 1");
  }
  for (std::size_t o = 0; o < option_items.size(); ++o) {
    const auto& items = option_items[o];
    if (items.empty()) throw DimensionError("CoverProblem: option " + std::to_string(option_labels[o]) + " is empty");
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (items[j] >= item_labels.size()) {
        throw DimensionError("CoverProblem: option " + std::to_string(option_labels[o]) + " names a missing item");
      }
      if (j && items[j] <= items[j - 1]) {
        throw DimensionError("CoverProblem: option " + std::to_string(option_labels[o]) +
                             " repeats an item or is unsorted");
      }
    }
  }
}

std::uint64_t CoverProblem::checksum() const {
  std::uint64_t h = kFnvOffset;
  fnv(h, item_labels.size());
  for (std::size_t i = 0; i < item_labels.size(); ++i) fnv(h, item_labels[i]), fnv(h, multiplicity[i]);
  fnv(h, option_labels.size());
  for (std::size_t o = 0; o < option_labels.size(); ++o) {
    fnv(h, option_labels[o]);
    fnv(h, option_items[o].size());
    for (std::uint32_t it : option_items[o]) fnv(h, it);
  }
  return h;
}

CoverProblem from_km(const KMInstance& instance, std::uint32_t lambda) {
  if (lambda == 0) lambda = instance.lambda ? instance.lambda : 1;
  CoverProblem p;
  std::unordered_map<std::uint32_t, std::uint32_t> row_pos;
  for (const OrbitLabel& r : instance.rows) {
    row_pos.emplace(r.id, static_cast<std::uint32_t>(p.item_labels.size()));
    p.item_labels.push_back(r.id);
    p.multiplicity.push_back(lambda);
  }
  std::unordered_map<std::uint32_t, std::size_t> col_pos;
  for (const OrbitLabel& c : instance.cols) {
    col_pos.emplace(c.id, p.option_labels.size());
    p.option_labels.push_back(c.id);
  }
  p.option_items.resize(p.option_labels.size());
  for (const KMEntry& e : instance.entries) {
    if (e.value > 1) {
      throw Error("from_km: column " + std::to_string(e.col) + " has entry " + std::to_string(e.value) +
                  " > 1 (prune the instance first)");
    }
    const auto c = col_pos.find(e.col);
    const auto r = row_pos.find(e.row);
    if (c == col_pos.end() || r == row_pos.end()) throw ConsistencyError("from_km: entry references an unknown label");
    p.option_items[c->second].push_back(r->second);
  }
  for (auto& items : p.option_items) std::sort(items.begin(), items.end());
  p.validate();
  return p;
}

std::string to_string(OptionOrder o) { return o == OptionOrder::kFile ? "file" : "randomized"; }

OptionOrder parse_option_order(const std::string& s) {
  if (s == "file") return OptionOrder::kFile;
  if (s == "randomized") return OptionOrder::kRandomized;
  throw Error("unknown option order '" + s + "' (expected file or randomized)");
}

std::string to_string(LimitHit l) {
  switch (l) {
    case LimitHit::kNone: return "none";
    case LimitHit::kMaxSolutions: return "max-solutions";
    case LimitHit::kNodeLimit: return "node-limit";
    case LimitHit::kTimeLimit: return "time-limit";
  }
  return "unknown";
}

SolveResult solve(const CoverProblem& problem, const SolveConfig& config) {
  problem.validate();
  DancingLinks dlx(problem, config);
  SolveResult r = dlx.run();
  for (const CoverSolution& s : r.solutions) {
    if (!check_solution(problem, s.options).ok) throw ConsistencyError("solve: emitted an invalid solution");
  }
  return r;
}

SolveResult solve_portfolio(const CoverProblem& problem, const SolveConfig& config,
                            const std::vector<std::uint64_t>& seeds) {
  std::vector<SolveResult> runs(seeds.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(seeds.size()); ++i) {
    try {
      SolveConfig c = config;
      c.seed = seeds[static_cast<std::size_t>(i)];
      runs[static_cast<std::size_t>(i)] = solve(problem, c);
    } catch (...) {
#pragma omp critical(qsteiner_portfolio)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  SolveResult merged;
  merged.stats.exhausted = false;
  merged.stats.restored = true;
  std::set<std::vector<std::uint32_t>> seen;
  for (const SolveResult& r : runs) {
    merged.stats.nodes += r.stats.nodes;
    merged.stats.max_depth = std::max(merged.stats.max_depth, r.stats.max_depth);
    merged.stats.wall_seconds = std::max(merged.stats.wall_seconds, r.stats.wall_seconds);
    merged.stats.exhausted = merged.stats.exhausted || r.stats.exhausted;
    merged.stats.restored = merged.stats.restored && r.stats.restored;
    if (r.stats.limit != LimitHit::kNone) merged.stats.limit = r.stats.limit;
    for (const CoverSolution& s : r.solutions) {
      if (seen.insert(s.options).second) merged.solutions.push_back(s);
    }
  }
  std::sort(merged.solutions.begin(), merged.solutions.end(),
            [](const CoverSolution& a, const CoverSolution& b) { return a.options < b.options; });
  if (!seeds.empty()) merged.stats.seed = seeds.front();
  return merged;
}

CoverCheck check_solution(const CoverProblem& problem, const std::vector<std::uint32_t>& selection) {
  std::unordered_map<std::uint32_t, std::size_t> pos;
  for (std::size_t o = 0; o < problem.option_count(); ++o) pos.emplace(problem.option_labels[o], o);
  std::vector<std::uint32_t> covered(problem.item_count(), 0);
  for (std::uint32_t label : selection) {
    const auto it = pos.find(label);
    if (it == pos.end()) throw Error("check_solution: unknown option label " + std::to_string(label));
    for (std::uint32_t item : problem.option_items[it->second]) ++covered[item];
  }
  CoverCheck c;
  c.ok = true;
  for (std::size_t i = 0; i < covered.size(); ++i) {
    ++c.histogram[covered[i]];
    if (covered[i] != problem.multiplicity[i]) c.ok = false;
  }
  return c;
}

void write_solutions(std::ostream& os, const CoverProblem& problem, const SolveConfig& config,
                     const SolveResult& result) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(problem.checksum()));
  os << "# qsteiner-solutions\n";
  os << "# problem-checksum " << hex << " items " << problem.item_count() << " options " << problem.option_count()
     << '\n';
  os << "# seed " << config.seed << " order " << to_string(config.order) << " max-solutions " << config.max_solutions
     << " node-limit " << config.node_limit << " time-limit " << config.time_limit << '\n';
  os << "# forced";
  if (config.forced.empty()) os << " -";
  for (std::uint32_t f : config.forced) os << ' ' << f;
  os << '\n';
  for (const CoverSolution& s : result.solutions) {
    for (std::size_t i = 0; i < s.options.size(); ++i) os << (i ? " " : "") << s.options[i];
    os << '\n';
  }
  os << "# stats solutions " << result.solutions.size() << " nodes " << result.stats.nodes << " max-depth "
     << result.stats.max_depth << " limit " << to_string(result.stats.limit) << " exhausted "
     << (result.stats.exhausted ? 1 : 0) << '\n';
}

std::vector<std::vector<std::uint32_t>> read_solutions(std::istream& is) {
  std::vector<std::vector<std::uint32_t>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<std::uint32_t> sol;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        sol.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad option label '" + tok + "'");
      }
    }
    out.push_back(std::move(sol));
  }
  return out;
}

}  // namespace qsteiner
