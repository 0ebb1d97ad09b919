#include "qsteiner/kramer_mesner.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qsteiner/kernels.hpp"

namespace qsteiner {

namespace {

void check_tables(const OrbitTable& t_table, const OrbitTable& k_table, const MatrixGroup& group) {
  if (t_table.ambient() != k_table.ambient() || t_table.ambient() != group.dim()) {
    throw DimensionError("build_km: tables and group act on different spaces");
  }
  if (t_table.dim() >= k_table.dim()) throw DimensionError("build_km: need t < k");
  if (t_table.group_hash() != k_table.group_hash() || t_table.group_hash() != group.generator_hash()) {
    throw Error("build_km: orbit tables were built for different groups");
  }
  if (!t_table.complete() || !k_table.complete()) throw ConsistencyError("build_km: orbit tables are incomplete");
}

KMInstance empty_instance(const OrbitTable& t_table, const OrbitTable& k_table) {
  KMInstance km;
  km.n = t_table.ambient();
  km.t = t_table.dim();
  km.k = k_table.dim();
  for (std::size_t i = 0; i < t_table.size(); ++i) km.rows.push_back({static_cast<std::uint32_t>(i), t_table.length(i)});
  for (std::size_t i = 0; i < k_table.size(); ++i) km.cols.push_back({static_cast<std::uint32_t>(i), k_table.length(i)});
  return km;
}

std::uint32_t entry_from_count(std::uint64_t b, std::uint64_t len_k, std::uint64_t len_t) {
  const unsigned __int128 num = static_cast<unsigned __int128>(b) * len_k;
  if (num % len_t != 0) {
    throw ConsistencyError("build_km: a(T,K) = b(K,T)|orbit K|/|orbit T| is not integral");
  }
  return static_cast<std::uint32_t>(num / len_t);
}

}  // namespace

std::uint32_t KMInstance::max_entry() const {
  std::uint32_t m = 0;
  for (const KMEntry& e : entries) m = std::max(m, e.value);
  return m;
}

std::vector<std::uint64_t> KMInstance::row_sums() const {
  std::vector<std::uint64_t> sums(rows.size(), 0);
  for (const KMEntry& e : entries) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const OrbitLabel& l) { return l.id == e.row; });
    if (it == rows.end()) throw ConsistencyError("KMInstance: entry references an unknown row");
    sums[static_cast<std::size_t>(it - rows.begin())] += e.value;
  }
  return sums;
}

std::uint32_t KMInstance::checksum() const {
  std::uint32_t s = 0;
  auto add = [&](std::uint64_t v) { s += static_cast<std::uint32_t>(v); };
  add(static_cast<std::uint64_t>(n));
  add(static_cast<std::uint64_t>(t));
  add(static_cast<std::uint64_t>(k));
  add(lambda);
  add(rows.size());
  add(cols.size());
  for (const OrbitLabel& l : rows) add(l.id), add(l.orbit_length);
  for (const OrbitLabel& l : cols) add(l.id), add(l.orbit_length);
  for (const KMEntry& e : entries) add(e.row), add(e.col), add(e.value);
  for (const PrunedColumn& p : pruned) add(p.col), add(p.row), add(p.value);
  return s;
}

KMInstance build_km(const OrbitTable& t_table, const OrbitTable& k_table, const MatrixGroup& group) {
  check_tables(t_table, k_table, group);
  KMInstance km = empty_instance(t_table, k_table);
  const int t = t_table.dim();
  const int k = k_table.dim();
  const SubspacesOfEnumerator sub(k, t);
  const auto ncols = static_cast<std::int64_t>(k_table.size());
  std::vector<std::vector<KMEntry>> per_col(k_table.size());

  auto build_column = [&](std::size_t c) {
    const Subspace& rep = k_table.rep(c);
    std::vector<std::uint32_t> hits;
    hits.reserve(sub.count());
    sub.for_each(rep.rows(), [&](std::span<const Word> rows) {
      if (t_table.has_dense_index()) {
        hits.push_back(t_table.orbit_of_rank(t_table.indexer().rank(rows)));
      } else {
        hits.push_back(t_table.lookup(Subspace::from_rref(rep.ambient(), {rows.begin(), rows.end()}), group));
      }
    });
    std::sort(hits.begin(), hits.end());
    for (auto it = hits.begin(); it != hits.end();) {
      const auto next = std::upper_bound(it, hits.end(), *it);
      const auto b = static_cast<std::uint64_t>(next - it);
      per_col[c].push_back(
          {*it, static_cast<std::uint32_t>(c), entry_from_count(b, k_table.length(c), t_table.length(*it))});
      it = next;
    }
  };

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_count())
  for (std::int64_t c = 0; c < ncols; ++c) {
    try {
      build_column(static_cast<std::size_t>(c));
    } catch (...) {
#pragma omp critical(qsteiner_build_km)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& col : per_col) km.entries.insert(km.entries.end(), col.begin(), col.end());
  return km;
}

KMInstance build_km_brute_force(const OrbitTable& t_table, const OrbitTable& k_table,
                                const MatrixGroup& group) {
  check_tables(t_table, k_table, group);
  KMInstance km = empty_instance(t_table, k_table);
  for (std::size_t c = 0; c < k_table.size(); ++c) {
    std::set<Subspace> members;
    for (std::size_t e = 0; e < group.size(); ++e) members.insert(act(group, e, k_table.rep(c)));
    if (members.size() != k_table.length(c)) throw ConsistencyError("build_km_brute_force: orbit length mismatch");
    for (std::size_t r = 0; r < t_table.size(); ++r) {
      std::uint32_t a = 0;
      for (const Subspace& m : members) a += contains(t_table.rep(r), m) ? 1U : 0U;
      if (a) km.entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), a});
    }
  }
  return km;
}

KMInstance prune(const KMInstance& instance, std::uint32_t lambda) {
  if (lambda == 0) throw Error("prune: lambda must be at least 1");
  KMInstance out = instance;
  out.lambda = lambda;
  out.entries.clear();
  out.cols.clear();
  std::vector<const KMEntry*> offending(instance.cols.size(), nullptr);
  // Columns appear in label order; map label -> position.
  std::unordered_map<std::uint32_t, std::size_t> pos;
  for (std::size_t i = 0; i < instance.cols.size(); ++i) pos.emplace(instance.cols[i].id, i);
  for (const KMEntry& e : instance.entries) {
    auto& slot = offending[pos.at(e.col)];
    if (e.value > lambda && (!slot || e.row < slot->row)) slot = &e;
  }
  for (std::size_t i = 0; i < instance.cols.size(); ++i) {
    if (offending[i]) {
      out.pruned.push_back({offending[i]->col, offending[i]->row, offending[i]->value});
    } else {
      out.cols.push_back(instance.cols[i]);
    }
  }
  for (const KMEntry& e : instance.entries) {
    if (!offending[pos.at(e.col)]) out.entries.push_back(e);
  }
  std::sort(out.pruned.begin(), out.pruned.end(),
            [](const PrunedColumn& a, const PrunedColumn& b) { return a.col < b.col; });
  return out;
}

// ---------------------------------------------------------------------------------
// KM text format

void write_km(std::ostream& os, const KMInstance& km) {
  os << "KM " << km.n << ' ' << km.t << ' ' << km.k << ' ' << km.lambda << ' ' << km.rows.size() << ' '
     << km.cols.size() << '\n';
  for (const OrbitLabel& l : km.rows) os << "R " << l.id << ' ' << l.orbit_length << '\n';
  for (const OrbitLabel& l : km.cols) os << "C " << l.id << ' ' << l.orbit_length << '\n';
  for (const KMEntry& e : km.entries) os << "E " << e.row << ' ' << e.col << ' ' << e.value << '\n';
  for (const PrunedColumn& p : km.pruned) os << "P " << p.col << ' ' << p.row << ' ' << p.value << '\n';
  os << "X " << km.checksum() << '\n';
}

KMInstance read_km(std::istream& is) {
  KMInstance km;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  bool have_checksum = false;
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  std::uint32_t stored_checksum = 0;

  auto fields = [&](std::istringstream& ss, auto&... out) {
    ((ss >> out) && ...);
    std::string extra;
    if (ss.fail() || (ss >> extra)) throw ParseError(lineno, "malformed KM line: '" + line + "'");
  };

  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (have_checksum) throw ParseError(lineno, "content after checksum line");
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (!have_header) {
      if (tag != "KM") throw ParseError(lineno, "expected 'KM' header");
      fields(ss, km.n, km.t, km.k, km.lambda, nrows, ncols);
      have_header = true;
      continue;
    }
    if (tag == "R") {
      OrbitLabel l;
      fields(ss, l.id, l.orbit_length);
      km.rows.push_back(l);
    } else if (tag == "C") {
      OrbitLabel l;
      fields(ss, l.id, l.orbit_length);
      km.cols.push_back(l);
    } else if (tag == "E") {
      KMEntry e;
      fields(ss, e.row, e.col, e.value);
      if (e.value == 0) throw ParseError(lineno, "zero entries are not stored");
      km.entries.push_back(e);
    } else if (tag == "P") {
      PrunedColumn p;
      fields(ss, p.col, p.row, p.value);
      km.pruned.push_back(p);
    } else if (tag == "X") {
      fields(ss, stored_checksum);
      have_checksum = true;
    } else {
      throw ParseError(lineno, "unknown record tag '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing 'KM' header");
  if (!have_checksum) throw ParseError(lineno, "missing 'X' checksum line");
  if (km.rows.size() != nrows || km.cols.size() != ncols) {
    throw ParseError(lineno, "row/column label counts disagree with the header");
  }
  if (km.checksum() != stored_checksum) {
    throw ParseError(lineno, "checksum mismatch: file says " + std::to_string(stored_checksum) + ", content gives " +
                                 std::to_string(km.checksum()));
  }
  return km;
}

void export_km(const KMInstance& instance, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_km(os, instance);
  if (!os) throw Error("failed writing " + path.string());
}

KMInstance import_km(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  return read_km(is);
}

}  // namespace qsteiner
