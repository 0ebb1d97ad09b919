#include "qsteiner/text_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace qsteiner {

namespace {

struct LineReader {
  std::istream& is;
  std::size_t lineno = 0;

  // Next line that is not a comment; blank lines are returned as "".
  bool next(std::string& line) {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) {
        line.clear();
        return true;
      }
      if (line[first] == '#') continue;
      line = line.substr(first, line.find_last_not_of(" \t") - first + 1);
      return true;
    }
    return false;
  }
};

Word parse_row(const std::string& line, std::size_t lineno) {
  if (line.size() > static_cast<std::size_t>(kMaxDim)) throw ParseError(lineno, "row longer than 64 entries");
  Word w = 0;
  for (std::size_t j = 0; j < line.size(); ++j) {
    if (line[j] == '1') w |= Word{1} << j;
    else if (line[j] != '0') throw ParseError(lineno, std::string("unexpected character '") + line[j] + "' in matrix row");
  }
  return w;
}

// Reads matrix rows until a blank line, a non-row line or EOF. `pending` receives the
// terminating non-row line, if any.
bool read_block(LineReader& in, std::string& pending, BitMatrix& out) {
  std::vector<Word> rows;
  std::size_t width = 0;
  std::string line;
  while (in.next(line)) {
    if (line.empty()) {
      if (rows.empty()) continue;
      break;
    }
    if (line.find_first_of(" \t") != std::string::npos || (line[0] != '0' && line[0] != '1')) {
      pending = line;
      break;
    }
    if (!rows.empty() && line.size() != width) throw ParseError(in.lineno, "ragged matrix rows");
    width = line.size();
    rows.push_back(parse_row(line, in.lineno));
  }
  if (rows.empty()) return false;
  out = BitMatrix(static_cast<int>(width), std::move(rows));
  return true;
}

template <class T, class Fn>
T with_input(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  return fn(is);
}

template <class Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  fn(os);
  if (!os) throw Error("failed writing " + path.string());
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::vector<BitMatrix> read_matrix_blocks(std::istream& is) {
  LineReader in{is};
  std::vector<BitMatrix> blocks;
  std::string pending;
  BitMatrix m;
  while (read_block(in, pending, m)) {
    if (!pending.empty()) throw ParseError(in.lineno, "unexpected line '" + pending + "'");
    blocks.push_back(std::move(m));
  }
  if (!pending.empty()) throw ParseError(in.lineno, "unexpected line '" + pending + "'");
  return blocks;
}

void write_matrix_blocks(std::ostream& os, const std::vector<BitMatrix>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) os << '\n';
    os << format_matrix(blocks[i]);
  }
}

std::vector<Subspace> read_subspaces(std::istream& is) {
  std::vector<Subspace> out;
  for (const BitMatrix& m : read_matrix_blocks(is)) {
    if (!out.empty() && m.cols() != out.front().ambient()) {
      throw DimensionError("read_subspaces: blocks have different ambient dimensions");
    }
    out.push_back(canonicalize(m));
  }
  return out;
}

void write_subspaces(std::ostream& os, const std::vector<Subspace>& subspaces) {
  if (!subspaces.empty()) {
    os << "# subspaces " << subspaces.size() << " ambient " << subspaces.front().ambient() << '\n';
  }
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    if (i) os << '\n';
    os << format_matrix(subspaces[i].basis());
  }
}

MatrixGroup read_group(std::istream& is) {
  auto gens = read_matrix_blocks(is);
  if (gens.empty()) throw ParseError(0, "group file holds no generators");
  return MatrixGroup::from_generators(std::move(gens));
}

void write_group(std::ostream& os, const MatrixGroup& group) {
  os << "# generators " << group.generators().size() << " dim " << group.dim() << " hash " << group.hash_hex()
     << '\n';
  write_matrix_blocks(os, group.generators());
}

void write_orbit_table(std::ostream& os, const OrbitTable& table) {
  os << "# orbits " << table.size() << '\n';
  os << table.ambient() << ' ' << table.dim() << ' ' << hex64(table.group_hash()) << ' ' << table.group_order()
     << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    os << '\n' << i << ' ' << table.length(i) << '\n';
    os << format_matrix(table.rep(i).basis());
  }
}

OrbitTable read_orbit_table(std::istream& is) {
  LineReader in{is};
  std::string line;
  while (in.next(line) && line.empty()) {
  }
  std::istringstream header(line);
  std::string hash_hex;
  int n = 0;
  int k = 0;
  std::uint64_t order = 0;
  std::string extra;
  if (!(header >> n >> k >> hash_hex >> order) || (header >> extra)) {
    throw ParseError(in.lineno, "expected 'n k group-hash order' header");
  }
  std::uint64_t hash = 0;
  try {
    hash = std::stoull(hash_hex, nullptr, 16);
  } catch (const std::exception&) {
    throw ParseError(in.lineno, "bad group hash '" + hash_hex + "'");
  }
  std::vector<Subspace> reps;
  std::vector<std::uint64_t> lengths;
  std::string pending;
  while (true) {
    if (pending.empty()) {
      if (!in.next(line)) break;
      if (line.empty()) continue;
    } else {
      line = pending;
      pending.clear();
    }
    std::istringstream ss(line);
    std::size_t id = 0;
    std::uint64_t len = 0;
    if (!(ss >> id >> len) || (ss >> extra)) throw ParseError(in.lineno, "expected 'id length'");
    if (id != reps.size()) throw ParseError(in.lineno, "orbit ids must be consecutive from 0");
    BitMatrix m;
    if (!read_block(in, pending, m)) throw ParseError(in.lineno, "orbit without representative");
    if (m.cols() != n) throw ParseError(in.lineno, "representative has the wrong ambient dimension");
    Subspace s = canonicalize(m);
    if (s.dim() != k) throw ParseError(in.lineno, "representative has the wrong dimension");
    reps.push_back(std::move(s));
    lengths.push_back(len);
  }
  return OrbitTable(n, k, order, hash, std::move(reps), std::move(lengths));
}

std::vector<BitMatrix> load_matrix_blocks(const std::filesystem::path& path) {
  return with_input<std::vector<BitMatrix>>(path, [](std::istream& is) { return read_matrix_blocks(is); });
}

std::vector<Subspace> load_subspaces(const std::filesystem::path& path) {
  return with_input<std::vector<Subspace>>(path, [](std::istream& is) { return read_subspaces(is); });
}

MatrixGroup load_group(const std::filesystem::path& path) {
  return with_input<MatrixGroup>(path, [](std::istream& is) { return read_group(is); });
}

OrbitTable load_orbit_table(const std::filesystem::path& path) {
  return with_input<OrbitTable>(path, [](std::istream& is) { return read_orbit_table(is); });
}

void save_subspaces(const std::filesystem::path& path, const std::vector<Subspace>& subspaces) {
  with_output(path, [&](std::ostream& os) { write_subspaces(os, subspaces); });
}

void save_group(const std::filesystem::path& path, const MatrixGroup& group) {
  with_output(path, [&](std::ostream& os) { write_group(os, group); });
}

void save_orbit_table(const std::filesystem::path& path, const OrbitTable& table) {
  with_output(path, [&](std::ostream& os) { write_orbit_table(os, table); });
}

}  // namespace qsteiner
