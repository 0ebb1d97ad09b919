#include "qsteiner/group.hpp"

#include <cstdio>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace qsteiner {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// Nibble tables above this size fall back to row-parity products.
constexpr std::size_t kTableBudgetBytes = std::size_t{1} << 30;

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
}

struct RowsHash {
  std::size_t operator()(const std::vector<Word>& rows) const noexcept {
    std::uint64_t h = kFnvOffset;
    for (Word r : rows) fnv_mix(h, r);
    return static_cast<std::size_t>(h);
  }
};

std::vector<Word> rows_of(const BitMatrix& m) { return {m.row_words().begin(), m.row_words().end()}; }

}  // namespace

MatrixGroup MatrixGroup::from_generators(std::vector<BitMatrix> generators) {
  if (generators.empty()) throw DimensionError("MatrixGroup: at least one generator is required");
  const int n = generators.front().rows();
  for (const BitMatrix& g : generators) {
    if (!g.square() || g.rows() != n) throw DimensionError("MatrixGroup: generators must all be n x n");
    if (rank(g) != n) throw SingularMatrixError("MatrixGroup: generator is not invertible");
  }
  auto src = std::make_shared<Source>();
  src->n = n;
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, static_cast<std::uint64_t>(n));
  fnv_mix(h, generators.size());
  for (const BitMatrix& g : generators) {
    for (Word r : g.row_words()) fnv_mix(h, r);
  }
  src->hash = h;
  src->generators = std::move(generators);
  MatrixGroup out;
  out.n_ = n;
  out.chunks_ = (n + 3) / 4;
  out.source_ = std::move(src);
  return out;
}

MatrixGroup MatrixGroup::trivial(int n) { return group_closure({BitMatrix::identity(n)}); }

int MatrixGroup::dim() const noexcept { return n_; }

const std::vector<BitMatrix>& MatrixGroup::generators() const noexcept {
  static const std::vector<BitMatrix> kEmpty;
  return source_ ? source_->generators : kEmpty;
}

std::uint64_t MatrixGroup::generator_hash() const noexcept { return source_ ? source_->hash : 0; }

std::string MatrixGroup::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(generator_hash()));
  return buf;
}

bool MatrixGroup::expanded() const noexcept { return !rows_->empty(); }

std::uint64_t MatrixGroup::order() const {
  if (!expanded()) throw LimitError("MatrixGroup::order: group has not been expanded (run group_closure)");
  return size();
}

std::size_t MatrixGroup::size() const noexcept {
  return n_ ? rows_->size() / static_cast<std::size_t>(n_) : 0;
}

BitMatrix MatrixGroup::element(std::size_t e) const {
  if (e >= size()) throw DimensionError("MatrixGroup::element: index out of range");
  const auto first = rows_->begin() + static_cast<std::ptrdiff_t>(e * n_);
  return BitMatrix(n_, std::vector<Word>(first, first + n_));
}

std::uint32_t MatrixGroup::inverse_index(std::size_t e) const { return inverse_->at(e); }

void MatrixGroup::build_tables() {
  const std::size_t elements = size();
  const std::size_t words = elements * static_cast<std::size_t>(chunks_) * 16;
  if (words * sizeof(Word) > kTableBudgetBytes) return;
  auto tables = std::make_shared<std::vector<Word>>(words);
  for (std::size_t e = 0; e < elements; ++e) {
    const std::span<const Word> rows(rows_->data() + e * n_, static_cast<std::size_t>(n_));
    Word* t = tables->data() + e * chunks_ * 16;
    for (int c = 0; c < chunks_; ++c, t += 16) {
      for (Word nib = 0; nib < 16; ++nib) t[nib] = mat_vec(rows, (nib << (4 * c)) & low_mask(n_));
    }
  }
  tables_ = std::move(tables);
}

MatrixGroup group_closure(const MatrixGroup& group, std::uint64_t cap) {
  if (!group.source_) throw DimensionError("group_closure: empty group");
  if (group.expanded()) return group;
  const int n = group.n_;
  const auto& gens = group.generators();

  std::unordered_map<std::vector<Word>, std::uint32_t, RowsHash> index;
  auto rows = std::make_shared<std::vector<Word>>();
  std::vector<BitMatrix> elements;
  elements.push_back(BitMatrix::identity(n));
  index.emplace(rows_of(elements.back()), 0);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const BitMatrix& g : gens) {
      BitMatrix y = g * elements[head];
      auto key = rows_of(y);
      if (index.contains(key)) continue;
      if (elements.size() >= cap) {
        throw LimitError("group_closure: group order exceeds the closure cap " + std::to_string(cap));
      }
      index.emplace(std::move(key), static_cast<std::uint32_t>(elements.size()));
      elements.push_back(std::move(y));
    }
  }

  auto inverse = std::make_shared<std::vector<std::uint32_t>>(elements.size());
  rows->reserve(elements.size() * static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto r = elements[e].row_words();
    rows->insert(rows->end(), r.begin(), r.end());
    const auto it = index.find(rows_of(mat_inverse(elements[e])));
    if (it == index.end()) throw ConsistencyError("group_closure: inverse missing from closure");
    (*inverse)[e] = it->second;
  }

  MatrixGroup out = group;
  out.rows_ = std::move(rows);
  out.inverse_ = std::move(inverse);
  out.build_tables();
  return out;
}

MatrixGroup group_closure(std::vector<BitMatrix> generators, std::uint64_t cap) {
  return group_closure(MatrixGroup::from_generators(std::move(generators)), cap);
}

MatrixGroup singer_normalizer(int n, bool expand) {
  const GF2Polynomial p = primitive_polynomial(n);
  MatrixGroup g = MatrixGroup::from_generators({frobenius_matrix(p), companion_matrix(p)});
  return expand ? group_closure(g) : g;
}

Subspace act(const BitMatrix& g, const Subspace& u) {
  if (!g.square() || g.rows() != u.ambient()) throw DimensionError("act: matrix and subspace dimensions differ");
  std::vector<Word> img;
  img.reserve(static_cast<std::size_t>(u.dim()));
  for (Word r : u.rows()) img.push_back(mat_vec(g, r));
  return canonicalize(u.ambient(), img);
}

Subspace act(const MatrixGroup& group, std::size_t element, const Subspace& u) {
  if (group.dim() != u.ambient()) throw DimensionError("act: group and subspace dimensions differ");
  if (element >= group.size()) throw DimensionError("act: element index out of range");
  std::vector<Word> img;
  img.reserve(static_cast<std::size_t>(u.dim()));
  for (Word r : u.rows()) img.push_back(group.apply(element, r));
  return canonicalize(u.ambient(), img);
}

std::vector<Subspace> orbit(const Subspace& u, const MatrixGroup& group) {
  if (group.dim() != u.ambient()) throw DimensionError("orbit: group and subspace dimensions differ");
  std::vector<Subspace> out{u};
  std::unordered_set<Subspace, SubspaceHash> seen{u};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const BitMatrix& g : group.generators()) {
      Subspace img = act(g, out[head]);
      if (seen.insert(img).second) out.push_back(std::move(img));
    }
  }
  return out;
}

}  // namespace qsteiner
