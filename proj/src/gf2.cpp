#include "qsteiner/gf2.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace qsteiner {

namespace {

void check_dim(int n, const char* what) {
  if (n < 0 || n > kMaxDim) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(n) +
                         " outside [0, 64]");
  }
}

bool is_identity(const BitMatrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    if (m.row(i) != (Word{1} << i)) return false;
  }
  return true;
}

Word mul_x(Word a, const GF2Polynomial& p) {
  const bool carry = (a >> (p.degree - 1)) & 1U;
  a = (a << 1) & low_mask(p.degree);
  return carry ? a ^ p.low : a;
}

}  // namespace

BitVector::BitVector(int width, Word bits) : width_(width), bits_(bits) {
  check_dim(width, "BitVector");
  if (bits & ~low_mask(width)) throw DimensionError("BitVector: bits set above width");
}

void BitVector::set(int i, bool value) {
  if (i < 0 || i >= width_) throw DimensionError("BitVector::set: index out of range");
  bits_ = value ? (bits_ | (Word{1} << i)) : (bits_ & ~(Word{1} << i));
}

BitMatrix::BitMatrix(int nrows, int ncols) : cols_(ncols), rows_(static_cast<std::size_t>(nrows), 0) {
  check_dim(ncols, "BitMatrix");
  if (nrows < 0) throw DimensionError("BitMatrix: negative row count");
}

BitMatrix::BitMatrix(int ncols, std::vector<Word> rows) : cols_(ncols), rows_(std::move(rows)) {
  check_dim(ncols, "BitMatrix");
  const Word mask = low_mask(ncols);
  for (Word r : rows_) {
    if (r & ~mask) throw DimensionError("BitMatrix: row has bits beyond column count");
  }
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.rows_[i] = Word{1} << i;
  return m;
}

void BitMatrix::set(int i, int j, bool value) {
  if (i < 0 || i >= rows() || j < 0 || j >= cols_) {
    throw DimensionError("BitMatrix::set: index out of range");
  }
  Word& r = rows_[i];
  r = value ? (r | (Word{1} << j)) : (r & ~(Word{1} << j));
}

void BitMatrix::set_row(int i, Word bits) {
  if (bits & ~low_mask(cols_)) throw DimensionError("BitMatrix::set_row: bits beyond column count");
  rows_.at(static_cast<std::size_t>(i)) = bits;
}

BitMatrix BitMatrix::transpose() const {
  if (rows() > kMaxDim) throw DimensionError("transpose: more than 64 rows");
  BitMatrix t(cols_, rows());
  for (int i = 0; i < rows(); ++i) {
    for (Word r = rows_[i]; r; r &= r - 1) {
      t.rows_[std::countr_zero(r)] |= Word{1} << i;
    }
  }
  return t;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  std::vector<Word> out(static_cast<std::size_t>(a.rows()), 0);
  for (int i = 0; i < a.rows(); ++i) {
    Word acc = 0;
    for (Word r = a.row(i); r; r &= r - 1) acc ^= b.row(std::countr_zero(r));
    out[i] = acc;
  }
  return BitMatrix(b.cols(), std::move(out));
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) { return mat_mul(a, b); }

RrefResult rref(const BitMatrix& m) {
  std::vector<Word> rows(m.row_words().begin(), m.row_words().end());
  const int rk = rref_words(rows);
  rows.resize(static_cast<std::size_t>(rk));
  RrefResult out;
  out.pivots.reserve(rows.size());
  for (Word r : rows) out.pivots.push_back(std::countr_zero(r));
  out.rank = rk;
  out.reduced = BitMatrix(m.cols(), std::move(rows));
  return out;
}

int rank(const BitMatrix& m) {
  std::vector<Word> rows(m.row_words().begin(), m.row_words().end());
  return rref_words(rows);
}

BitMatrix mat_inverse(const BitMatrix& m) {
  if (!m.square()) throw DimensionError("mat_inverse: matrix is not square");
  const int n = m.rows();
  std::vector<Word> a(m.row_words().begin(), m.row_words().end());
  std::vector<Word> inv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) inv[i] = Word{1} << i;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && !((a[piv] >> col) & 1U)) ++piv;
    if (piv == n) throw SingularMatrixError("mat_inverse: matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    for (int r = 0; r < n; ++r) {
      if (r != col && ((a[r] >> col) & 1U)) {
        a[r] ^= a[col];
        inv[r] ^= inv[col];
      }
    }
  }
  return BitMatrix(n, std::move(inv));
}

BitMatrix mat_power(const BitMatrix& m, std::uint64_t e) {
  if (!m.square()) throw DimensionError("mat_power: matrix is not square");
  BitMatrix result = BitMatrix::identity(m.rows());
  BitMatrix base = m;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::uint64_t matrix_order(const BitMatrix& m, std::uint64_t bound) {
  if (!m.square()) throw DimensionError("matrix_order: matrix is not square");
  if (bound < 1) throw LimitError("matrix_order: bound must be at least 1");
  if (rank(m) != m.rows()) throw SingularMatrixError("matrix_order: matrix is singular");
  BitMatrix power = m;
  std::uint64_t e = 1;
  while (!is_identity(power)) {
    if (++e > bound) {
      throw LimitError("matrix_order: order exceeds bound " + std::to_string(bound));
    }
    power = power * m;
  }
  return e;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t value) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= value; p += (p == 2 ? 1 : 2)) {
    if (value % p == 0) {
      out.push_back(p);
      while (value % p == 0) value /= p;
    }
  }
  if (value > 1) out.push_back(value);
  return out;
}

bool has_order(const BitMatrix& m, std::uint64_t e) {
  if (!m.square()) throw DimensionError("has_order: matrix is not square");
  if (e == 0) return false;
  if (!is_identity(mat_power(m, e))) return false;
  for (std::uint64_t p : prime_factors(e)) {
    if (is_identity(mat_power(m, e / p))) return false;
  }
  return true;
}

std::string GF2Polynomial::to_string() const {
  std::ostringstream os;
  os << "x^" << degree;
  for (int i = degree - 1; i >= 0; --i) {
    if (!coefficient(i)) continue;
    if (i == 0) {
      os << " + 1";
    } else if (i == 1) {
      os << " + x";
    } else {
      os << " + x^" << i;
    }
  }
  return os.str();
}

BitMatrix companion_matrix(const GF2Polynomial& p) {
  if (p.degree < 2 || p.degree > kMaxDim) throw DimensionError("companion_matrix: degree out of range");
  const int n = p.degree;
  BitMatrix c(n, n);
  for (int j = 0; j + 1 < n; ++j) c.set(j + 1, j, true);
  for (int i = 0; i < n; ++i) c.set(i, n - 1, (p.low >> i) & 1U);
  return c;
}

BitMatrix frobenius_matrix(const GF2Polynomial& p) {
  if (p.degree < 2 || p.degree > kMaxDim) throw DimensionError("frobenius_matrix: degree out of range");
  const int n = p.degree;
  BitMatrix f(n, n);
  Word power = 1;  // x^(2j) mod p
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) f.set(i, j, (power >> i) & 1U);
    power = mul_x(mul_x(power, p), p);
  }
  return f;
}

std::string format_matrix(const BitMatrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.rows()) * (m.cols() + 1));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out.push_back(m.get(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

}  // namespace qsteiner
