#include <array>

#include "qsteiner/gf2.hpp"

namespace qsteiner {

namespace {

// Low-weight primitive polynomials, one per degree. Each entry lists the exponents
// below the leading term. Entries are validated in the test suite by checking that
// the companion matrix has order exactly 2^n - 1.
struct Entry {
  int degree;
  std::array<int, 4> exponents;  // -1 terminated
};

constexpr std::array<Entry, 31> kTable{{
    {2, {1, 0, -1, -1}},
    {3, {1, 0, -1, -1}},
    {4, {1, 0, -1, -1}},
    {5, {2, 0, -1, -1}},
    {6, {1, 0, -1, -1}},
    {7, {1, 0, -1, -1}},
    {8, {4, 3, 2, 0}},
    {9, {4, 0, -1, -1}},
    {10, {3, 0, -1, -1}},
    {11, {2, 0, -1, -1}},
    {12, {6, 4, 1, 0}},
    {13, {4, 3, 1, 0}},
    {14, {10, 6, 1, 0}},
    {15, {1, 0, -1, -1}},
    {16, {12, 3, 1, 0}},
    {17, {3, 0, -1, -1}},
    {18, {7, 0, -1, -1}},
    {19, {5, 2, 1, 0}},
    {20, {3, 0, -1, -1}},
    {21, {2, 0, -1, -1}},
    {22, {1, 0, -1, -1}},
    {23, {5, 0, -1, -1}},
    {24, {7, 2, 1, 0}},
    {25, {3, 0, -1, -1}},
    {26, {6, 2, 1, 0}},
    {27, {5, 2, 1, 0}},
    {28, {3, 0, -1, -1}},
    {29, {2, 0, -1, -1}},
    {30, {23, 2, 1, 0}},
    {31, {3, 0, -1, -1}},
    {32, {22, 2, 1, 0}},
}};

}  // namespace

GF2Polynomial primitive_polynomial(int n) {
  if (n < kMinPrimitiveDegree || n > kMaxPrimitiveDegree) {
    throw DimensionError("primitive_polynomial: degree " + std::to_string(n) +
                         " outside the embedded table [2, 32]");
  }
  const Entry& e = kTable[static_cast<std::size_t>(n - kMinPrimitiveDegree)];
  GF2Polynomial p{n, 0};
  for (int x : e.exponents) {
    if (x >= 0) p.low |= Word{1} << x;
  }
  return p;
}

}  // namespace qsteiner
