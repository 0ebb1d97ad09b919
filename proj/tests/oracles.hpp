#pragma once

// Naive reference implementations used only by the tests. Everything here is written
// from the definitions, without the library's ranking, tables or search structures.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "qsteiner/exact_cover.hpp"
#include "qsteiner/gf2.hpp"

namespace oracle {

using qsteiner::BitMatrix;
using qsteiner::Word;

inline BitMatrix naive_mul(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      int s = 0;
      for (int l = 0; l < a.cols(); ++l) s ^= a.get(i, l) & b.get(l, j);
      c.set(i, j, s);
    }
  }
  return c;
}

// Every vector of the span, sorted.
inline std::vector<Word> span(const std::vector<Word>& gens) {
  std::set<Word> s{0};
  for (Word g : gens) {
    std::set<Word> next = s;
    for (Word v : s) next.insert(v ^ g);
    s = std::move(next);
  }
  return {s.begin(), s.end()};
}

// All k-subspaces of GF(2)^n (n <= 6) as sorted vector sets. A subspace is held as a
// 64-bit membership mask over the 2^n vectors; each level extends every subspace of the
// previous one by every vector outside it.
inline std::set<std::vector<Word>> all_subspaces(int n, int k) {
  const Word points = Word{1} << n;
  std::set<Word> level{1};  // {0}
  for (int d = 0; d < k; ++d) {
    std::set<Word> next;
    for (Word m : level) {
      for (Word v = 1; v < points; ++v) {
        if ((m >> v) & 1) continue;
        Word grown = m;
        for (Word x = 0; x < points; ++x) {
          if ((m >> x) & 1) grown |= Word{1} << (x ^ v);
        }
        next.insert(grown);
      }
    }
    level = std::move(next);
  }
  std::set<std::vector<Word>> out;
  for (Word m : level) {
    std::vector<Word> members;
    for (Word x = 0; x < points; ++x) {
      if ((m >> x) & 1) members.push_back(x);
    }
    out.insert(std::move(members));
  }
  return out;
}

inline bool subset(const std::vector<Word>& a, const std::vector<Word>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Pair cover of the Steiner triple system on v points: items are pairs, options triples.
inline qsteiner::CoverProblem sts_problem(int v) {
  qsteiner::CoverProblem p;
  std::vector<std::vector<int>> pair_id(v, std::vector<int>(v, -1));
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      pair_id[a][b] = static_cast<int>(p.item_labels.size());
      p.item_labels.push_back(static_cast<std::uint32_t>(p.item_labels.size()));
      p.multiplicity.push_back(1);
    }
  }
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      for (int c = b + 1; c < v; ++c) {
        p.option_labels.push_back(static_cast<std::uint32_t>(p.option_labels.size()));
        std::vector<std::uint32_t> items{static_cast<std::uint32_t>(pair_id[a][b]),
                                         static_cast<std::uint32_t>(pair_id[a][c]),
                                         static_cast<std::uint32_t>(pair_id[b][c])};
        std::sort(items.begin(), items.end());
        p.option_items.push_back(items);
      }
    }
  }
  return p;
}

// Line spread problem of GF(2)^4: items are the 15 nonzero vectors, options the 35 lines.
inline qsteiner::CoverProblem spread4_problem() {
  qsteiner::CoverProblem p;
  for (std::uint32_t v = 1; v < 16; ++v) {
    p.item_labels.push_back(v);
    p.multiplicity.push_back(1);
  }
  for (const auto& line : all_subspaces(4, 2)) {
    p.option_labels.push_back(static_cast<std::uint32_t>(p.option_labels.size()));
    std::vector<std::uint32_t> items;
    for (Word v : line) {
      if (v) items.push_back(static_cast<std::uint32_t>(v - 1));
    }
    p.option_items.push_back(items);
  }
  return p;
}

// Every size-`choose` subset of the options, keeping those with exact coverage.
inline std::set<std::vector<std::uint32_t>> subsets_brute_force(const qsteiner::CoverProblem& p, int choose) {
  std::set<std::vector<std::uint32_t>> out;
  const int m = static_cast<int>(p.option_count());
  std::vector<int> idx(static_cast<std::size_t>(choose));
  for (int i = 0; i < choose; ++i) idx[i] = i;
  std::vector<std::uint32_t> cover(p.item_count());
  while (true) {
    std::fill(cover.begin(), cover.end(), 0);
    for (int i : idx) {
      for (std::uint32_t it : p.option_items[i]) ++cover[it];
    }
    bool ok = true;
    for (std::size_t i = 0; i < cover.size() && ok; ++i) ok = cover[i] == p.multiplicity[i];
    if (ok) {
      std::vector<std::uint32_t> labels;
      for (int i : idx) labels.push_back(p.option_labels[i]);
      std::sort(labels.begin(), labels.end());
      out.insert(labels);
    }
    int i = choose - 1;
    while (i >= 0 && idx[i] == m - choose + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < choose; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Include/exclude recursion over options in order, pruning only on over-coverage.
inline std::set<std::vector<std::uint32_t>> backtrack_all(const qsteiner::CoverProblem& p) {
  std::set<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cover(p.item_count(), 0);
  std::vector<std::uint32_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t o) {
    if (o == p.option_count()) {
      for (std::size_t i = 0; i < cover.size(); ++i) {
        if (cover[i] != p.multiplicity[i]) return;
      }
      auto labels = chosen;
      std::sort(labels.begin(), labels.end());
      out.insert(labels);
      return;
    }
    bool fits = true;
    for (std::uint32_t it : p.option_items[o]) fits = fits && cover[it] < p.multiplicity[it];
    if (fits) {
      for (std::uint32_t it : p.option_items[o]) ++cover[it];
      chosen.push_back(p.option_labels[o]);
      rec(o + 1);
      chosen.pop_back();
      for (std::uint32_t it : p.option_items[o]) --cover[it];
    }
    rec(o + 1);
  };
  rec(0);
  return out;
}

}  // namespace oracle
