#include <doctest.h>

#include <random>

#include "qsteiner/design.hpp"
#include "qsteiner/fixtures.hpp"
#include "qsteiner/group.hpp"
#include "qsteiner/kernels.hpp"

using namespace qsteiner;

namespace {

const MatrixGroup& fixture_group() {
  static const MatrixGroup g = group_closure(fixtures::steiner_generators());
  return g;
}

}  // namespace

TEST_CASE("rref_less is the subspace order") {
  const auto all = enumerate_subspaces(6, 3);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const Subspace& a = all[rng() % all.size()];
    const Subspace& b = all[rng() % all.size()];
    CHECK(rref_less(a.rows().data(), b.rows().data(), 3) == (a < b));
  }
}

TEST_CASE("orbit_image_ranks: parallel equals serial") {
  const MatrixGroup& g = fixture_group();
  const SubspaceIndexer idx(13, 3);
  const auto reps = fixtures::steiner_representatives();
  std::vector<std::uint64_t> a(g.size());
  std::vector<std::uint64_t> b(g.size());
  kernels::serial::orbit_image_ranks(g, reps[5].rows(), idx, a);
  for (int threads : {1, 2, 4}) {
    set_thread_count(threads);
    kernels::orbit_image_ranks(g, reps[5].rows(), idx, b);
    CHECK(a == b);
  }
  set_thread_count(0);
  for (std::size_t e = 0; e < g.size(); e += 997) CHECK(idx.subspace(a[e]) == act(g, e, reps[5]));
}

TEST_CASE("min_images: parallel equals serial and is the orbit minimum") {
  const MatrixGroup g = singer_normalizer(8);
  std::mt19937_64 rng(6);
  std::vector<Word> in;
  std::vector<Subspace> subs;
  for (int i = 0; i < 100; ++i) {
    std::vector<Word> rows{rng() & 0xff, rng() & 0xff, rng() & 0xff};
    const Subspace s = canonicalize(8, rows);
    if (s.dim() != 3) continue;
    subs.push_back(s);
    in.insert(in.end(), s.rows().begin(), s.rows().end());
  }
  std::vector<Word> a(in.size());
  std::vector<Word> b(in.size());
  kernels::serial::min_images(g, 3, in, a);
  for (int threads : {1, 3}) {
    set_thread_count(threads);
    kernels::min_images(g, 3, in, b);
    CHECK(a == b);
  }
  set_thread_count(0);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    Subspace best = subs[i];
    for (std::size_t e = 0; e < g.size(); ++e) best = std::min(best, act(g, e, subs[i]));
    CHECK(Subspace::from_rref(8, {a.begin() + 3 * i, a.begin() + 3 * i + 3}) == best);
  }
}

TEST_CASE("count_coverage: parallel equals serial") {
  const auto reps = fixtures::steiner_representatives();
  const BlockSet blocks = expand_orbits({reps[0], reps[1]}, fixture_group());
  const SubspaceIndexer bi(13, 3);
  const SubspaceIndexer ti(13, 2);
  std::vector<std::uint32_t> ca(ti.size(), 0), oa(ti.size(), 0);
  std::vector<std::uint32_t> cb(ti.size(), 0), ob(ti.size(), 0);
  kernels::serial::count_coverage(blocks.ranks, bi, ti, ca, oa);
  set_thread_count(3);
  kernels::count_coverage(blocks.ranks, bi, ti, cb, ob);
  set_thread_count(0);
  CHECK(ca == cb);
  std::size_t checked = 0;
  for (std::size_t r = 0; r < ca.size(); ++r) {
    if (ca[r] == 1) {
      CHECK(oa[r] == ob[r]);
      if (++checked % 5000 == 0) CHECK(contains(ti.subspace(r), blocks.block(oa[r])));
    }
  }
  CHECK(checked == 2 * 106483 * 7);
}
