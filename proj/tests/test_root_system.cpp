#include <random>

#include "doctest.h"
#include "rvl/root_system.hpp"

using namespace rvl;

namespace {

RootSet random_subset(const RootSystem& rs, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  RootSet s = 0;
  for (int i = 0; i < rs.num_roots(); ++i)
    if (bit(rng)) s = set_insert(s, i);
  return s;
}

}  // namespace

TEST_CASE("classical root counts") {
  CHECK(RootSystem::build('A', 2).num_roots() == 6);
  CHECK(RootSystem::build('A', 6).num_roots() == 42);
  CHECK(RootSystem::build('B', 2).num_roots() == 8);
  CHECK(RootSystem::build('B', 3).num_roots() == 18);
  CHECK(RootSystem::build('C', 3).num_roots() == 18);
  CHECK(RootSystem::build('D', 4).num_roots() == 24);
  CHECK(RootSystem::build('G', 2).num_roots() == 12);
  CHECK_THROWS(RootSystem::build('A', 7));
  CHECK_THROWS(RootSystem::build('E', 6));
}

TEST_CASE("table self-consistency") {
  for (auto [t, r] : std::vector<std::pair<char, int>>{
           {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}}) {
    RootSystem rs = RootSystem::build(t, r);
    for (int i = 0; i < rs.num_roots(); ++i) {
      CHECK(rs.negative_of(rs.negative_of(i)) == i);
      CHECK(rs.pairing(i, i) == 2);
      // sum_table defined iff vector sum is a root
      for (int j = 0; j < rs.num_roots(); ++j) {
        auto s = rs.root(i) + rs.root(j);
        CHECK(rs.sum_index(i, j) == rs.index_of(s));
      }
    }
    CHECK(static_cast<int>(rs.simple_indices().size()) == rs.rank());
  }
}

TEST_CASE("strong orthogonality in A2 and A3") {
  RootSystem a2 = RootSystem::build('A', 2);
  for (int a = 0; a < a2.num_roots(); ++a)
    for (int b = 0; b < a2.num_roots(); ++b) CHECK_FALSE(a2.strongly_orthogonal(a, b));

  RootSystem a3 = RootSystem::build('A', 3);
  int e12 = a3.index_of({1, -1, 0, 0});
  int e34 = a3.index_of({0, 0, 1, -1});
  CHECK(a3.strongly_orthogonal(e12, e34));
  CHECK_FALSE(a3.strongly_orthogonal(e12, e12));
}

TEST_CASE("perp examples") {
  RootSystem a2 = RootSystem::build('A', 2);
  RootSet single = set_insert(0, a2.simple_indices()[0]);
  CHECK(a2.perp(single) == 0);
  CHECK(a2.perp(0) == a2.full_set());

  RootSystem b2 = RootSystem::build('B', 2);
  int d = b2.index_of({1, -1});
  RootSet s = set_insert(set_insert(0, d), b2.negative_of(d));
  int p = b2.index_of({1, 1});
  RootSet expect = set_insert(set_insert(0, p), b2.negative_of(p));
  CHECK(b2.perp(s) == expect);
}

TEST_CASE("Z-closed and Q-closed examples") {
  RootSystem a2 = RootSystem::build('A', 2);
  int a = a2.simple_indices()[0], b = a2.simple_indices()[1];
  RootSet pm_alpha = set_insert(set_insert(0, a), a2.negative_of(a));
  CHECK(a2.is_Q_closed(pm_alpha));
  CHECK(a2.is_Z_closed(pm_alpha));
  RootSet positive = set_insert(set_insert(set_insert(0, a), b), a2.sum_index(a, b));
  CHECK(a2.is_Z_closed(positive));
  CHECK_FALSE(a2.is_Q_closed(positive));
  CHECK(a2.is_Z_closed(a2.full_set()));
  CHECK(a2.is_Q_closed(a2.full_set()));
}

TEST_CASE("perp lemma: monotone, S in S-perp-perp, triple perp") {
  auto check_system = [](const RootSystem& rs, const std::vector<RootSet>& subsets) {
    for (RootSet s : subsets) {
      RootSet sp = rs.perp(s);
      RootSet spp = rs.perp(sp);
      CHECK((s & spp) == s);                // S subset of S-perp-perp
      CHECK(rs.perp(spp) == sp);            // triple perp
      CHECK(rs.is_Z_closed(sp));            // cor.pcl
      for (RootSet t : subsets)
        if ((s & t) == s) CHECK((rs.perp(t) & sp) == rs.perp(t));  // monotone
      if (rs.is_Q_closed(s)) CHECK(rs.is_Z_closed(s));
    }
  };
  for (char t : {'A', 'B'}) {
    RootSystem rs = RootSystem::build(t, 2);
    std::vector<RootSet> all;
    for (RootSet s = 0; s <= rs.full_set(); ++s) all.push_back(s);
    // exhaustive over all subsets, but the pairwise monotonicity sweep is
    // quadratic, so sample the pairs from a deterministic stride
    std::vector<RootSet> sampled;
    for (size_t i = 0; i < all.size(); i += 7) sampled.push_back(all[i]);
    check_system(rs, sampled);
  }
  std::mt19937_64 rng(99);
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'D', 4}, {'G', 2}}) {
    RootSystem rs = RootSystem::build(t, r);
    std::vector<RootSet> subsets;
    for (int i = 0; i < 40; ++i) subsets.push_back(random_subset(rs, rng));
    check_system(rs, subsets);
  }
}

TEST_CASE("Weyl group orders and action") {
  RootSystem a2 = RootSystem::build('A', 2);
  CHECK(a2.weyl_elements().size() == 6);
  RootSystem b2 = RootSystem::build('B', 2);
  CHECK(b2.weyl_elements().size() == 8);
  CHECK(RootSystem::build('G', 2).weyl_elements().size() == 12);
  CHECK(RootSystem::build('D', 4).weyl_elements().size() == 192);
  CHECK_THROWS(RootSystem::build('A', 4).weyl_elements(10));

  RootFunction f(a2);
  for (int i = 0; i < a2.num_roots(); ++i) f.at(i) = i * i - 2;
  CHECK(act(a2, a2.identity_elt(), f) == f);

  // action preserves strong orthogonality and the sum table
  for (const WeylElement& w : b2.weyl_elements()) {
    for (int i = 0; i < b2.num_roots(); ++i) {
      CHECK(w.perm[b2.negative_of(i)] == b2.negative_of(w.perm[i]));
      for (int j = 0; j < b2.num_roots(); ++j) {
        CHECK(b2.strongly_orthogonal(i, j) ==
              b2.strongly_orthogonal(w.perm[i], w.perm[j]));
        int s = b2.sum_index(i, j);
        int ws = b2.sum_index(w.perm[i], w.perm[j]);
        CHECK((s < 0 ? -1 : w.perm[s]) == ws);
      }
    }
  }
}
