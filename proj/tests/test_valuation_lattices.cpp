#include <random>

#include "doctest.h"
#include "rvl/valuation_lattices.hpp"

using namespace rvl;

namespace {

// Positive root: first nonzero coordinate positive.
bool positive(const RootSystem& rs, int a) {
  for (long c : rs.root(a)) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

RootFunction iwahori_lambda(const RootSystem& rs, long base = 0) {
  RootFunction l(rs, base);
  for (int a = 0; a < rs.num_roots(); ++a)
    if (!positive(rs, a)) l.at(a) = base + 1;
  return l;
}

RVLSpec random_spec(const RootSystem& rs, std::mt19937_64& rng) {
  RVLSpec s{&rs, sample_root_valuation_function(rs, rng, 0, 3), RootFunction(rs)};
  std::uniform_int_distribution<long> dk(-1, 2);
  RootFunction k(rs);
  for (int a = 0; a < rs.num_roots(); ++a) k.at(a) = dk(rng);
  s.lambda = s.r + k;
  return s;
}

}  // namespace

TEST_CASE("lattice conditions: pinned examples") {
  RootSystem a2 = RootSystem::build('A', 2);

  // constant r with lambda = r is always a root valuation lattice
  for (long c : {-1L, 0L, 2L}) {
    RVLSpec s{&a2, RootFunction(a2, c), RootFunction(a2, c)};
    CHECK(check_rvl_conditions(s));
    CHECK(is_rvl_via_normalizer(s));
  }

  // constant r with the Iwahori-style lambda
  RVLSpec iw{&a2, RootFunction(a2, 0), iwahori_lambda(a2)};
  CHECK(check_rvl_conditions(iw));
  RootFunction l = normalizer_exponents(iw);
  for (int a = 0; a < a2.num_roots(); ++a)
    CHECK(l(a) == (positive(a2, a) ? 0 : 1));
  CHECK(is_rvl_via_normalizer(iw));

  // B2 with r = 2 on the long roots +-(e1+e2), zero elsewhere: lambda = r
  // violates condition (2) at (e1, e2)
  RootSystem b2 = RootSystem::build('B', 2);
  RootFunction rb(b2, 0);
  rb.set_symmetric(b2.index_of({1, 1}), 2);
  RVLSpec tight{&b2, rb, rb};
  CHECK_FALSE(rvl_condition2(tight));
  CHECK_FALSE(check_rvl_conditions(tight));
  CHECK_FALSE(is_rvl_via_normalizer(tight));

  // r = 1 with the shifted Iwahori-style lambda: normalizer exponents are the
  // plain Iwahori exponents
  RVLSpec iw1{&a2, RootFunction(a2, 1), iwahori_lambda(a2, 1)};
  CHECK(check_rvl_conditions(iw1));
  RootFunction l1 = normalizer_exponents(iw1);
  for (int a = 0; a < a2.num_roots(); ++a)
    CHECK(l1(a) == (positive(a2, a) ? 0 : 1));

  // normalizer of g(O) is g(O)
  RVLSpec triv{&a2, RootFunction(a2, 0), RootFunction(a2, 0)};
  CHECK(normalizer_exponents(triv) == RootFunction(a2, 0));

  // one exponent lowered far below: both recognizers reject
  RVLSpec low{&a2, RootFunction(a2, 0), RootFunction(a2, 0)};
  low.lambda.at(0) = -5;
  CHECK_FALSE(check_rvl_conditions(low));
  CHECK_FALSE(is_rvl_via_normalizer(low));

  // non-root-valuation r rejected
  RootFunction bad(a2, 1);
  bad.set_symmetric(0, 0);  // one pair lowered: level set of 1 is not Q-closed
  if (!is_root_valuation_function(a2, bad))
    CHECK_THROWS_AS(check_rvl_conditions(RVLSpec{&a2, bad, bad}), std::invalid_argument);
}

TEST_CASE("lattice conditions: the two recognizers and both forms of (2) agree") {
  std::mt19937_64 rng(20260826);
  for (auto [t, n] : std::vector<std::pair<char, int>>{
           {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3}, {'G', 2}}) {
    RootSystem rs = RootSystem::build(t, n);
    for (int trial = 0; trial < 40; ++trial) {
      RVLSpec s = random_spec(rs, rng);
      CHECK(rvl_condition2(s) == rvl_condition2_asymmetric(s));
      CHECK(check_rvl_conditions(s) == is_rvl_via_normalizer(s));
    }
  }
}

TEST_CASE("lattice conditions: invariance under constant shift of (r, lambda)") {
  std::mt19937_64 rng(7);
  RootSystem b3 = RootSystem::build('B', 3);
  for (int trial = 0; trial < 15; ++trial) {
    RVLSpec s = random_spec(b3, rng);
    bool base = check_rvl_conditions(s);
    for (long n = -3; n <= 3; ++n) {
      RVLSpec shifted{&b3, s.r + n, s.lambda + n};
      CHECK(check_rvl_conditions(shifted) == base);
    }
  }
}

TEST_CASE("big lattice: pinned exponents") {
  RootSystem b2 = RootSystem::build('B', 2);
  RootFunction rb(b2, 0);
  rb.set_symmetric(b2.index_of({1, 1}), 2);
  RVLSpec big = big_lattice(b2, rb);
  RootFunction k = big.k();
  CHECK(k(b2.index_of({1, 1})) == 0);
  CHECK(k(b2.index_of({-1, -1})) == 0);
  CHECK(k(b2.index_of({1, -1})) == 0);
  CHECK(k(b2.index_of({-1, 1})) == 0);
  CHECK(k(b2.index_of({1, 0})) == 1);
  CHECK(k(b2.index_of({0, 1})) == 1);
  CHECK(k(b2.index_of({-1, 0})) == 1);
  CHECK(k(b2.index_of({0, -1})) == 1);

  // A2, r = 2 on one pair and 1 elsewhere: k1 = 0 on that pair, 1 off it
  RootSystem a2 = RootSystem::build('A', 2);
  RootFunction ra(a2, 1);
  ra.set_symmetric(0, 2);
  RVLSpec biga = big_lattice(a2, ra);
  RootFunction ka = biga.k();
  for (int a = 0; a < a2.num_roots(); ++a)
    CHECK(ka(a) == ((a == 0 || a == a2.negative_of(0)) ? 0 : 1));

  // normalizer exponents of the B2 big lattice reproduce k1
  CHECK(normalizer_exponents(big) == k);

  // constant r: k1 vanishes
  RVLSpec bigc = big_lattice(b2, RootFunction(b2, 3));
  CHECK(bigc.lambda == RootFunction(b2, 3));
}

TEST_CASE("big lattice: always a root valuation lattice, within one of equality") {
  std::mt19937_64 rng(99);
  for (auto [t, n] : std::vector<std::pair<char, int>>{
           {'A', 3}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}}) {
    RootSystem rs = RootSystem::build(t, n);
    RootFunction rm_cache(rs);
    for (int trial = 0; trial < 12; ++trial) {
      RootFunction r = sample_root_valuation_function(rs, rng, 0, 3);
      RVLSpec big = big_lattice(rs, r);
      CHECK(check_rvl_conditions(big));
      CHECK(is_rvl_via_normalizer(big));
      RootFunction k = big.k();
      RootFunction rm = r_m(rs, r);
      for (int a = 0; a < rs.num_roots(); ++a) {
        long slack = k(a) + k(rs.negative_of(a)) - (rm(a) - r(a));
        CHECK(slack >= 0);
        CHECK(slack <= 1);
      }
    }
  }
}

TEST_CASE("big lattice: k1 fault injection is observable") {
  RootSystem b2 = RootSystem::build('B', 2);
  RootFunction rb(b2, 0);
  rb.set_symmetric(b2.index_of({1, 1}), 2);
  mutation::k1_off_by_one = true;
  RVLSpec mutated = big_lattice(b2, rb);
  mutation::k1_off_by_one = false;
  RVLSpec clean = big_lattice(b2, rb);
  CHECK(mutated.lambda != clean.lambda);
  for (int a = 0; a < b2.num_roots(); ++a)
    CHECK(mutated.lambda(a) == clean.lambda(a) + 1);
}

TEST_CASE("graded lattice: assembly of the Cartan chain") {
  RootSystem a2 = RootSystem::build('A', 2);
  RVLSpec flat{&a2, RootFunction(a2, 0), RootFunction(a2, 0)};
  GradedLattice L = assemble(flat);
  CHECK(L.chain_lo == 0);
  CHECK(L.cartan_level(0).rows() == 2);   // full Cartan of A2
  CHECK(L.cartan_level(5).rows() == 2);
  CHECK(cartan_space(a2).rows() == 2);

  // B2, r = 2 on +-(e1+e2): V_0 = V_1 = line e1 - e2, then full
  RootSystem b2 = RootSystem::build('B', 2);
  RootFunction rb(b2, 0);
  rb.set_symmetric(b2.index_of({1, 1}), 2);
  GradedLattice Lb = assemble(big_lattice(b2, rb));
  CHECK(Lb.chain_lo == 0);
  CHECK(Lb.cartan_level(0).rows() == 1);
  CHECK(Lb.cartan_level(1).rows() == 1);
  CHECK(Lb.cartan_level(2).rows() == 2);
  // the level-0 space really is the kernel of e1 + e2
  const QMatrix& v0 = Lb.cartan_level(0);
  CHECK(v0(0, 0) + v0(0, 1) == 0);
}

TEST_CASE("graded lattice: codimension") {
  RootSystem a1 = RootSystem::build('A', 1);
  GradedLattice sl2O = graded_with_cartan_shift(a1, RootFunction(a1, 0), 0);
  GradedLattice lieI = graded_with_cartan_shift(a1, iwahori_lambda(a1), 0);
  CHECK(codimension(lieI, sl2O) == 1);
  CHECK(codimension(sl2O, sl2O) == 0);
  // shifting both by e preserves the codimension
  GradedLattice sl2O1 = graded_with_cartan_shift(a1, RootFunction(a1, 1), 1);
  GradedLattice lieI1 = graded_with_cartan_shift(a1, iwahori_lambda(a1, 1), 1);
  CHECK(codimension(lieI1, sl2O1) == 1);
  CHECK(codimension(sl2O1, sl2O) == 3);  // e sl2(O) inside sl2(O)
  // containment violations are rejected
  CHECK_THROWS_AS(codimension(sl2O, lieI), std::invalid_argument);
  CHECK_THROWS_AS(codimension(sl2O, sl2O1), std::invalid_argument);

  RootSystem b2 = RootSystem::build('B', 2);
  RootFunction rb(b2, 0);
  rb.set_symmetric(b2.index_of({1, 1}), 2);
  GradedLattice Lb = assemble(big_lattice(b2, rb));
  GradedLattice gO = graded_with_cartan_shift(b2, RootFunction(b2, 0), 0);
  CHECK(codimension(Lb, gO) == 10);  // 8 from root lines, 2 from the Cartan chain
}

TEST_CASE("graded lattice: sampled elements are members, deterministically") {
  std::mt19937_64 rng(4242);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'B', 3}}) {
    RootSystem rs = RootSystem::build(t, n);
    for (int trial = 0; trial < 6; ++trial) {
      RootFunction r = sample_root_valuation_function(rs, rng, 0, 2);
      GradedLattice L = assemble(big_lattice(rs, r));
      int cap = std::max<long>(L.chain_hi(), L.lambda.max_value()) + 2;
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        LieElement u = sample_element(L, cap, seed);
        CHECK(lattice_contains(L, u, cap));
        LieElement v = sample_element(L, cap, seed);
        CHECK(u.cartan == v.cartan);
        CHECK(u.root_coeff == v.root_coeff);
      }
    }
  }

  // explicit non-members
  RootSystem b2 = RootSystem::build('B', 2);
  RootFunction rb(b2, 0);
  rb.set_symmetric(b2.index_of({1, 1}), 2);
  GradedLattice Lb = assemble(big_lattice(b2, rb));
  int cap = 4;
  LieElement u = sample_element(Lb, cap, 11);
  int lng = b2.index_of({1, 1});
  u.root_coeff[lng] = RatFunc::uniformizer_pow(static_cast<int>(Lb.lambda(lng)) - 1);
  CHECK_FALSE(lattice_contains(Lb, u, cap));

  LieElement w = sample_element(Lb, cap, 12);
  w.cartan[0] += RatFunc(Rat(1));  // e1 direction at level 0 escapes V_0
  CHECK_FALSE(lattice_contains(Lb, w, cap));

  LieElement z = sample_element(Lb, cap, 13);
  z.cartan[0] += RatFunc::uniformizer_pow(-1);  // below the chain entirely
  z.cartan[1] -= RatFunc::uniformizer_pow(-1);
  CHECK_FALSE(lattice_contains(Lb, z, cap));
}
