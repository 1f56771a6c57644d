#include <random>

#include "doctest.h"
#include "rvl/springer.hpp"

using namespace rvl;

namespace {

RatFunc mono(long c, int k) { return RatFunc::monomial(Rat(c), k); }

ChevalleyElement cartan_elt(const ChevalleyBasis& cb, const std::vector<RatFunc>& h) {
  ChevalleyElement u(cb);
  u.h = h;
  return u;
}

ChevalleyElement from_lie(const ChevalleyBasis& cb, const LieElement& v) {
  ChevalleyElement u(cb);
  RatFunc acc;
  for (int k = 0; k < cb.rank(); ++k) {
    acc += v.cartan[k];
    u.h[k] = acc;
  }
  for (int a = 0; a < cb.rs.num_roots(); ++a) u.root_coeff[a] = v.root_coeff[a];
  return u;
}

}  // namespace

TEST_CASE("chevalley realization and ad matrices") {
  ChevalleyBasis sl2(2);
  CHECK(sl2.dim() == 3);

  // u = eps H: alpha(u) = +-2 eps, one zero eigenvalue
  ChevalleyElement u = cartan_elt(sl2, {mono(1, 1)});
  CHECK(newton_point(ad_matrix(u)).str() == "(1, 1, inf)");

  CHECK(newton_point(ad_matrix(ChevalleyElement(sl2))).str() == "(inf, inf, inf)");
  ChevalleyElement e(sl2);
  e.root_coeff[0] = mono(1, 0);
  CHECK(newton_point(ad_matrix(e)).str() == "(inf, inf, inf)");

  // round trip through the matrix realization
  ChevalleyBasis sl3(3);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-3, 3);
  std::uniform_int_distribution<int> k(-1, 2);
  for (int trial = 0; trial < 25; ++trial) {
    ChevalleyElement a(sl3), b(sl3);
    for (int i = 0; i < 2; ++i) {
      a.h[i] = mono(c(rng), k(rng));
      b.h[i] = mono(c(rng), k(rng));
    }
    for (int i = 0; i < 6; ++i) {
      a.root_coeff[i] = mono(c(rng), k(rng));
      b.root_coeff[i] = mono(c(rng), k(rng));
    }
    CHECK(to_matrix(from_matrix(sl3, to_matrix(a))) == to_matrix(a));
    // ad is a Lie-algebra map: ad([a,b]) = [ad a, ad b]
    ChevalleyElement br = from_matrix(sl3, bracket(to_matrix(a), to_matrix(b)));
    CHECK(ad_matrix(br) == bracket(ad_matrix(a), ad_matrix(b)));
  }
}

TEST_CASE("parahoric lattices from apartment points") {
  ChevalleyBasis sl2(2);
  GradedLattice k0 = parahoric_lattice(sl2, ApartmentPoint{{Rat(0)}});
  CHECK(k0.lambda == RootFunction(sl2.rs, 0));
  CHECK(lattice_equal(chevalley_lattice(sl2, k0), MatrixLattice::standard(3)));

  GradedLattice iw = parahoric_lattice(sl2, ApartmentPoint{{rat(1, 2)}});
  int pos = sl2.rs.index_of({1, -1});
  CHECK(iw.lambda(pos) == 1);
  CHECK(iw.lambda(sl2.rs.negative_of(pos)) == 0);

  ChevalleyBasis sl3(3);
  GradedLattice kx = parahoric_lattice(sl3, ApartmentPoint{{rat(1, 3), rat(1, 3)}});
  int a12 = sl3.rs.index_of({1, -1, 0});
  int a13 = sl3.rs.index_of({1, 0, -1});
  CHECK(kx.lambda(a12) == 1);
  CHECK(kx.lambda(a13) == 1);
  CHECK(kx.lambda(sl3.rs.negative_of(a13)) == 0);
}

TEST_CASE("lattice conjugation by group words") {
  ChevalleyBasis sl2(2);
  MatrixLattice l0 = chevalley_lattice(sl2, parahoric_lattice(sl2, ApartmentPoint{{Rat(0)}}));

  CHECK(lattice_equal(conjugate_lattice(sl2, GroupWord(2), l0), l0));

  // diagonal eps powers shift each root line by the pairing with mu
  GroupWord t(2);
  t.diag_eps({1, -1});
  MatrixLattice shifted = conjugate_lattice(sl2, t, l0);
  RootFunction lam(sl2.rs);
  int pos = sl2.rs.index_of({1, -1});
  lam.at(pos) = 2;  // <alpha, mu> = 1 - (-1)
  lam.at(sl2.rs.negative_of(pos)) = -2;
  CHECK(lattice_equal(shifted, chevalley_lattice(sl2, graded_with_cartan_shift(sl2.rs, lam, 0))));

  // a permutation permutes the root lines of an Iwahori
  MatrixLattice iw = chevalley_lattice(sl2, parahoric_lattice(sl2, ApartmentPoint{{rat(1, 2)}}));
  GroupWord w(2);
  w.permutation({1, 0});
  RootFunction swapped(sl2.rs);
  swapped.at(pos) = 0;
  swapped.at(sl2.rs.negative_of(pos)) = 1;
  CHECK(lattice_equal(conjugate_lattice(sl2, w, iw),
                      chevalley_lattice(sl2, graded_with_cartan_shift(sl2.rs, swapped, 0))));
}

TEST_CASE("r-tilde") {
  ChevalleyBasis sl2(2);
  CHECK(r_tilde(sl2, RootFunction(sl2.rs, 1)).str() == "(1, 1, inf)");
  CHECK(r_tilde(sl2, RootFunction(sl2.rs, 0)).str() == "(0, 0, inf)");

  ChevalleyBasis sl3(3);
  RootFunction r(sl3.rs, 1);
  r.set_symmetric(sl3.rs.index_of({1, -1, 0}), 2);
  CHECK(r_tilde(sl3, r).str() == "(1, 1, 1, 1, 2, 2, inf, inf)");
}

TEST_CASE("springer membership") {
  ChevalleyBasis sl2(2);
  RootFunction r1(sl2.rs, 1);
  ChevalleyElement u = cartan_elt(sl2, {mono(1, 1)});  // alpha(u) = 2 eps

  for (Rat xc : {Rat(0), rat(1, 2), Rat(1)}) {
    MatrixLattice kx = chevalley_lattice(sl2, parahoric_lattice(sl2, ApartmentPoint{{xc}}));
    CHECK(springer_member(u, kx, r1));
    // apartment lattices meet the bound with termwise equality
    CHECK(hodge_point(ad_matrix(u), kx) == r_tilde(sl2, r1));
  }

  // an off-apartment conjugate picks up a low-valuation root component
  MatrixLattice k0 = chevalley_lattice(sl2, parahoric_lattice(sl2, ApartmentPoint{{Rat(0)}}));
  GroupWord bad(2);
  bad.elementary(0, 1, mono(1, -2));
  MatrixLattice moved = conjugate_lattice(sl2, bad, k0);
  CHECK_FALSE(springer_member(u, moved, r1));

  // u = 0 with r = 0: ad vanishes, every Hodge entry infinite
  CHECK(springer_member(ChevalleyElement(sl2), moved, RootFunction(sl2.rs, 0)));

  // the two readings of the bound agree (prefix form vs dominance vs r-tilde)
  for (const MatrixLattice& l : {k0, moved}) {
    QTuple mu = hodge_point(ad_matrix(u), l);
    CHECK(springer_member(u, l, r1) == dominance_geq(r_tilde(sl2, r1), mu));
  }

  // SNF and minor paths agree
  CHECK(springer_member(u, moved, r1, HodgeAlgorithm::snf) ==
        springer_member(u, moved, r1, HodgeAlgorithm::minors));
}

TEST_CASE("compatibility with the split torus") {
  ChevalleyBasis sl2(2);
  MatrixLattice iw = chevalley_lattice(sl2, parahoric_lattice(sl2, ApartmentPoint{{rat(1, 2)}}));
  CHECK(compatible_with_A(sl2, iw));

  GroupWord low(2);
  low.elementary(0, 1, mono(1, -1));  // val below -ceil(alpha(x)) mixes the grading
  CHECK_FALSE(compatible_with_A(sl2, conjugate_lattice(sl2, low, iw)));

  GroupWord inside(2);
  inside.elementary(0, 1, mono(1, 1));  // in K_x: lattice unchanged
  MatrixLattice same = conjugate_lattice(sl2, inside, iw);
  CHECK(lattice_equal(same, iw));
  CHECK(compatible_with_A(sl2, same));
}

TEST_CASE("membership matches apartment compatibility on sampled conjugates") {
  ChevalleyBasis sl2(2);
  RootFunction r1(sl2.rs, 1);
  ChevalleyElement u = stratum_sample(sl2, r1, 5);
  MatrixLattice k0 = chevalley_lattice(sl2, parahoric_lattice(sl2, ApartmentPoint{{Rat(0)}}));
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> expo(-3, 3);
  std::uniform_int_distribution<long> cf(1, 2);
  for (int trial = 0; trial < 25; ++trial) {
    GroupWord g(2);
    g.elementary(trial % 2, 1 - trial % 2, mono(cf(rng), expo(rng)));
    MatrixLattice gl = conjugate_lattice(sl2, g, k0);
    CHECK(springer_member(u, gl, r1) == compatible_with_A(sl2, gl));
  }
}

TEST_CASE("fiber experiment over the apartment") {
  ChevalleyBasis sl2(2);
  RootFunction r1(sl2.rs, 1);
  ChevalleyElement u = cartan_elt(sl2, {mono(1, 1)});
  FibersReport rep = fibers_experiment(sl2, r1, ApartmentPoint{{rat(1, 2)}}, u, 10, 99);
  CHECK(rep.weyl_checked == 14);  // translations [-3,3] times two chamber positions
  CHECK(rep.all_pass());
  CHECK(rep.off_checked == 10);

  // weak equivalence through a Weyl twist on sl3
  ChevalleyBasis sl3(3);
  RootFunction r(sl3.rs, 1);
  r.set_symmetric(sl3.rs.index_of({1, -1, 0}), 2);
  RootFunction wr = act(sl3.rs, sl3.rs.simple_reflection(1), r);
  CHECK(wr != r);
  ChevalleyElement uw = stratum_sample(sl3, wr, 7);
  FibersReport rep3 = fibers_experiment(sl3, r, ApartmentPoint{{rat(1, 3), rat(1, 3)}}, uw, 6,
                                        123, /*bound=*/1);
  CHECK(rep3.all_pass());
  CHECK(rep3.weyl_checked > 0);
  CHECK(rep3.off_checked > 0);

  // precondition: wrong valuations rejected
  ChevalleyElement u0 = cartan_elt(sl2, {mono(1, 2)});
  CHECK_THROWS_AS(fibers_experiment(sl2, r1, ApartmentPoint{{Rat(0)}}, u0, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("stratum samples and Newton multisets") {
  ChevalleyBasis sl2(2);
  RootFunction r2(sl2.rs, 2);
  ChevalleyElement u = stratum_sample(sl2, r2, 42);
  CHECK(nu_finite(u) == std::vector<Rat>{Rat(2), Rat(2)});

  ChevalleyBasis sl3(3);
  RootFunction r(sl3.rs, 1);
  r.set_symmetric(sl3.rs.index_of({1, -1, 0}), 2);
  ChevalleyElement v = stratum_sample(sl3, r, 42);
  CHECK(nu_finite(v) ==
        std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(1), Rat(2), Rat(2)});

  // conjugation leaves the multiset alone
  GroupWord g(3);
  g.elementary(0, 2, mono(3, -1)).elementary(1, 0, mono(1, 0));
  ChevalleyElement vc = from_matrix(sl3, g.g * to_matrix(v) * inverse(g.g));
  CHECK(nu_finite(vc) == nu_finite(v));
}

TEST_CASE("conjugation/density experiment on the big-lattice stratum") {
  for (int n : {2, 3}) {
    ChevalleyBasis cb(n);
    RootFunction r(cb.rs, 1);
    if (n == 3) r.set_symmetric(0, 2);
    if (!is_root_valuation_function(cb.rs, r)) continue;
    GradedLattice big = assemble(big_lattice(cb.rs, r));
    int cap = std::max<long>(big.chain_hi(), big.lambda.max_value()) + 2;

    std::vector<long> sorted;
    for (int a = 0; a < cb.rs.num_roots(); ++a) sorted.push_back(r(a));
    std::sort(sorted.begin(), sorted.end());

    int equal = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      ChevalleyElement u = from_lie(cb, sample_element(big, cap, seed));
      std::vector<Rat> nu = nu_finite(u);
      // closure inequalities: partial sums of nu dominate those of sorted r
      REQUIRE(nu.size() <= sorted.size());
      Rat run_nu(0), run_r(0);
      for (size_t i = 0; i < nu.size(); ++i) {
        run_nu += nu[i];
        run_r += Rat(sorted[i]);
        CHECK(run_nu >= run_r);
      }
      std::vector<Rat> target;
      for (long s : sorted) target.push_back(Rat(s));
      if (nu == target) ++equal;
      ++total;
    }
    CHECK(total == 30);
    CHECK(equal * 100 >= 90 * total);  // genericity: equality in nearly all seeds
  }
}
