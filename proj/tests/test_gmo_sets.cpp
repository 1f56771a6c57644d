#include "doctest.h"
#include "rvl/gmo_sets.hpp"

using namespace rvl;

namespace {

// x_B = +c*gamma^vee on chambers where gamma is positive, -c*gamma^vee
// otherwise: the canonical nonconstant family coming from M = {+-gamma}.
GAOrthSet sign_family(const RootSystem& rs, int gamma, const Rat& c) {
  GAOrthSet x;
  x.rs = &rs;
  for (const WeylElement& w : rs.weyl_elements()) {
    Rat s = positive_for(rs, w, gamma) ? c : -c;
    x.points[w.perm] = s * rs.coroot(gamma);
  }
  return x;
}

}  // namespace

TEST_CASE("dominant vector and vector-level Weyl action") {
  for (auto [t, r] : {std::pair{'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}}) {
    RootSystem rs = RootSystem::build(t, r);
    QVec v = dominant_regular(rs);
    int positives = 0;
    for (int a = 0; a < rs.num_roots(); ++a) {
      CHECK(pair_with(rs, a, v) != Rat(0));
      if (pair_with(rs, a, v) > Rat(0)) ++positives;
    }
    CHECK(positives * 2 == rs.num_roots());
    // the vector action matches the root permutation
    for (const WeylElement& w : rs.weyl_elements())
      for (int a = 0; a < rs.num_roots(); ++a) {
        QVec rv(rs.ambient_dim());
        for (int j = 0; j < rs.ambient_dim(); ++j) rv[j] = Rat(rs.root(a)[j]);
        QVec img = weyl_act_vec(rs, w, rv);
        for (int j = 0; j < rs.ambient_dim(); ++j)
          CHECK(img[j] == Rat(rs.root(w.perm[a])[j]));
      }
  }
}

TEST_CASE("positive orthogonality") {
  RootSystem a1 = RootSystem::build('A', 1);
  int alpha = a1.index_of({1, -1});
  for (long c : {0L, 2L, -1L}) {
    GAOrthSet x;
    x.rs = &a1;
    // two chambers: identity (alpha > 0) and the reflection
    for (const WeylElement& w : a1.weyl_elements())
      x.points[w.perm] = positive_for(a1, w, alpha)
                             ? Rat(c) * a1.coroot(alpha)
                             : QVec(a1.ambient_dim(), Rat(0));
    CHECK(is_positive_orthogonal(x) == (c >= 0));
  }

  RootSystem a2 = RootSystem::build('A', 2);
  QVec v = dominant_regular(a2);
  CHECK(is_positive_orthogonal(constant_family(a2, v)));
  CHECK(is_positive_orthogonal(orbit_family(a2, v)));

  // a perturbed chamber breaks collinearity, with a diagnostic
  GAOrthSet bad = orbit_family(a2, v);
  bad.points.begin()->second[0] += rat(1, 7);
  std::string diag;
  CHECK_FALSE(is_positive_orthogonal(bad, &diag));
  CHECK(diag == "difference not collinear with the separating coroot");

  // antidominant orbit: coefficients all negative
  CHECK_FALSE(is_positive_orthogonal(orbit_family(a2, Rat(-1) * v)));
}

TEST_CASE("parabolic types and the associated family") {
  RootSystem a2 = RootSystem::build('A', 2);
  GAOrthSet x = orbit_family(a2, dominant_regular(a2));

  LeviSpec empty = LeviSpec::make(a2, 0);
  CHECK(parabolic_types(a2, empty).size() == a2.weyl_elements().size());
  std::map<RootSet, QVec> yfull = associated_GM_set(x, empty);
  for (const WeylElement& w : a2.weyl_elements())
    CHECK(yfull.at(parabolic_of(a2, empty, w)) == x.at(w));

  LeviSpec whole = LeviSpec::make(a2, a2.full_set());
  CHECK(parabolic_types(a2, whole).size() == 1);
  CHECK(associated_GM_set(x, whole).size() == 1);

  int alpha = a2.index_of({1, -1, 0});
  RootSet pair = set_insert(set_insert(RootSet(0), alpha), a2.negative_of(alpha));
  CHECK(parabolic_types(a2, LeviSpec::make(a2, pair)).size() == 2);

  CHECK_THROWS_AS(LeviSpec::make(a2, set_insert(RootSet(0), alpha)),
                  std::invalid_argument);
}

TEST_CASE("recognition lemma: pinned families") {
  RootSystem a2 = RootSystem::build('A', 2);
  int alpha = a2.index_of({1, -1, 0});
  LeviSpec m = LeviSpec::make(
      a2, set_insert(set_insert(RootSet(0), alpha), a2.negative_of(alpha)));

  // constant families come from every Levi
  GAOrthSet cst = constant_family(a2, {Rat(1), Rat(0), rat(-1, 2)});
  for (const LeviSpec& levi : all_levis(a2)) {
    GmoVerdicts v = comes_from_M(cst, levi);
    CHECK(v.all_equal());
    CHECK(v.ok());
  }

  // nonconstant family moving only across the +-alpha walls: all five true
  GAOrthSet sgn = sign_family(a2, alpha, Rat(2));
  REQUIRE(is_positive_orthogonal(sgn));
  GmoVerdicts good = comes_from_M(sgn, m);
  CHECK(good.all_equal());
  CHECK(good.ok());

  // generic dominant orbit: moves across every wall, all five false
  GmoVerdicts badv = comes_from_M(orbit_family(a2, dominant_regular(a2)), m);
  CHECK(badv.all_equal());
  CHECK_FALSE(badv.ok());
}

TEST_CASE("recognition lemma: randomized equivalence sweep") {
  for (auto [t, r] : {std::pair{'A', 2}, {'B', 2}, {'A', 3}, {'G', 2}}) {
    RootSystem rs = RootSystem::build(t, r);
    std::vector<LeviSpec> levis = all_levis(rs);
    CHECK(levis.size() >= 3);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      GAOrthSet x = random_positive(rs, 1 + static_cast<int>(seed % 3), seed);
      for (const LeviSpec& m : levis) {
        GmoVerdicts v = comes_from_M(x, m);
        CHECK(v.all_equal());
        // negative-set variant: verdicts on -x match those on x
        GmoVerdicts vn = comes_from_M(negate(x), m);
        CHECK(vn.induced_from_levi == v.induced_from_levi);
        CHECK(vn.projections_equal == v.projections_equal);
        CHECK(vn.images_equal == v.images_equal);
        CHECK(vn.opposite_pair_equal == v.opposite_pair_equal);
        CHECK(vn.walls_outside_levi == v.walls_outside_levi);
      }
    }
  }
}

TEST_CASE("Minkowski sums") {
  RootSystem b2 = RootSystem::build('B', 2);
  int gamma = b2.index_of({1, 0});  // short root; {+-gamma} is Q-closed
  LeviSpec m = LeviSpec::make(
      b2, set_insert(set_insert(RootSet(0), gamma), b2.negative_of(gamma)));

  GAOrthSet a = sign_family(b2, gamma, Rat(1));
  GAOrthSet b = sign_family(b2, gamma, rat(3, 2));
  GAOrthSet c = constant_family(b2, {Rat(2), Rat(-1)});
  REQUIRE(comes_from_M(a, m).ok());
  REQUIRE(comes_from_M(b, m).ok());

  for (const GAOrthSet& s : {a + b, a + c}) {
    CHECK(is_positive_orthogonal(s));
    GmoVerdicts v = comes_from_M(s, m);
    CHECK(v.all_equal());
    CHECK(v.ok());
  }

  // summing with a family that does not come from M destroys the property
  GAOrthSet mixed = a + orbit_family(b2, dominant_regular(b2));
  CHECK(is_positive_orthogonal(mixed));
  GmoVerdicts v = comes_from_M(mixed, m);
  CHECK(v.all_equal());
  CHECK_FALSE(v.ok());
}

TEST_CASE("random positive families") {
  RootSystem a2 = RootSystem::build('A', 2);
  GAOrthSet z = random_positive(a2, 0, 5);
  const QVec& v0 = z.points.begin()->second;
  for (const auto& [k, v] : z.points) CHECK(v == v0);

  GAOrthSet x = random_positive(a2, 2, 99);
  GAOrthSet y = random_positive(a2, 2, 99);
  CHECK(x.points == y.points);
  CHECK(random_positive(a2, 2, 100).points != x.points);
  CHECK(is_positive_orthogonal(x));
}
