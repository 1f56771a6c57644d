#ifndef RVL_HODGE_NEWTON_HPP
#define RVL_HODGE_NEWTON_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "rvl/linalg.hpp"
#include "rvl/mutation.hpp"
#include "rvl/qtuple.hpp"

namespace rvl {

/// O-lattice in F^d presented by a basis matrix of full column rank
/// (square and invertible for a full lattice).
struct MatrixLattice {
  FMatrix basis;

  explicit MatrixLattice(FMatrix b) : basis(std::move(b)) {
    if (rank(basis) != basis.cols())
      throw std::invalid_argument("lattice basis has dependent columns");
  }
  static MatrixLattice standard(size_t d) { return MatrixLattice(FMatrix::identity(d)); }
  size_t dim() const { return basis.rows(); }
  size_t lattice_rank() const { return basis.cols(); }
};

/// F-subspace of F^d presented by a full-column-rank basis matrix.
struct Subspace {
  FMatrix basis;

  explicit Subspace(FMatrix b) : basis(std::move(b)) {
    if (rank(basis) != basis.cols())
      throw std::invalid_argument("subspace basis has dependent columns");
  }
  size_t dim() const { return basis.cols(); }
};

/// Eigenvalue valuations of T, read off the Newton polygon of its
/// characteristic polynomial.  Trailing zero coefficients (zero eigenvalues)
/// contribute infinite slopes.  Non-decreasing.
inline QTuple newton_point(const FMatrix& t) {
  std::vector<RatFunc> a = char_poly(t);
  size_t d = a.size() - 1;
  // last index with nonzero coefficient; everything past it is an inf slope
  size_t m = 0;
  for (size_t i = 0; i <= d; ++i)
    if (!a[i].is_zero()) m = i;
  // lower convex hull of (i, val a_i), i = 0..m, by monotone chain
  std::vector<std::pair<long, Rat>> pts;
  for (size_t i = 0; i <= m; ++i)
    if (!a[i].is_zero()) pts.emplace_back(static_cast<long>(i), Rat(a[i].order()));
  std::vector<std::pair<long, Rat>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& q = hull[hull.size() - 1];
      const auto& o = hull[hull.size() - 2];
      // drop q if it lies on or above segment o-p
      if ((q.second - o.second) * Rat(p.first - o.first) >=
          (p.second - o.second) * Rat(q.first - o.first))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<ExtRat> slopes;
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    long run = hull[s + 1].first - hull[s].first;
    Rat slope = (hull[s + 1].second - hull[s].second) / Rat(run);
    for (long k = 0; k < run; ++k) slopes.push_back(ExtRat(slope));
  }
  while (slopes.size() < d) slopes.push_back(ExtRat::infinity());
  return QTuple(std::move(slopes));
}

namespace detail {
inline void minors_rec(const FMatrix& m, size_t k, size_t start, std::vector<size_t>& rows,
                       std::vector<size_t>& cols, bool picking_rows, ExtRat& best) {
  if (picking_rows) {
    if (rows.size() == k) {
      cols.clear();
      minors_rec(m, k, 0, rows, cols, false, best);
      return;
    }
    for (size_t i = start; i < m.rows(); ++i) {
      rows.push_back(i);
      minors_rec(m, k, i + 1, rows, cols, true, best);
      rows.pop_back();
    }
    return;
  }
  if (cols.size() == k) {
    RatFunc d = det(m.submatrix(rows, cols));
    ExtRat v = d.val();
    if (v < best) best = v;
    return;
  }
  for (size_t j = start; j < m.cols(); ++j) {
    cols.push_back(j);
    minors_rec(m, k, j + 1, rows, cols, false, best);
    cols.pop_back();
  }
}
}  // namespace detail

/// Minimum valuation over all k x k minors.
inline ExtRat min_minor_valuation(const FMatrix& m, size_t k) {
  if (k == 0) return ExtRat(Rat(0));
  ExtRat best = ExtRat::infinity();
  std::vector<size_t> rows, cols;
  detail::minors_rec(m, k, 0, rows, cols, true, best);
  return best;
}

/// Hodge point mu(T, L): partial sums mu_1+...+mu_i equal the minimum
/// valuation over i x i minors of T written in an O-basis of L.
inline QTuple hodge_point(const FMatrix& t, const MatrixLattice& l) {
  if (l.basis.rows() != l.basis.cols())
    throw std::invalid_argument("hodge_point: lattice must have full rank");
  FMatrix m = inverse(l.basis) * t * l.basis;
  size_t d = m.rows();
  std::vector<ExtRat> sums(d + 1, ExtRat(Rat(0)));
  for (size_t i = 1; i <= d; ++i) {
    sums[i] = min_minor_valuation(m, i);
    if (mutation::minor_sum_off_by_one && !sums[i].is_infinite())
      sums[i] = sums[i] + ExtRat(Rat(1));
  }
  std::vector<ExtRat> mu;
  for (size_t i = 1; i <= d; ++i) {
    if (sums[i].is_infinite())
      mu.push_back(ExtRat::infinity());
    else
      mu.push_back(ExtRat(sums[i].value() - sums[i - 1].value()));
  }
  return QTuple(std::move(mu));
}

/// Same invariants via the Smith normal form over O: the cross-check oracle.
inline QTuple hodge_point_snf(const FMatrix& t, const MatrixLattice& l) {
  FMatrix m = inverse(l.basis) * t * l.basis;
  return QTuple(smith_valuations(m), true);
}

/// Mazur's inequality nu(T) <= mu(T, L), i.e. the Hodge point dominates.
inline bool mazur_check(const FMatrix& t, const MatrixLattice& l) {
  return dominance_geq(hodge_point(t, l), newton_point(t));
}

inline bool lattice_member(const std::vector<RatFunc>& v, const MatrixLattice& l) {
  if (l.basis.rows() != l.basis.cols())
    throw std::invalid_argument("lattice_member: full-rank lattice required");
  std::vector<RatFunc> coords = inverse(l.basis).apply(v);
  for (const RatFunc& c : coords)
    if (!c.is_integral()) return false;
  return true;
}

/// Diagonalization M * Qinv = P * D with P, Qinv invertible over O
/// (unimodular); D diagonal with the nonzero entries first.
struct SmithTransforms {
  FMatrix d, p, qinv;
  size_t rk = 0;
};

inline SmithTransforms smith_decompose(FMatrix m) {
  SmithTransforms out{m, FMatrix::identity(m.rows()), FMatrix::identity(m.cols()), 0};
  FMatrix& d = out.d;
  FMatrix& p = out.p;
  FMatrix& qinv = out.qinv;
  size_t n = std::min(d.rows(), d.cols());
  size_t top = 0;
  while (top < n) {
    bool found = false;
    size_t pi = 0, pj = 0;
    int best = 0;
    for (size_t i = top; i < d.rows(); ++i)
      for (size_t j = top; j < d.cols(); ++j) {
        if (d(i, j).is_zero()) continue;
        int v = d(i, j).order();
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    if (pi != top)
      for (size_t j = 0; j < d.cols(); ++j) std::swap(d(pi, j), d(top, j));
    if (pi != top)
      for (size_t j = 0; j < p.cols(); ++j) std::swap(p(pi, j), p(top, j));
    if (pj != top) {
      for (size_t i = 0; i < d.rows(); ++i) std::swap(d(i, pj), d(i, top));
      for (size_t i = 0; i < qinv.rows(); ++i) std::swap(qinv(i, pj), qinv(i, top));
    }
    const RatFunc piv = d(top, top);
    for (size_t i = top + 1; i < d.rows(); ++i) {
      if (d(i, top).is_zero()) continue;
      RatFunc f = d(i, top) / piv;  // integral: pivot has minimal valuation
      for (size_t j = 0; j < d.cols(); ++j) d(i, j) -= f * d(top, j);
      // row op E on D compensated by P <- P E^{-1}: col top of P += f * col i
      for (size_t r2 = 0; r2 < p.rows(); ++r2) p(r2, top) += f * p(r2, i);
    }
    for (size_t j = top + 1; j < d.cols(); ++j) {
      if (d(top, j).is_zero()) continue;
      RatFunc f = d(top, j) / piv;
      for (size_t i = 0; i < d.rows(); ++i) d(i, j) -= f * d(i, top);
      for (size_t i = 0; i < qinv.rows(); ++i) qinv(i, j) -= f * qinv(i, top);
    }
    ++top;
  }
  out.rk = top;
  return out;
}

/// O-lattice L ∩ U, returned with a basis of rank dim(U).
inline MatrixLattice intersect_subspace(const MatrixLattice& l, const Subspace& u) {
  if (l.basis.rows() != l.basis.cols())
    throw std::invalid_argument("intersect_subspace: full-rank lattice required");
  size_t d = l.dim();
  size_t r = u.dim();
  FMatrix binv = inverse(l.basis);
  FMatrix c = binv * u.basis;  // subspace in lattice coordinates, d x r
  // rows annihilating the column span of c
  FMatrix ct(r, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < r; ++j) ct(j, i) = c(i, j);
  FMatrix red = rref(ct);
  std::vector<bool> is_pivot(d, false);
  {
    size_t r2 = 0;
    for (size_t col = 0; col < d && r2 < red.rows(); ++col) {
      if (red(r2, col).is_zero()) continue;
      is_pivot[col] = true;
      ++r2;
    }
  }
  FMatrix a(d - r, d);  // left kernel rows: v_free determined by pivot coords
  {
    size_t row = 0;
    for (size_t col = 0; col < d; ++col) {
      if (is_pivot[col]) continue;
      a(row, col) = RatFunc(Rat(1));
      size_t r2 = 0;
      for (size_t pc = 0; pc < d && r2 < red.rows(); ++pc) {
        if (!is_pivot[pc]) continue;
        a(row, pc) = RatFunc() - red(r2, col);
        ++r2;
      }
      ++row;
    }
  }
  // v in O^d with a v = 0: a = P D Q, so v = Qinv y with y in O^d and the
  // first rank(a) coordinates of y equal to zero
  SmithTransforms s = smith_decompose(a);
  if (s.rk != d - r) throw std::logic_error("intersect_subspace: rank mismatch");
  FMatrix sol(d, r);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < r; ++j) sol(i, j) = s.qinv(i, d - r + j);
  return MatrixLattice(l.basis * sol);
}

/// Equality of two full O-lattices by mutual containment of bases.
inline bool lattice_equal(const MatrixLattice& a, const MatrixLattice& b) {
  if (a.dim() != b.dim() || a.basis.cols() != b.basis.cols()) return false;
  if (a.basis.rows() != a.basis.cols())
    throw std::invalid_argument("lattice_equal: full-rank lattices required");
  FMatrix m = inverse(b.basis) * a.basis;
  FMatrix w = inverse(a.basis) * b.basis;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integral() || !w(i, j).is_integral()) return false;
  return true;
}

/// L = L1 (+) L2 as O-modules.
inline bool direct_sum_equal(const MatrixLattice& l, const MatrixLattice& l1,
                             const MatrixLattice& l2) {
  size_t d = l.dim();
  if (l1.lattice_rank() + l2.lattice_rank() != d)
    throw std::invalid_argument("direct_sum_equal: ranks are not complementary");
  FMatrix c(d, d);
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < l1.lattice_rank(); ++j) c(i, j) = l1.basis(i, j);
    for (size_t j = 0; j < l2.lattice_rank(); ++j)
      c(i, l1.lattice_rank() + j) = l2.basis(i, j);
  }
  if (det(c).is_zero()) return false;
  return lattice_equal(l, MatrixLattice(c));
}

/// T restricted to an invariant subspace, in the coordinates of its basis.
inline FMatrix restrict_map(const FMatrix& t, const Subspace& u) {
  FMatrix tu = t * u.basis;
  // solve u.basis * x = tu; the Gram matrix is invertible over the ordered
  // field Q(e) because the basis has full column rank
  size_t r = u.dim();
  FMatrix ut(r, t.rows());
  for (size_t i = 0; i < t.rows(); ++i)
    for (size_t j = 0; j < r; ++j) ut(j, i) = u.basis(i, j);
  FMatrix gram = ut * u.basis;
  FMatrix x = inverse(gram) * (ut * tu);
  if (!(u.basis * x == tu))
    throw std::invalid_argument("restrict_map: subspace is not invariant");
  return x;
}

inline bool subspace_invariant(const FMatrix& t, const Subspace& u) {
  size_t d = t.rows();
  size_t r = u.dim();
  FMatrix both(d, 2 * r);
  FMatrix tu = t * u.basis;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < r; ++j) {
      both(i, j) = u.basis(i, j);
      both(i, r + j) = tu(i, j);
    }
  return rank(both) == r;
}

/// The linear Hodge-Newton decomposition: with T-invariant complementary
/// subspaces U, W, slopes on U strictly below those on W, and the first
/// dim(U) Hodge and Newton partial sums equal, the lattice splits as
/// L = (L ∩ U) (+) (L ∩ W).  Hypotheses are verified; violations throw with
/// the failing hypothesis named.
inline bool hn_decompose_check(const FMatrix& t, const MatrixLattice& l, const Subspace& u,
                               const Subspace& w) {
  size_t d = t.rows();
  if (u.dim() + w.dim() != d)
    throw std::invalid_argument("hn_decompose: U and W do not have complementary dimensions");
  {
    FMatrix both(d, d);
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < u.dim(); ++j) both(i, j) = u.basis(i, j);
      for (size_t j = 0; j < w.dim(); ++j) both(i, u.dim() + j) = w.basis(i, j);
    }
    if (det(both).is_zero())
      throw std::invalid_argument("hn_decompose: U + W is not all of V");
  }
  if (!subspace_invariant(t, u)) throw std::invalid_argument("hn_decompose: TU not inside U");
  if (!subspace_invariant(t, w)) throw std::invalid_argument("hn_decompose: TW not inside W");
  QTuple nu_u = newton_point(restrict_map(t, u));
  QTuple nu_w = newton_point(restrict_map(t, w));
  if (nu_u.size() > 0 && nu_w.size() > 0 &&
      !(nu_u[nu_u.size() - 1] < nu_w[0]))
    throw std::invalid_argument("hn_decompose: slopes on U not strictly below slopes on W");
  size_t r = u.dim();
  QTuple mu = hodge_point(t, l);
  QTuple nu = newton_point(t);
  if (mu.partial_sum(r) != nu.partial_sum(r))
    throw std::invalid_argument("hn_decompose: Hodge and Newton partial sums differ at dim U");
  MatrixLattice lu = intersect_subspace(l, u);
  MatrixLattice lw = intersect_subspace(l, w);
  return direct_sum_equal(l, lu, lw);
}

/// (1 - T) L = L when T preserves L and all slopes of T are strictly
/// positive; hypotheses verified.
inline bool one_minus_T_check(const FMatrix& t, const MatrixLattice& l) {
  FMatrix m = inverse(l.basis) * t * l.basis;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integral())
        throw std::invalid_argument("one_minus_T: T does not preserve the lattice");
  QTuple nu = newton_point(t);
  for (size_t i = 0; i < nu.size(); ++i)
    if (!(ExtRat(Rat(0)) < nu[i]))
      throw std::invalid_argument("one_minus_T: slope not strictly positive");
  FMatrix om = FMatrix::identity(m.rows()) - m;
  MatrixLattice image(l.basis * om);
  return lattice_equal(image, l);
}

/// Stability of the first i Hodge partial sums under perturbation by
/// c * id for c of sufficiently large valuation.
inline bool perturbation_stability(const FMatrix& t, const MatrixLattice& l, size_t i,
                                   int trials) {
  QTuple mu = hodge_point(t, l);
  ExtRat target = mu.partial_sum(i);
  if (target.is_infinite())
    throw std::invalid_argument("perturbation_stability: infinite partial sum");
  long bound = 0;
  for (size_t j = 1; j <= i; ++j) {
    Rat s = abs(mu.partial_sum(j).value());
    long c = static_cast<long>(mpz_class(s.get_num() / s.get_den() + 1).get_si());
    bound = std::max(bound, c);
  }
  for (int trial = 0; trial < trials; ++trial) {
    int n = static_cast<int>(bound) + 2 + trial;
    FMatrix pert = t + FMatrix::identity(t.rows()) * RatFunc::uniformizer_pow(n);
    QTuple mup = hodge_point(pert, l);
    for (size_t j = 1; j <= i; ++j)
      if (mup.partial_sum(j) != mu.partial_sum(j)) return false;
  }
  return true;
}

}  // namespace rvl

#endif
