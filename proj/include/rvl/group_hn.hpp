#ifndef RVL_GROUP_HN_HPP
#define RVL_GROUP_HN_HPP

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvl/hodge_newton.hpp"

namespace rvl {

/// Standard block Levi of GL_n: ordered block sizes.
struct BlockLevi {
  std::vector<long> blocks;

  explicit BlockLevi(std::vector<long> b) : blocks(std::move(b)) {
    for (long x : blocks)
      if (x <= 0) throw std::invalid_argument("BlockLevi: nonpositive block");
  }
  long n() const { return std::accumulate(blocks.begin(), blocks.end(), 0L); }
  size_t parts() const { return blocks.size(); }
  // block index of coordinate i
  size_t block_of(size_t i) const {
    long acc = 0;
    for (size_t b = 0; b < blocks.size(); ++b) {
      acc += blocks[b];
      if (static_cast<long>(i) < acc) return b;
    }
    throw std::out_of_range("block_of");
  }
};

using Coweight = std::vector<long>;

/// Which unipotent radical the partial order / retraction refers to.
enum class Radical { upper, lower };

inline QTuple coweight_tuple(const Coweight& mu) {
  std::vector<ExtRat> e;
  for (long m : mu) e.push_back(ExtRat(Rat(m)));
  return QTuple(std::move(e));
}

/// Cartan invariant of g in K\G/K: non-decreasing invariant-factor
/// valuations of g relative to O^n.
inline Coweight cartan(const FMatrix& g) {
  if (det(g).is_zero()) throw std::invalid_argument("cartan: singular matrix");
  std::vector<ExtRat> v = smith_valuations(g);
  Coweight out;
  for (const ExtRat& x : v) {
    Rat r = x.value();
    out.push_back(static_cast<long>(mpz_class(r.get_num()).get_si()));
  }
  return out;
}

/// Iwasawa retraction: the unique mu with g in K mu(eps) U(F), computed by
/// unimodular row reduction to a triangular form.  Returns mu and, for
/// verification, the K factor.
struct RBFactorization {
  Coweight mu;
  FMatrix k;  // g = k * diag(eps^mu) * u with u unipotent in the radical
  FMatrix u;
};

inline RBFactorization retraction_rB_factor(const FMatrix& g, Radical rad) {
  if (det(g).is_zero()) throw std::invalid_argument("retraction_rB: singular matrix");
  size_t n = g.rows();
  FMatrix r = g;
  FMatrix e = FMatrix::identity(n);  // tracks E with E g = r, E unimodular
  // reduce to triangular: upper radical pairs with pivots walking top-down
  for (size_t step = 0; step < n; ++step) {
    size_t col = (rad == Radical::upper) ? step : n - 1 - step;
    size_t prow = col;
    // minimal-valuation pivot among untouched rows
    bool found = false;
    size_t pi = 0;
    int best = 0;
    for (size_t s2 = step; s2 < n; ++s2) {
      size_t i = (rad == Radical::upper) ? s2 : n - 1 - s2;
      if (r(i, col).is_zero()) continue;
      int v = r(i, col).order();
      if (!found || v < best) {
        found = true;
        best = v;
        pi = i;
      }
    }
    if (!found) throw std::invalid_argument("retraction_rB: singular matrix");
    if (pi != prow)
      for (size_t j = 0; j < n; ++j) {
        std::swap(r(pi, j), r(prow, j));
        std::swap(e(pi, j), e(prow, j));
      }
    for (size_t s2 = step + 1; s2 < n; ++s2) {
      size_t i = (rad == Radical::upper) ? s2 : n - 1 - s2;
      if (r(i, col).is_zero()) continue;
      RatFunc f = r(i, col) / r(prow, col);  // integral by pivot minimality
      for (size_t j = 0; j < n; ++j) {
        r(i, j) -= f * r(prow, j);
        e(i, j) -= f * e(prow, j);
      }
    }
  }
  RBFactorization out;
  out.mu.resize(n);
  FMatrix a(n, n);
  for (size_t i = 0; i < n; ++i) {
    out.mu[i] = r(i, i).order();
    a(i, i) = RatFunc::uniformizer_pow(static_cast<int>(out.mu[i]));
    // fold the diagonal unit into the K factor so u is unipotent
    RatFunc unit = r(i, i) / a(i, i);
    for (size_t j = 0; j < n; ++j) {
      r(i, j) = r(i, j) / unit;
      e(i, j) = e(i, j) / unit;
    }
  }
  out.u = inverse(a) * r;
  out.k = inverse(e);
  return out;
}

inline Coweight retraction_rB(const FMatrix& g, Radical rad) {
  return retraction_rB_factor(g, rad).mu;
}

inline bool is_block_diagonal(const FMatrix& g, const BlockLevi& m) {
  for (size_t i = 0; i < g.rows(); ++i)
    for (size_t j = 0; j < g.cols(); ++j)
      if (m.block_of(i) != m.block_of(j) && !g(i, j).is_zero()) return false;
  return true;
}

/// Per-block determinant valuations of a block-diagonal invertible g.
inline std::vector<long> wM(const FMatrix& g, const BlockLevi& m) {
  if (!is_block_diagonal(g, m)) throw std::invalid_argument("wM: not block diagonal");
  std::vector<long> out;
  size_t off = 0;
  for (long b : m.blocks) {
    std::vector<size_t> idx;
    for (long i = 0; i < b; ++i) idx.push_back(off + i);
    RatFunc d = det(g.submatrix(idx, idx));
    if (d.is_zero()) throw std::invalid_argument("wM: singular block");
    out.push_back(d.order());
    off += b;
  }
  return out;
}

/// Per-block coordinate sums of a coweight.
inline std::vector<long> pM(const Coweight& mu, const BlockLevi& m) {
  std::vector<long> out(m.parts(), 0);
  for (size_t i = 0; i < mu.size(); ++i) out[m.block_of(i)] += mu[i];
  return out;
}

/// a <=_P b: b - a is a nonnegative integral combination of the images in
/// Z^s of the coroots in the radical of P.  For the block generators
/// e_k - e_l this is a prefix-sum cone condition.
inline bool leq_P(const std::vector<long>& a, const std::vector<long>& b, Radical rad) {
  if (a.size() != b.size()) throw std::invalid_argument("leq_P: length mismatch");
  long run = 0, total = 0;
  for (size_t t = 0; t < a.size(); ++t) total += b[t] - a[t];
  if (total != 0) return false;
  for (size_t t = 0; t + 1 < a.size(); ++t) {
    run += b[t] - a[t];
    if (rad == Radical::upper && run < 0) return false;
    if (rad == Radical::lower && run > 0) return false;
  }
  return true;
}

/// All lattice classes between eps^w O^n and eps^{-w} O^n, one triangular
/// canonical basis each.  Off-diagonal representatives are reduced modulo
/// the pivot power; coefficients range over {-1, 0, 1} (rationals give an
/// infinite residue field, so a finite desk-scale slice is taken).
inline std::vector<MatrixLattice> enumerate_lattices(size_t n, int w) {
  if (n > 3 || w > 3) throw std::invalid_argument("enumerate_lattices: size guard exceeded");
  static const long kCoeffs[] = {-1, 0, 1};
  std::vector<MatrixLattice> out;
  std::vector<long> diag(n, 0);
  FMatrix basis(n, n);

  // fill off-diagonal entries column by column, then emit
  auto emit = [&]() {
    // containment eps^w O^n inside L: inverse(basis) * eps^w integral
    FMatrix inv = inverse(basis);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        RatFunc scaled = inv(i, j) * RatFunc::uniformizer_pow(w);
        if (!scaled.is_integral()) return;
      }
    out.push_back(MatrixLattice(basis));
  };

  // enumerate polynomials for entry (i, j), exponents in [-w, diag[i]-1]
  std::vector<std::pair<size_t, size_t>> slots;
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < j; ++i) slots.emplace_back(i, j);

  std::function<void(size_t)> fill = [&](size_t s) {
    if (s == slots.size()) {
      emit();
      return;
    }
    auto [i, j] = slots[s];
    std::vector<int> exps;
    for (int d2 = -w; d2 < static_cast<int>(diag[i]); ++d2) exps.push_back(d2);
    std::function<void(size_t, RatFunc)> terms = [&](size_t t, RatFunc acc) {
      if (t == exps.size()) {
        basis(i, j) = acc;
        fill(s + 1);
        return;
      }
      for (long c : kCoeffs)
        terms(t + 1, c == 0 ? acc : acc + RatFunc::monomial(Rat(c), exps[t]));
    };
    terms(0, RatFunc());
  };

  std::function<void(size_t)> choose_diag = [&](size_t j) {
    if (j == n) {
      for (size_t i = 0; i < n; ++i)
        for (size_t k2 = 0; k2 < n; ++k2)
          basis(i, k2) = (i == k2) ? RatFunc::uniformizer_pow(static_cast<int>(diag[i]))
                                   : RatFunc();
      fill(0);
      return;
    }
    for (long a = -w; a <= w; ++a) {
      diag[j] = a;
      choose_diag(j + 1);
    }
  };
  choose_diag(0);
  return out;
}

/// Affine Deligne-Lusztig-style fiber: lattices L in the window with
/// cartan invariant of gamma relative to L equal to mu.
inline std::vector<MatrixLattice> fiber_X_mu(const FMatrix& gamma, const Coweight& mu,
                                             int w) {
  std::vector<MatrixLattice> out;
  for (MatrixLattice& l : enumerate_lattices(gamma.rows(), w)) {
    FMatrix m = inverse(l.basis) * gamma * l.basis;
    if (det(m).is_zero()) continue;
    if (cartan(m) == mu) out.push_back(std::move(l));
  }
  return out;
}

/// Ad(gamma) on the radical of P = MN: matrix in the basis E_ij of Lie N.
inline FMatrix ad_on_radical(const FMatrix& gamma, const BlockLevi& m, Radical rad) {
  size_t n = gamma.rows();
  FMatrix gi = inverse(gamma);
  std::vector<std::pair<size_t, size_t>> basis;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (m.block_of(i) == m.block_of(j)) continue;
      bool up = m.block_of(i) < m.block_of(j);
      if ((rad == Radical::upper) == up) basis.emplace_back(i, j);
    }
  FMatrix out(basis.size(), basis.size());
  for (size_t col = 0; col < basis.size(); ++col) {
    auto [i, j] = basis[col];
    // gamma E_ij gamma^{-1}: entry (p, q) = gamma(p, i) * gi(j, q)
    for (size_t row = 0; row < basis.size(); ++row) {
      auto [p, q] = basis[row];
      out(row, col) = gamma(p, i) * gi(j, q);
    }
  }
  return out;
}

/// L decomposes along the coordinate blocks of m.
inline bool block_decomposes(const MatrixLattice& l, const BlockLevi& m) {
  size_t n = l.dim();
  std::vector<MatrixLattice> parts;
  size_t off = 0;
  for (long b : m.blocks) {
    FMatrix u(n, b);
    for (long i = 0; i < b; ++i) u(off + i, i) = RatFunc(Rat(1));
    parts.push_back(intersect_subspace(l, Subspace(u)));
    off += b;
  }
  FMatrix c(n, n);
  size_t col = 0;
  for (const MatrixLattice& p : parts)
    for (size_t j = 0; j < p.lattice_rank(); ++j, ++col)
      for (size_t i = 0; i < n; ++i) c(i, col) = p.basis(i, j);
  if (det(c).is_zero()) return false;
  return lattice_equal(l, MatrixLattice(c));
}

struct LinHNReport {
  size_t fiber_size = 0;
  size_t part1_violations = 0;
  bool part2_checked = false;  // false = "hypothesis-skip"
  std::string part2_skip_reason;
  size_t part2_violations = 0;
  size_t boundary_contacts = 0;  // fiber members with a diagonal exponent at the window edge
};

/// Theorem-level verification of the group Hodge-Newton statement for a
/// block-diagonal gamma: part (1) w_M(gamma) <=_P p_M(mu) on every fiber
/// member; part (2) under equal block sums and positive radical slopes,
/// every fiber member splits along the blocks.
inline LinHNReport verify_linHN(const FMatrix& gamma, const Coweight& mu,
                                const BlockLevi& m, Radical rad, int w) {
  if (!is_block_diagonal(gamma, m))
    throw std::invalid_argument("verify_linHN: gamma not in M");
  LinHNReport rep;
  std::vector<long> wm = wM(gamma, m);
  std::vector<long> pm = pM(mu, m);
  std::vector<MatrixLattice> fiber = fiber_X_mu(gamma, mu, w);
  rep.fiber_size = fiber.size();
  for (const MatrixLattice& l : fiber) {
    if (!leq_P(wm, pm, rad)) ++rep.part1_violations;
    Coweight diag_exps = cartan(l.basis);
    for (long a : diag_exps)
      if (a == w || a == -w) {
        ++rep.boundary_contacts;
        break;
      }
  }
  if (wm != pm) {
    rep.part2_skip_reason = "hypothesis-skip: w_M(gamma) != p_M(mu)";
    return rep;
  }
  QTuple slopes = newton_point(ad_on_radical(gamma, m, rad));
  for (size_t i = 0; i < slopes.size(); ++i)
    if (!(ExtRat(Rat(0)) < slopes[i])) {
      rep.part2_skip_reason = "hypothesis-skip: nonpositive slope on Lie N";
      return rep;
    }
  rep.part2_checked = true;
  for (const MatrixLattice& l : fiber)
    if (!block_decomposes(l, m)) ++rep.part2_violations;
  return rep;
}

/// Group Mazur inequality: the Newton point of gamma is dominated by mu,
/// with equal valuation totals.  Vacuously true when the fiber is empty in
/// the window.
inline bool mazur_group_check(const FMatrix& gamma, const Coweight& mu, int w) {
  if (fiber_X_mu(gamma, mu, w).empty()) return true;
  return dominance_geq(coweight_tuple(mu), newton_point(gamma));
}

inline bool in_radical_unipotent(const FMatrix& g, const BlockLevi& m, Radical rad,
                                 bool integral_only) {
  size_t n = g.rows();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) {
        if (!(g(i, j) == RatFunc(Rat(1)))) return false;
        continue;
      }
      if (m.block_of(i) == m.block_of(j)) {
        if (!g(i, j).is_zero()) return false;
        continue;
      }
      bool up = m.block_of(i) < m.block_of(j);
      if ((rad == Radical::upper) != up) {
        if (!g(i, j).is_zero()) return false;
      } else if (integral_only && !g(i, j).is_integral()) {
        return false;
      }
    }
  return true;
}

/// Descent step of the group theorem's proof: n in N(F) whose
/// gamma-commutator lies in N(O), with gamma in M(O) mu(eps) M(O) for
/// dominant mu and positive radical slopes, must itself lie in N(O).
inline bool unipotent_descent_check(const FMatrix& gamma, const FMatrix& n_elt,
                                    const BlockLevi& m, Radical rad) {
  if (!in_radical_unipotent(n_elt, m, rad, false))
    throw std::invalid_argument("unipotent_descent: n not in N(F)");
  if (!is_block_diagonal(gamma, m))
    throw std::invalid_argument("unipotent_descent: gamma not in M");
  FMatrix comm = inverse(n_elt) * gamma * n_elt * inverse(gamma);
  if (!in_radical_unipotent(comm, m, rad, true))
    throw std::invalid_argument("unipotent_descent: commutator not in N(O)");
  Coweight mu = cartan(gamma);  // blockwise invariant factors, globally sorted
  for (size_t i = 0; i + 1 < mu.size(); ++i)
    if (mu[i] > mu[i + 1])
      throw std::invalid_argument("unipotent_descent: mu not dominant");
  QTuple slopes = newton_point(ad_on_radical(gamma, m, rad));
  for (size_t i = 0; i < slopes.size(); ++i)
    if (!(ExtRat(Rat(0)) < slopes[i]))
      throw std::invalid_argument("unipotent_descent: nonpositive slope on Lie N");
  return in_radical_unipotent(n_elt, m, rad, true);
}

}  // namespace rvl

#endif
