#ifndef RVL_VALUATION_LATTICES_HPP
#define RVL_VALUATION_LATTICES_HPP

#include <random>
#include <stdexcept>
#include <vector>

#include "rvl/linalg.hpp"
#include "rvl/mutation.hpp"
#include "rvl/ratfunc.hpp"
#include "rvl/valuation_functions.hpp"

namespace rvl {

/// Candidate root valuation lattice data: the pair (r, lambda) with the
/// derived difference function k = lambda - r.
struct RVLSpec {
  const RootSystem* rs = nullptr;
  RootFunction r;
  RootFunction lambda;

  RootFunction k() const { return lambda - r; }
};

/// Condition (1): k(a) + k(-a) >= r_m(a) - r(a) for all roots a.
inline bool rvl_condition1(const RVLSpec& spec) {
  const RootSystem& rs = *spec.rs;
  RootFunction k = spec.k();
  RootFunction rm = r_m(rs, spec.r);
  for (int a = 0; a < rs.num_roots(); ++a)
    if (k(a) + k(rs.negative_of(a)) < rm(a) - spec.r(a)) return false;
  return true;
}

/// Condition (2), symmetric form:
/// k(a)+k(b)-k(a+b) >= r(a+b) - min(r(a), r(b)) for all root sums.
inline bool rvl_condition2(const RVLSpec& spec) {
  const RootSystem& rs = *spec.rs;
  RootFunction k = spec.k();
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b) {
      int c = rs.sum_index(a, b);
      if (c < 0) continue;
      if (k(a) + k(b) - k(c) < spec.r(c) - std::min(spec.r(a), spec.r(b)))
        return false;
    }
  return true;
}

/// Condition (2) in the less symmetrical form, demanded for both orderings:
/// k(a)+k(b)-k(a+b) >= r(a+b) - r(a).  Must agree with rvl_condition2.
inline bool rvl_condition2_asymmetric(const RVLSpec& spec) {
  const RootSystem& rs = *spec.rs;
  RootFunction k = spec.k();
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b) {
      int c = rs.sum_index(a, b);
      if (c < 0) continue;
      if (k(a) + k(b) - k(c) < spec.r(c) - spec.r(a)) return false;
      if (k(a) + k(b) - k(c) < spec.r(c) - spec.r(b)) return false;
    }
  return true;
}

inline bool check_rvl_conditions(const RVLSpec& spec) {
  if (!is_root_valuation_function(*spec.rs, spec.r))
    throw std::invalid_argument("check_rvl_conditions: r is not a root valuation function");
  return rvl_condition1(spec) && rvl_condition2(spec);
}

/// Exponents l(a) of the Lie-algebra normalizer of Lambda_{r,lambda}:
/// l(a) = max(S1 ∪ S2 ∪ S3) with
///   S1 = { k(a) },
///   S2 = { r(b) - r(a) - k(-a) : b not orthogonal to a }   (plain pairing),
///   S3 = { k(a+b) + r(a+b) - k(b) - r(b) : a+b in R }.
inline RootFunction normalizer_exponents(const RVLSpec& spec) {
  const RootSystem& rs = *spec.rs;
  if (!is_root_valuation_function(rs, spec.r))
    throw std::invalid_argument("normalizer_exponents: r is not a root valuation function");
  RootFunction k = spec.k();
  RootFunction l(rs);
  for (int a = 0; a < rs.num_roots(); ++a) {
    long m = k(a);  // S1
    for (int b = 0; b < rs.num_roots(); ++b) {
      if (!rs.orthogonal(a, b))
        m = std::max(m, spec.r(b) - spec.r(a) - k(rs.negative_of(a)));  // S2
      int c = rs.sum_index(a, b);
      if (c >= 0) m = std::max(m, k(c) + spec.r(c) - k(b) - spec.r(b));  // S3
    }
    l.at(a) = m;
  }
  return l;
}

/// Lambda_{r,lambda} is a root valuation lattice iff the normalizer exponents
/// coincide with k.  Must agree with check_rvl_conditions on every input.
inline bool is_rvl_via_normalizer(const RVLSpec& spec) {
  return normalizer_exponents(spec) == spec.k();
}

/// The big lattice of a root valuation function: k1 = ceil((r_m - r)/2),
/// lambda = r + k1.
inline RVLSpec big_lattice(const RootSystem& rs, const RootFunction& r) {
  if (!is_root_valuation_function(rs, r))
    throw std::invalid_argument("big_lattice: r is not a root valuation function");
  RootFunction rm = r_m(rs, r);
  RVLSpec spec{&rs, r, RootFunction(rs)};
  for (int a = 0; a < rs.num_roots(); ++a) {
    long num = rm(a) - r(a);  // k0 = num / 2, k1 = ceil(k0); num >= 0
    long k1 = (num + 1) / 2;
    if (mutation::k1_off_by_one) ++k1;
    spec.lambda.at(a) = r(a) + k1;
  }
  return spec;
}

/// Canonical rref row-basis of the Cartan subalgebra, i.e. the rational span
/// of the coroots inside the ambient space.
inline QMatrix cartan_space(const RootSystem& rs) {
  QMatrix m(rs.num_roots(), rs.ambient_dim());
  for (int i = 0; i < rs.num_roots(); ++i)
    for (int j = 0; j < rs.ambient_dim(); ++j) m(i, j) = rs.coroot(i)[j];
  QMatrix red = rref(m);
  size_t rk = 0;
  for (size_t i = 0; i < red.rows(); ++i) {
    bool nonzero = false;
    for (size_t j = 0; j < red.cols(); ++j)
      if (red(i, j) != 0) nonzero = true;
    if (nonzero) ++rk;
  }
  QMatrix out(rk, rs.ambient_dim());
  for (size_t i = 0; i < rk; ++i)
    for (size_t j = 0; j < red.cols(); ++j) out(i, j) = red(i, j);
  return out;
}

/// Row space containment A <= B via rank.
inline bool subspace_le(const QMatrix& a, const QMatrix& b) {
  if (a.rows() == 0) return true;
  QMatrix stacked(a.rows() + b.rows(), a.cols());
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) stacked(i, j) = b(i, j);
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) stacked(b.rows() + i, j) = a(i, j);
  return rank(stacked) == rank(b);
}

/// A(O)-stable graded lattice: root-line exponents lambda plus a Cartan part
/// { sum_i u_i e^i : u_i in V_i } given by a nested chain of rational
/// subspaces.  V_i is the zero space below chain_lo and all of the Cartan
/// from the top of the chain onward.
struct GradedLattice {
  const RootSystem* rs = nullptr;
  RootFunction lambda;
  int chain_lo = 0;
  std::vector<QMatrix> chain;  // rref row-bases of V_{chain_lo + j}

  const QMatrix& cartan_level(int i) const {
    if (chain.empty()) throw std::logic_error("empty Cartan chain");
    if (i < chain_lo) {
      if (zero_below_) return zero_;
      throw std::logic_error("Cartan chain queried below its range");
    }
    size_t j = static_cast<size_t>(i - chain_lo);
    return chain[std::min(j, chain.size() - 1)];
  }
  int chain_hi() const { return chain_lo + static_cast<int>(chain.size()) - 1; }

  void finalize() {
    zero_ = QMatrix(0, rs->ambient_dim());
    zero_below_ = true;
    for (size_t j = 0; j + 1 < chain.size(); ++j)
      if (!subspace_le(chain[j], chain[j + 1]))
        throw std::invalid_argument("Cartan chain is not nested");
  }

 private:
  QMatrix zero_;
  bool zero_below_ = true;
};

/// The canonical lattice Lambda_{r,lambda} with Cartan part a(F)_{>= r}:
/// V_i = { v in Cartan : alpha(v) = 0 for all alpha with r(alpha) >= i+1 }.
inline GradedLattice assemble(const RVLSpec& spec) {
  const RootSystem& rs = *spec.rs;
  GradedLattice L;
  L.rs = &rs;
  L.lambda = spec.lambda;
  QMatrix full = cartan_space(rs);
  long lo = spec.r.min_value();
  long hi = spec.r.max_value();  // V_i = full Cartan for i >= hi
  L.chain_lo = static_cast<int>(lo);
  for (long i = lo; i <= hi; ++i) {
    // kernel of the roots in R_{i+1} restricted to the Cartan
    RootSet constraints = spec.r.level_set(i + 1);
    std::vector<int> alphas;
    for (int a = 0; a < rs.num_roots(); ++a)
      if (set_contains(constraints, a)) alphas.push_back(a);
    if (alphas.empty()) {
      L.chain.push_back(full);
      continue;
    }
    // solve alpha . v = 0 over the row space of `full`
    size_t dim = full.rows();
    QMatrix sys(alphas.size(), dim);
    for (size_t s = 0; s < alphas.size(); ++s)
      for (size_t t = 0; t < dim; ++t) {
        Rat dot(0);
        for (int j = 0; j < rs.ambient_dim(); ++j)
          dot += Rat(rs.root(alphas[s])[j]) * full(t, j);
        sys(s, t) = dot;
      }
    QMatrix red = rref(sys);
    // free columns of the reduced system give a kernel basis
    std::vector<int> pivot_col(red.rows(), -1);
    std::vector<bool> is_pivot(dim, false);
    {
      size_t r2 = 0;
      for (size_t c = 0; c < dim && r2 < red.rows(); ++c)
        if (red(r2, c) == 1) {
          bool unit = true;
          for (size_t rr = 0; rr < red.rows(); ++rr)
            if (rr != r2 && red(rr, c) != 0) unit = false;
          if (unit) {
            pivot_col[r2] = static_cast<int>(c);
            is_pivot[c] = true;
            ++r2;
          }
        }
    }
    std::vector<std::vector<Rat>> kernel;
    for (size_t c = 0; c < dim; ++c) {
      if (is_pivot[c]) continue;
      std::vector<Rat> v(dim, Rat(0));
      v[c] = Rat(1);
      for (size_t rr = 0; rr < red.rows(); ++rr)
        if (pivot_col[rr] >= 0) v[pivot_col[rr]] = -red(rr, c);
      kernel.push_back(std::move(v));
    }
    // map kernel coordinates back into ambient space
    QMatrix vi(kernel.size(), rs.ambient_dim());
    for (size_t kk = 0; kk < kernel.size(); ++kk)
      for (int j = 0; j < rs.ambient_dim(); ++j) {
        Rat s(0);
        for (size_t t = 0; t < dim; ++t) s += kernel[kk][t] * full(t, j);
        vi(kk, j) = s;
      }
    L.chain.push_back(rref(vi));
  }
  if (L.chain.empty()) L.chain.push_back(full);
  // ensure the chain ends at the full Cartan
  if (!(subspace_le(full, L.chain.back()) && subspace_le(L.chain.back(), full))) {
    L.chain.push_back(full);
  }
  L.finalize();
  return L;
}

/// Graded lattice e^n (a(O) + root lines): Cartan chain jumps from zero to
/// the full Cartan at level n.
inline GradedLattice graded_with_cartan_shift(const RootSystem& rs,
                                              const RootFunction& lambda, int n) {
  GradedLattice L;
  L.rs = &rs;
  L.lambda = lambda;
  L.chain_lo = n;
  L.chain.push_back(cartan_space(rs));
  L.finalize();
  return L;
}

/// Codimension of L inside Lref (graded componentwise containment required):
/// sum over roots of the exponent gaps plus the finite sum of Cartan
/// dimension drops.
inline long codimension(const GradedLattice& L, const GradedLattice& Lref) {
  const RootSystem& rs = *L.rs;
  long total = 0;
  for (int a = 0; a < rs.num_roots(); ++a) {
    if (L.lambda(a) < Lref.lambda(a))
      throw std::invalid_argument("codimension: root-line containment violated");
    total += L.lambda(a) - Lref.lambda(a);
  }
  int lo = std::min(L.chain_lo, Lref.chain_lo);
  int hi = std::max(L.chain_hi(), Lref.chain_hi());
  for (int i = lo; i <= hi; ++i) {
    const QMatrix& a = L.cartan_level(i);
    const QMatrix& b = Lref.cartan_level(i);
    if (!subspace_le(a, b))
      throw std::invalid_argument("codimension: Cartan containment violated");
    total += static_cast<long>(b.rows()) - static_cast<long>(a.rows());
  }
  return total;
}

/// Deterministic-for-seed element of a graded lattice in Chevalley-style
/// coordinates: one Q(e) coefficient per root line plus an ambient Cartan
/// coordinate vector.
struct LieElement {
  const RootSystem* rs = nullptr;
  std::vector<RatFunc> cartan;      // ambient coordinates
  std::vector<RatFunc> root_coeff;  // indexed by root

  /// alpha(u) of the Cartan part.
  RatFunc root_value(int a) const {
    RatFunc s;
    for (int j = 0; j < rs->ambient_dim(); ++j)
      s += RatFunc(Rat(rs->root(a)[j])) * cartan[j];
    return s;
  }
};

inline LieElement sample_element(const GradedLattice& L, int degree_cap,
                                 std::uint64_t rng_seed) {
  const RootSystem& rs = *L.rs;
  if (degree_cap < L.chain_hi() || degree_cap < L.lambda.max_value())
    throw std::invalid_argument("sample_element: degree cap below lattice exponents");
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<long> coeff(-3, 3);
  // Cartan slots get nonzero coefficients from a wider range: the sampler
  // backs the genericity experiments, where a vanishing or accidentally
  // cancelling leading coefficient hides the stratum the element sits in.
  std::uniform_int_distribution<long> mag(1, 40);
  std::uniform_int_distribution<int> sgn(0, 1);
  auto nonzero = [&]() { return sgn(rng) ? mag(rng) : -mag(rng); };
  LieElement u;
  u.rs = &rs;
  u.root_coeff.resize(rs.num_roots());
  for (int a = 0; a < rs.num_roots(); ++a) {
    RatFunc f;
    for (long d = L.lambda(a); d <= degree_cap; ++d)
      f += RatFunc::monomial(Rat(coeff(rng)), static_cast<int>(d));
    u.root_coeff[a] = f;
  }
  u.cartan.assign(rs.ambient_dim(), RatFunc());
  for (int i = L.chain_lo; i <= degree_cap; ++i) {
    const QMatrix& vi = L.cartan_level(i);
    for (size_t row = 0; row < vi.rows(); ++row) {
      long c = nonzero();
      for (int j = 0; j < rs.ambient_dim(); ++j)
        u.cartan[j] += RatFunc::monomial(Rat(c) * vi(row, j), i);
    }
  }
  return u;
}

/// Membership of an element (with polynomial-bounded expansion) in a graded
/// lattice, decided by exponent and Cartan-subspace inspection.
inline bool lattice_contains(const GradedLattice& L, const LieElement& u,
                             int degree_cap) {
  const RootSystem& rs = *L.rs;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (!u.root_coeff[a].is_zero() && u.root_coeff[a].val() < ExtRat(Rat(L.lambda(a))))
      return false;
  // Cartan part: coefficient of e^i must lie in V_i for all i up to the
  // chain top (beyond which V_i is everything); nothing below chain_lo.
  int lo = L.chain_lo;
  for (int j = 0; j < rs.ambient_dim(); ++j) {
    const RatFunc& f = u.cartan[j];
    if (!f.is_zero() && f.val() < ExtRat(Rat(lo))) return false;
  }
  for (int i = lo; i <= L.chain_hi(); ++i) {
    std::vector<Rat> ui(rs.ambient_dim());
    bool nonzero = false;
    for (int j = 0; j < rs.ambient_dim(); ++j) {
      ui[j] = u.cartan[j].series_coeff(i);
      if (ui[j] != 0) nonzero = true;
    }
    if (!nonzero) continue;
    QMatrix vec(1, rs.ambient_dim());
    for (int j = 0; j < rs.ambient_dim(); ++j) vec(0, j) = ui[j];
    if (!subspace_le(vec, L.cartan_level(i))) return false;
  }
  return true;
}

}  // namespace rvl

#endif
