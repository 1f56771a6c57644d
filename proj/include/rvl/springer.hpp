#ifndef RVL_SPRINGER_HPP
#define RVL_SPRINGER_HPP

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvl/group_hn.hpp"
#include "rvl/valuation_lattices.hpp"

namespace rvl {

/// Chevalley realization of sl_n: basis {H_1..H_{n-1}} followed by the root
/// vectors E_alpha in root-index order, alpha = e_i - e_j mapping to E_ij.
struct ChevalleyBasis {
  int n;
  RootSystem rs;

  explicit ChevalleyBasis(int n_) : n(n_), rs(RootSystem::build('A', n_ - 1)) {
    if (n < 2 || n > 4) throw std::invalid_argument("sl_n realization limited to n in [2,4]");
  }
  int dim() const { return n * n - 1; }
  int rank() const { return n - 1; }

  // ambient indices (i, j) of the root with index a
  std::pair<int, int> root_entry(int a) const {
    const std::vector<long>& v = rs.root(a);
    int i = -1, j = -1;
    for (int t = 0; t < n; ++t) {
      if (v[t] == 1) i = t;
      if (v[t] == -1) j = t;
    }
    return {i, j};
  }
};

/// Element of sl_n in Chevalley coordinates.
struct ChevalleyElement {
  const ChevalleyBasis* cb = nullptr;
  std::vector<RatFunc> h;           // coefficients of H_1..H_{n-1}
  std::vector<RatFunc> root_coeff;  // coefficients of E_alpha

  explicit ChevalleyElement(const ChevalleyBasis& b)
      : cb(&b), h(b.rank()), root_coeff(b.rs.num_roots()) {}

  std::vector<RatFunc> flat() const {
    std::vector<RatFunc> v = h;
    v.insert(v.end(), root_coeff.begin(), root_coeff.end());
    return v;
  }
};

inline FMatrix to_matrix(const ChevalleyElement& u) {
  int n = u.cb->n;
  FMatrix m(n, n);
  for (int k = 0; k < n - 1; ++k) {  // H_k = E_kk - E_{k+1,k+1}
    m(k, k) += u.h[k];
    m(k + 1, k + 1) -= u.h[k];
  }
  for (int a = 0; a < u.cb->rs.num_roots(); ++a) {
    auto [i, j] = u.cb->root_entry(a);
    m(i, j) += u.root_coeff[a];
  }
  return m;
}

inline ChevalleyElement from_matrix(const ChevalleyBasis& cb, const FMatrix& m) {
  int n = cb.n;
  RatFunc tr;
  for (int i = 0; i < n; ++i) tr += m(i, i);
  if (!tr.is_zero()) throw std::invalid_argument("from_matrix: nonzero trace");
  ChevalleyElement u(cb);
  // diag = sum c_k H_k has prefix sums c_k = m_11 + ... + m_kk
  RatFunc acc;
  for (int k = 0; k < n - 1; ++k) {
    acc += m(k, k);
    u.h[k] = acc;
  }
  for (int a = 0; a < cb.rs.num_roots(); ++a) {
    auto [i, j] = cb.root_entry(a);
    u.root_coeff[a] = m(i, j);
  }
  return u;
}

inline FMatrix bracket(const FMatrix& a, const FMatrix& b) { return a * b - b * a; }

/// Matrix of ad(u) on the Chevalley basis; d = n^2 - 1.
inline FMatrix ad_matrix(const ChevalleyElement& u) {
  const ChevalleyBasis& cb = *u.cb;
  int d = cb.dim();
  FMatrix um = to_matrix(u);
  FMatrix out(d, d);
  for (int col = 0; col < d; ++col) {
    ChevalleyElement e(cb);
    if (col < cb.rank())
      e.h[col] = RatFunc(Rat(1));
    else
      e.root_coeff[col - cb.rank()] = RatFunc(Rat(1));
    ChevalleyElement img = from_matrix(cb, bracket(um, to_matrix(e)));
    std::vector<RatFunc> v = img.flat();
    for (int row = 0; row < d; ++row) out(row, col) = v[row];
  }
  return out;
}

/// Point of the standard apartment, coordinates against the fundamental
/// coweights; alpha(x) = sum of x over the simple-root support of alpha.
struct ApartmentPoint {
  std::vector<Rat> x;  // size n - 1
};

inline Rat root_at(const ChevalleyBasis& cb, int a, const ApartmentPoint& p) {
  // alpha = e_i - e_j = alpha_i + ... + alpha_{j-1} (or negated for i > j)
  auto [i, j] = cb.root_entry(a);
  Rat s(0);
  if (i < j)
    for (int k = i; k < j; ++k) s += p.x[k];
  else
    for (int k = j; k < i; ++k) s -= p.x[k];
  return s;
}

inline long rat_ceil(const Rat& r) {
  mpz_class q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.get_num().get_mpz_t(),
              r.get_den().get_mpz_t());
  return static_cast<long>(q.get_si()) + (rem != 0 ? 1 : 0);
}

/// Parahoric lattice k_x = a(O) + sum P_alpha^{ceil(alpha(x))}.
inline GradedLattice parahoric_lattice(const ChevalleyBasis& cb, const ApartmentPoint& p) {
  RootFunction lambda(cb.rs);
  for (int a = 0; a < cb.rs.num_roots(); ++a) lambda.at(a) = rat_ceil(root_at(cb, a, p));
  return graded_with_cartan_shift(cb.rs, lambda, 0);
}

/// A graded lattice as a matrix lattice in Chevalley coordinates.
inline MatrixLattice chevalley_lattice(const ChevalleyBasis& cb, const GradedLattice& l) {
  int d = cb.dim();
  int nr = cb.rs.num_roots();
  FMatrix b(d, d);
  // Cartan part: for each chain level, basis vectors new at that level get
  // the factor e^i.  Ambient (sum-zero) vectors convert to H-coordinates by
  // prefix sums.
  int col = 0;
  QMatrix seen(0, cb.rs.ambient_dim());
  for (int i = l.chain_lo; i <= l.chain_hi(); ++i) {
    const QMatrix& vi = l.cartan_level(i);
    for (size_t row = 0; row < vi.rows(); ++row) {
      QMatrix cand(seen.rows() + 1, seen.cols());
      for (size_t r2 = 0; r2 < seen.rows(); ++r2)
        for (size_t c2 = 0; c2 < seen.cols(); ++c2) cand(r2, c2) = seen(r2, c2);
      for (size_t c2 = 0; c2 < seen.cols(); ++c2) cand(seen.rows(), c2) = vi(row, c2);
      if (rank(cand) == seen.rows()) continue;  // already spanned
      seen = cand;
      Rat acc(0);
      for (int k = 0; k < cb.rank(); ++k) {
        acc += vi(row, k);
        b(k, col) = RatFunc(acc) * RatFunc::uniformizer_pow(i);
      }
      ++col;
    }
  }
  if (col != cb.rank()) throw std::logic_error("chevalley_lattice: Cartan chain not full");
  for (int a = 0; a < nr; ++a)
    b(cb.rank() + a, cb.rank() + a) =
        RatFunc::uniformizer_pow(static_cast<int>(l.lambda(a)));
  return MatrixLattice(b);
}

/// Word in GL_n(F) generators: diagonal eps-powers, permutations, and
/// elementary unipotents id + t E_ij.
struct GroupWord {
  FMatrix g;

  explicit GroupWord(int n) : g(FMatrix::identity(n)) {}
  GroupWord& diag_eps(const std::vector<int>& mu) {
    FMatrix d(g.rows(), g.rows());
    for (size_t i = 0; i < g.rows(); ++i)
      d(i, i) = RatFunc::uniformizer_pow(mu[i]);
    g = g * d;
    return *this;
  }
  GroupWord& permutation(const std::vector<int>& perm) {
    FMatrix p(g.rows(), g.rows());
    for (size_t j = 0; j < g.rows(); ++j) p(perm[j], j) = RatFunc(Rat(1));
    g = g * p;
    return *this;
  }
  GroupWord& elementary(int i, int j, const RatFunc& t) {
    FMatrix e = FMatrix::identity(g.rows());
    e(i, j) = t;
    g = g * e;
    return *this;
  }
};

/// g L g^{-1} computed column by column through the matrix realization.
inline MatrixLattice conjugate_lattice(const ChevalleyBasis& cb, const GroupWord& w,
                                       const MatrixLattice& l) {
  int d = cb.dim();
  FMatrix gi = inverse(w.g);
  FMatrix out(d, d);
  for (int col = 0; col < d; ++col) {
    ChevalleyElement u(cb);
    for (int k = 0; k < cb.rank(); ++k) u.h[k] = l.basis(k, col);
    for (int a = 0; a < cb.rs.num_roots(); ++a)
      u.root_coeff[a] = l.basis(cb.rank() + a, col);
    ChevalleyElement img = from_matrix(cb, w.g * to_matrix(u) * gi);
    std::vector<RatFunc> v = img.flat();
    for (int row = 0; row < d; ++row) out(row, col) = v[row];
  }
  return MatrixLattice(out);
}

/// Sorted r-values padded with dim A = n - 1 infinite entries.
inline QTuple r_tilde(const ChevalleyBasis& cb, const RootFunction& r) {
  if (!is_root_valuation_function(cb.rs, r))
    throw std::invalid_argument("r_tilde: not a root valuation function");
  std::vector<ExtRat> e;
  for (int a = 0; a < cb.rs.num_roots(); ++a) e.push_back(ExtRat(Rat(r(a))));
  for (int k = 0; k < cb.rank(); ++k) e.push_back(ExtRat::infinity());
  return QTuple(std::move(e));
}

enum class HodgeAlgorithm { minors, snf };

/// Generalized affine Springer fiber membership: the first |R| Hodge partial
/// sums of (ad u, L) weakly exceed the partial sums of sorted r.  With the
/// infinite tail of r-tilde this is the same as dominance r-tilde >= mu.
inline bool springer_member(const ChevalleyElement& u, const MatrixLattice& l,
                            const RootFunction& r,
                            HodgeAlgorithm alg = HodgeAlgorithm::minors) {
  const ChevalleyBasis& cb = *u.cb;
  FMatrix ad = ad_matrix(u);
  QTuple mu = (alg == HodgeAlgorithm::minors) ? hodge_point(ad, l) : hodge_point_snf(ad, l);
  std::vector<long> sorted;
  for (int a = 0; a < cb.rs.num_roots(); ++a) sorted.push_back(r(a));
  std::sort(sorted.begin(), sorted.end());
  long run = 0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    run += sorted[i];
    if (!(ExtRat(Rat(run)) <= mu.partial_sum(i + 1))) return false;
  }
  return true;
}

/// L splits as (L cap a) + sum over alpha of (L cap g_alpha).
inline bool compatible_with_A(const ChevalleyBasis& cb, const MatrixLattice& l) {
  std::vector<long> blocks{cb.rank()};
  for (int a = 0; a < cb.rs.num_roots(); ++a) blocks.push_back(1);
  return block_decomposes(l, BlockLevi(blocks));
}

struct FibersReport {
  size_t weyl_checked = 0;
  size_t weyl_members = 0;
  size_t off_checked = 0;
  size_t off_nonmembers = 0;
  bool all_pass() const {
    return weyl_checked == weyl_members && off_checked == off_nonmembers;
  }
};

/// Apartment sweep for the fiber theorem: every extended-affine-Weyl
/// conjugate of k_x (translations bounded by `bound`) contains u's stratum;
/// certified off-apartment conjugates do not.
inline FibersReport fibers_experiment(const ChevalleyBasis& cb, const RootFunction& r,
                                      const ApartmentPoint& x, const ChevalleyElement& u,
                                      int off_trials, std::uint64_t seed, int bound = 3) {
  // weak-equivalence precondition: val alpha(u) sorted equals r sorted
  for (int a = 0; a < cb.rs.num_roots(); ++a)
    if (!u.root_coeff[a].is_zero())
      throw std::invalid_argument("fibers_experiment: u not in the Cartan");
  FMatrix um = to_matrix(u);
  std::vector<long> uvals, rvals;
  for (int a = 0; a < cb.rs.num_roots(); ++a) {
    auto [i, j] = cb.root_entry(a);
    RatFunc av = um(i, i) - um(j, j);
    if (av.is_zero())
      throw std::invalid_argument("fibers_experiment: alpha(u) = 0, not weakly equivalent");
    uvals.push_back(av.order());
    rvals.push_back(r(a));
  }
  std::sort(uvals.begin(), uvals.end());
  std::sort(rvals.begin(), rvals.end());
  if (uvals != rvals)
    throw std::invalid_argument("fibers_experiment: r-tilde of u differs from r-tilde");

  GradedLattice kx = parahoric_lattice(cb, x);
  MatrixLattice l0 = chevalley_lattice(cb, kx);
  FibersReport rep;

  // translation lattice: diagonal exponents summing to zero (sl_n torus)
  int n = cb.n;
  std::vector<int> mu(n, 0);
  std::vector<int> perms(n);
  for (int i = 0; i < n; ++i) perms[i] = i;
  std::function<void(int, int)> sweep = [&](int pos, int sum) {
    if (pos == n - 1) {
      if (std::abs(sum) > bound) return;
      mu[n - 1] = -sum;
      std::vector<int> perm = perms;
      do {
        GroupWord g(n);
        g.diag_eps(mu).permutation(perm);
        MatrixLattice gl = conjugate_lattice(cb, g, l0);
        ++rep.weyl_checked;
        if (springer_member(u, gl, r, HodgeAlgorithm::snf)) ++rep.weyl_members;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int v = -bound; v <= bound; ++v) {
      mu[pos] = v;
      sweep(pos + 1, sum + v);
    }
  };
  sweep(0, 0);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, cb.rs.num_roots() - 1);
  std::uniform_int_distribution<long> coeff(1, 3);
  std::uniform_int_distribution<int> extra(0, 2);
  for (int t = 0; t < off_trials; ++t) {
    int a = pick(rng);
    auto [i, j] = cb.root_entry(a);
    long lam = rat_ceil(root_at(cb, a, x));
    int vt = static_cast<int>(-(lam + 1) - extra(rng));
    GroupWord g(n);
    g.elementary(i, j, RatFunc::monomial(Rat(coeff(rng)), vt));
    MatrixLattice gl = conjugate_lattice(cb, g, l0);
    if (compatible_with_A(cb, gl)) continue;  // not a certified witness; skip
    ++rep.off_checked;
    if (!springer_member(u, gl, r, HodgeAlgorithm::snf)) ++rep.off_nonmembers;
  }
  return rep;
}

/// Cartan element of the stratum a(F)_r: random coefficients in the nested
/// kernels, retried until val alpha(u) = r(alpha) exactly for every root.
inline ChevalleyElement stratum_sample(const ChevalleyBasis& cb, const RootFunction& r,
                                       std::uint64_t seed) {
  if (!is_root_valuation_function(cb.rs, r))
    throw std::invalid_argument("stratum_sample: not a root valuation function");
  RVLSpec spec{&cb.rs, r, r};
  GradedLattice chain = assemble(spec);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-4, 4);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<RatFunc> ambient(cb.rs.ambient_dim());
    for (int i = chain.chain_lo; i <= chain.chain_hi(); ++i) {
      const QMatrix& vi = chain.cartan_level(i);
      for (size_t row = 0; row < vi.rows(); ++row) {
        long c = coeff(rng);
        if (c == 0) continue;
        for (int k = 0; k < cb.rs.ambient_dim(); ++k)
          ambient[k] += RatFunc(vi(row, k) * Rat(c)) * RatFunc::uniformizer_pow(i);
      }
    }
    bool ok = true;
    for (int a = 0; a < cb.rs.num_roots() && ok; ++a) {
      auto [i, j] = cb.root_entry(a);
      RatFunc av = ambient[i] - ambient[j];
      if (av.is_zero() || av.order() != r(a)) ok = false;
    }
    if (!ok) continue;
    ChevalleyElement u(cb);
    RatFunc acc;
    for (int k = 0; k < cb.rank(); ++k) {
      acc += ambient[k];
      u.h[k] = acc;
    }
    return u;
  }
  throw std::runtime_error("stratum_sample: retries exhausted");
}

/// Finite part of the Newton point of ad(u): the multiset of eigenvalue
/// valuations away from the kernel.
inline std::vector<Rat> nu_finite(const ChevalleyElement& u) {
  QTuple nu = newton_point(ad_matrix(u));
  std::vector<Rat> out;
  for (size_t i = 0; i < nu.size(); ++i)
    if (nu[i].is_finite()) out.push_back(nu[i].value());
  return out;
}

}  // namespace rvl

#endif
