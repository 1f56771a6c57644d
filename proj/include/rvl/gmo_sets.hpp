#pragma once

// Positive (G,A)-orthogonal sets indexed by Weyl chambers, the associated
// (G,M)-sets attached to a Levi subsystem, and the five-condition
// recognizer for families that come from the Levi.

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "rvl/linalg.hpp"
#include "rvl/root_system.hpp"

namespace rvl {

using QVec = std::vector<Rat>;

inline QVec operator+(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline QVec operator-(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline QVec operator*(const Rat& c, const QVec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

namespace detail {

/// Particular rational solution of a consistent linear system m v = rhs
/// (free coordinates set to zero).
inline QVec solve_linear(const QMatrix& m, const QVec& rhs) {
  size_t rows = m.rows(), cols = m.cols();
  QMatrix aug(rows, cols + 1);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
    aug(i, cols) = rhs[i];
  }
  QMatrix r = rref(aug);
  QVec v(cols, Rat(0));
  for (size_t i = 0; i < rows; ++i) {
    size_t piv = 0;
    while (piv < cols && r(i, piv) == Rat(0)) ++piv;
    if (piv == cols) {
      if (r(i, cols) != Rat(0))
        throw std::invalid_argument("solve_linear: inconsistent system");
      continue;
    }
    v[piv] = r(i, cols);
  }
  return v;
}

}  // namespace detail

/// A strictly dominant rational vector: pairs to 1 with every simple coroot.
/// Every root has a nonzero, sign-determining pairing with it.
inline QVec dominant_regular(const RootSystem& rs) {
  const auto& simple = rs.simple_indices();
  QMatrix m(simple.size(), rs.ambient_dim());
  QVec rhs(simple.size(), Rat(1));
  for (size_t k = 0; k < simple.size(); ++k)
    for (int j = 0; j < rs.ambient_dim(); ++j) m(k, j) = rs.coroot(simple[k])[j];
  return detail::solve_linear(m, rhs);
}

inline Rat pair_with(const RootSystem& rs, int root_idx, const QVec& v) {
  Rat s(0);
  for (int j = 0; j < rs.ambient_dim(); ++j) s += Rat(rs.root(root_idx)[j]) * v[j];
  return s;
}

/// Is root a positive for the chamber w(B_0)?  Equivalently w^{-1}(a) > 0.
inline bool positive_for(const RootSystem& rs, const WeylElement& w, int a) {
  static thread_local std::map<std::pair<char, int>, QVec> cache;
  std::pair<char, int> key{rs.cartan_type(), rs.rank()};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, dominant_regular(rs)).first;
  int pre = rs.inverse_elt(w).perm[a];
  return pair_with(rs, pre, it->second) > Rat(0);
}

/// Action of a Weyl element on an ambient vector, via its reduced word.
inline QVec weyl_act_vec(const RootSystem& rs, const WeylElement& w, QVec v) {
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    int s = rs.simple_indices()[*it];
    Rat c(0);
    for (int j = 0; j < rs.ambient_dim(); ++j) c += rs.coroot(s)[j] * v[j];
    for (int j = 0; j < rs.ambient_dim(); ++j) v[j] -= c * Rat(rs.root(s)[j]);
  }
  return v;
}

/// A family of rational vectors indexed by Weyl chambers (B = w B_0,
/// keyed by the root permutation of w).
struct GAOrthSet {
  const RootSystem* rs = nullptr;
  std::map<std::vector<int>, QVec> points;

  const QVec& at(const WeylElement& w) const {
    auto it = points.find(w.perm);
    if (it == points.end()) throw std::invalid_argument("GAOrthSet: chamber missing");
    return it->second;
  }
};

/// Constant family x_B = v.
inline GAOrthSet constant_family(const RootSystem& rs, const QVec& v) {
  GAOrthSet x;
  x.rs = &rs;
  for (const WeylElement& w : rs.weyl_elements()) x.points[w.perm] = v;
  return x;
}

/// W-orbit family x_{wB_0} = w(mu).
inline GAOrthSet orbit_family(const RootSystem& rs, const QVec& mu) {
  GAOrthSet x;
  x.rs = &rs;
  for (const WeylElement& w : rs.weyl_elements())
    x.points[w.perm] = weyl_act_vec(rs, w, mu);
  return x;
}

/// Pointwise sum (Minkowski sum of the orthogonal sets).
inline GAOrthSet operator+(const GAOrthSet& a, const GAOrthSet& b) {
  GAOrthSet s;
  s.rs = a.rs;
  for (const auto& [k, v] : a.points) s.points[k] = v + b.points.at(k);
  return s;
}

inline GAOrthSet negate(const GAOrthSet& a) {
  GAOrthSet s;
  s.rs = a.rs;
  for (const auto& [k, v] : a.points) s.points[k] = Rat(-1) * v;
  return s;
}

/// Positive orthogonality: along every wall between adjacent chambers
/// (w, w s_k) the difference x_w - x_{w s_k} equals r * beta^vee with
/// beta = w(alpha_k) the separating root (positive for w) and r >= 0.
/// A non-collinear difference means the family is not orthogonal at all.
inline bool is_positive_orthogonal(const GAOrthSet& x, std::string* diag = nullptr) {
  const RootSystem& rs = *x.rs;
  for (const WeylElement& w : rs.weyl_elements()) {
    for (size_t k = 0; k < rs.simple_indices().size(); ++k) {
      WeylElement wn = rs.compose(w, rs.simple_reflection(static_cast<int>(k)));
      QVec d = x.at(w) - x.at(wn);
      int beta = w.perm[rs.simple_indices()[k]];
      const QVec& cv = rs.coroot(beta);
      // find the ratio along the coroot line, then verify collinearity
      Rat r(0);
      for (int j = 0; j < rs.ambient_dim(); ++j)
        if (cv[j] != Rat(0)) {
          r = d[j] / cv[j];
          break;
        }
      for (int j = 0; j < rs.ambient_dim(); ++j)
        if (d[j] != r * cv[j]) {
          if (diag) *diag = "difference not collinear with the separating coroot";
          return false;
        }
      if (r < Rat(0)) {
        if (diag) *diag = "negative adjacency coefficient";
        return false;
      }
    }
  }
  return true;
}

/// A Levi subsystem: a Q-closed symmetric subset of the roots.
struct LeviSpec {
  RootSet r_m = 0;

  static LeviSpec make(const RootSystem& rs, RootSet s) {
    for (int a = 0; a < rs.num_roots(); ++a)
      if (set_contains(s, a) != set_contains(s, rs.negative_of(a)))
        throw std::invalid_argument("LeviSpec: subset not symmetric");
    if (!rs.is_Q_closed(s)) throw std::invalid_argument("LeviSpec: subset not Q-closed");
    return LeviSpec{s};
  }
};

/// Projection a_A -> a_M: orthogonal projection killing the span of the
/// coroots of R_M (a canonical representative of the quotient map).
inline QMatrix levi_projection(const RootSystem& rs, const LeviSpec& m) {
  int d = rs.ambient_dim();
  std::vector<QVec> rows;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (set_contains(m.r_m, a)) rows.push_back(rs.coroot(a));
  QMatrix p(d, d);
  for (int i = 0; i < d; ++i) p(i, i) = Rat(1);
  if (rows.empty()) return p;
  QMatrix cmat(rows.size(), d);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < d; ++j) cmat(i, j) = rows[i][j];
  QMatrix red = rref(cmat);
  size_t rk = 0;
  while (rk < red.rows()) {
    bool nz = false;
    for (size_t j = 0; j < red.cols(); ++j)
      if (red(rk, j) != Rat(0)) nz = true;
    if (!nz) break;
    ++rk;
  }
  QMatrix c(rk, d);
  for (size_t i = 0; i < rk; ++i)
    for (int j = 0; j < d; ++j) c(i, j) = red(i, j);
  QMatrix ct(d, rk);
  for (size_t i = 0; i < rk; ++i)
    for (int j = 0; j < d; ++j) ct(j, i) = c(i, j);
  QMatrix g = inverse(c * ct);  // Gram matrix, invertible over Q
  QMatrix proj = ct * g * c;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i, j) = p(i, j) - proj(i, j);
  return p;
}

inline QVec apply_vec(const QMatrix& m, const QVec& v) {
  QVec r(m.rows(), Rat(0));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

/// The type of the parabolic containing a chamber: the set of roots outside
/// R_M that are positive for it.
inline RootSet parabolic_of(const RootSystem& rs, const LeviSpec& m, const WeylElement& w) {
  RootSet out = 0;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (!set_contains(m.r_m, a) && positive_for(rs, w, a)) out = set_insert(out, a);
  return out;
}

/// Is R_M + R_N closed, i.e. does the mask define an actual parabolic with
/// Levi factor M?  (For a in the mask and b in R_M, a+b is never in R_M by
/// Q-closedness, so closedness means a+b lands back in the mask.)
inline bool m_stable(const RootSystem& rs, const LeviSpec& m, RootSet mask) {
  for (int a = 0; a < rs.num_roots(); ++a) {
    if (!set_contains(mask, a)) continue;
    for (int b = 0; b < rs.num_roots(); ++b) {
      if (!set_contains(m.r_m, b)) continue;
      int c = rs.sum_index(a, b);
      if (c >= 0 && !set_contains(mask, c)) return false;
    }
  }
  return true;
}

/// The distinct chamber masks that define parabolics with Levi factor M,
/// in increasing mask order.  Chambers whose mask is not M-stable do not
/// lie in any member of P(M).
inline std::vector<RootSet> parabolic_types(const RootSystem& rs, const LeviSpec& m) {
  std::vector<RootSet> out;
  for (const WeylElement& w : rs.weyl_elements()) {
    RootSet p = parabolic_of(rs, m, w);
    if (!m_stable(rs, m, p)) continue;
    bool seen = false;
    for (RootSet q : out) seen = seen || q == p;
    if (!seen) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The associated (G,M)-set: y_P = p_M(x_B) for any chamber B of type P.
/// Throws if the image is not independent of the chamber (which would
/// falsify the construction of the paper).
inline std::map<RootSet, QVec> associated_GM_set(const GAOrthSet& x, const LeviSpec& m) {
  const RootSystem& rs = *x.rs;
  QMatrix p = levi_projection(rs, m);
  std::map<RootSet, QVec> out;
  for (const WeylElement& w : rs.weyl_elements()) {
    RootSet type = parabolic_of(rs, m, w);
    if (!m_stable(rs, m, type)) continue;  // chamber lies in no P with Levi M
    QVec y = apply_vec(p, x.at(w));
    auto it = out.find(type);
    if (it == out.end())
      out[type] = y;
    else if (it->second != y)
      throw std::logic_error("associated_GM_set: image depends on the chamber");
  }
  return out;
}

struct GmoVerdicts {
  bool induced_from_levi;   // (1) x factors through an (M,A)-set
  bool projections_equal;   // (2) p_M(x_B) equal for all chamber pairs
  bool images_equal;        // (3) all y_P coincide
  bool opposite_pair_equal; // (4) y_P = y_Pbar for the first opposite pair
  bool walls_outside_levi;  // (5) x constant across every wall not in R_M
  bool all_equal() const {
    return induced_from_levi == projections_equal &&
           projections_equal == images_equal && images_equal == opposite_pair_equal &&
           opposite_pair_equal == walls_outside_levi;
  }
  bool ok() const { return induced_from_levi; }
};

/// The five equivalent conditions of the recognition lemma, evaluated
/// independently of one another.
inline GmoVerdicts comes_from_M(const GAOrthSet& x, const LeviSpec& m) {
  const RootSystem& rs = *x.rs;
  GmoVerdicts v{true, true, true, true, true};

  // (1): group chambers by the sign pattern on R_M; x must be constant on
  // each group (positivity of the induced family is inherited from x).
  std::map<RootSet, QVec> by_pattern;
  for (const WeylElement& w : rs.weyl_elements()) {
    RootSet pat = 0;
    for (int a = 0; a < rs.num_roots(); ++a)
      if (set_contains(m.r_m, a) && positive_for(rs, w, a)) pat = set_insert(pat, a);
    auto it = by_pattern.find(pat);
    if (it == by_pattern.end())
      by_pattern[pat] = x.at(w);
    else if (it->second != x.at(w))
      v.induced_from_levi = false;
  }

  // (2): all projections agree pairwise.
  QMatrix p = levi_projection(rs, m);
  const auto& wl = rs.weyl_elements();
  QVec first = apply_vec(p, x.at(wl.front()));
  for (const WeylElement& w : wl)
    if (apply_vec(p, x.at(w)) != first) v.projections_equal = false;

  // (3)/(4): via the associated family.  When the family is not even
  // well-defined chamber-wise, conditions (3) and (4) fail a fortiori.
  try {
    std::map<RootSet, QVec> y = associated_GM_set(x, m);
    const QVec& y0 = y.begin()->second;
    for (const auto& [type, yv] : y)
      if (yv != y0) v.images_equal = false;
    RootSet pfirst = y.begin()->first;
    RootSet popp = 0;
    for (int a = 0; a < rs.num_roots(); ++a)
      if (set_contains(pfirst, a)) popp = set_insert(popp, rs.negative_of(a));
    if (y.find(popp) == y.end())
      throw std::logic_error("comes_from_M: opposite parabolic type missing");
    v.opposite_pair_equal = (y.at(pfirst) == y.at(popp));
  } catch (const std::logic_error&) {
    v.images_equal = false;
    v.opposite_pair_equal = false;
  }

  // (5): walls whose separating root lies outside R_M do not move x.
  for (const WeylElement& w : wl)
    for (size_t k = 0; k < rs.simple_indices().size(); ++k) {
      int beta = w.perm[rs.simple_indices()[k]];
      if (set_contains(m.r_m, beta)) continue;
      WeylElement wn = rs.compose(w, rs.simple_reflection(static_cast<int>(k)));
      if (x.at(w) != x.at(wn)) v.walls_outside_levi = false;
    }

  return v;
}

/// Sum of W-orbit families of random dominant rational vectors plus a
/// constant translation; positive orthogonal by construction (asserted).
inline GAOrthSet random_positive(const RootSystem& rs, int num_orbits,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> height(0, 3);
  std::uniform_int_distribution<long> shift(-2, 2);
  const auto& simple = rs.simple_indices();
  QMatrix m(simple.size(), rs.ambient_dim());
  for (size_t k = 0; k < simple.size(); ++k)
    for (int j = 0; j < rs.ambient_dim(); ++j) m(k, j) = rs.coroot(simple[k])[j];

  QVec base(rs.ambient_dim(), Rat(0));
  for (int j = 0; j < rs.ambient_dim(); ++j) base[j] = Rat(shift(rng));
  GAOrthSet x = constant_family(rs, base);
  for (int o = 0; o < num_orbits; ++o) {
    QVec rhs(simple.size());
    for (size_t k = 0; k < simple.size(); ++k) rhs[k] = Rat(height(rng));
    x = x + orbit_family(rs, detail::solve_linear(m, rhs));
  }
  if (!is_positive_orthogonal(x))
    throw std::logic_error("random_positive: constructed family not positive");
  return x;
}

/// Every Q-closed symmetric subset of the roots (the Levi subsystems).
inline std::vector<LeviSpec> all_levis(const RootSystem& rs) {
  std::vector<int> pos;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (a < rs.negative_of(a)) pos.push_back(a);
  std::vector<LeviSpec> out;
  for (RootSet mask = 0; mask < (RootSet(1) << pos.size()); ++mask) {
    RootSet s = 0;
    for (size_t i = 0; i < pos.size(); ++i)
      if (mask & (RootSet(1) << i)) {
        s = set_insert(s, pos[i]);
        s = set_insert(s, rs.negative_of(pos[i]));
      }
    if (rs.is_Q_closed(s)) out.push_back(LeviSpec{s});
  }
  return out;
}

}  // namespace rvl
