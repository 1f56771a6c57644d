#ifndef RVL_VALUATION_FUNCTIONS_HPP
#define RVL_VALUATION_FUNCTIONS_HPP

#include <array>
#include <random>
#include <stdexcept>
#include <vector>

#include "rvl/root_system.hpp"

namespace rvl {

/// Root valuation function test: r(-a) = r(a) and every super-level set
/// R_n = { a : r(a) >= n } is Q-closed.  Only thresholds between the attained
/// values (plus one above the maximum) need checking.
inline bool is_root_valuation_function(const RootSystem& rs, const RootFunction& r) {
  if (!r.is_symmetric()) return false;
  for (long n = r.min_value(); n <= r.max_value() + 1; ++n)
    if (!rs.is_Q_closed(r.level_set(n))) return false;
  return true;
}

/// Non-archimedean: r(-a) = r(a) and r(a+b) >= min(r(a), r(b)) for root sums.
inline bool is_non_archimedean(const RootSystem& rs, const RootFunction& r) {
  if (!r.is_symmetric()) return false;
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b) {
      int c = rs.sum_index(a, b);
      if (c >= 0 && r(c) < std::min(r(a), r(b))) return false;
    }
  return true;
}

/// r_m(a) = max { r(b) : b not strongly orthogonal to a }.
inline RootFunction r_m(const RootSystem& rs, const RootFunction& r) {
  RootFunction out(rs);
  for (int a = 0; a < rs.num_roots(); ++a) {
    bool first = true;
    long m = 0;
    for (int b = 0; b < rs.num_roots(); ++b) {
      if (rs.strongly_orthogonal(a, b)) continue;
      if (first || r(b) > m) m = r(b);
      first = false;
    }
    if (first) throw std::logic_error("r_m: empty non-strongly-orthogonal set");
    out.at(a) = m;
  }
  return out;
}

struct RPrimeReport {
  bool all_pass = false;
  bool rprime_non_archimedean = false;
  std::vector<std::pair<long, bool>> thresholds;  // (n, R'_n == (R_{1-n})^perp)
};

/// Verifies R'_n = (R_{1-n})^perp for r' = -r_m, across every threshold where
/// either side can change, and that r' is non-archimedean.
inline RPrimeReport check_rprime(const RootSystem& rs, const RootFunction& r) {
  if (!is_non_archimedean(rs, r))
    throw std::invalid_argument("check_rprime requires a non-archimedean function");
  RootFunction rm = r_m(rs, r);
  RootFunction rprime(rs);
  for (int i = 0; i < rs.num_roots(); ++i) rprime.at(i) = -rm(i);

  RPrimeReport rep;
  rep.rprime_non_archimedean = is_non_archimedean(rs, rprime);
  rep.all_pass = rep.rprime_non_archimedean;
  long lo = std::min(rprime.min_value(), 1 - r.max_value());
  long hi = std::max(rprime.max_value(), 1 - r.min_value()) + 1;
  for (long n = lo; n <= hi; ++n) {
    bool ok = rprime.level_set(n) == rs.perp(r.level_set(1 - n));
    rep.thresholds.emplace_back(n, ok);
    rep.all_pass = rep.all_pass && ok;
  }
  return rep;
}

/// The four conclusions for a summing triple of roots (one equals the sum of
/// the other two), for non-archimedean r:
///   (1) pairwise non-strong-orthogonality,
///   (2) r(a)+r(b)-r(c) <= max of the three r-values,
///   (3) that max <= min of the three r_m-values,
///   (4) that min <= r_m(a)+r_m(b)-r_m(c).
inline std::array<bool, 4> check_k0prep(const RootSystem& rs, const RootFunction& r,
                                        int a, int b, int c) {
  bool summing = (rs.sum_index(a, b) == c) || (rs.sum_index(b, c) == a) ||
                 (rs.sum_index(a, c) == b);
  if (!summing)
    throw std::invalid_argument("check_k0prep: no root equals the sum of the other two");
  if (!is_non_archimedean(rs, r))
    throw std::invalid_argument("check_k0prep requires a non-archimedean function");
  RootFunction rm = r_m(rs, r);
  long mx = std::max({r(a), r(b), r(c)});
  long mn = std::min({rm(a), rm(b), rm(c)});
  return {
      !rs.strongly_orthogonal(a, b) && !rs.strongly_orthogonal(b, c) &&
          !rs.strongly_orthogonal(a, c),
      r(a) + r(b) - r(c) <= mx,
      mx <= mn,
      mn <= rm(a) + rm(b) - rm(c),
  };
}

/// Random root valuation function with values in [lo, hi].  Built from a
/// random decreasing chain of Q-closed subsets: each level set is obtained
/// as R intersected with the rational span of a random subset of the
/// previous one, which is automatically Q-closed.  Pure rejection is far too
/// sparse on the larger systems; the construction below always succeeds and
/// the result is still checked against the recognizer.
inline RootFunction sample_root_valuation_function(const RootSystem& rs,
                                                   std::mt19937_64& rng, long lo,
                                                   long hi) {
  std::uniform_int_distribution<int> keep(0, 3);
  RootFunction r(rs, lo);
  RootSet level = rs.full_set();
  for (long v = lo; v < hi; ++v) {
    std::vector<int> kept;
    for (int i = 0; i < rs.num_roots(); ++i)
      if (set_contains(level, i) && keep(rng) != 0) kept.push_back(i);
    if (kept.empty()) break;
    // R ∩ span_Q(kept): Q-closed, contained in the previous (Q-closed) level
    QMatrix span(kept.size(), rs.ambient_dim());
    for (size_t i = 0; i < kept.size(); ++i)
      for (int j = 0; j < rs.ambient_dim(); ++j) span(i, j) = Rat(rs.root(kept[i])[j]);
    size_t base_rank = rank(span);
    RootSet next = 0;
    for (int i = 0; i < rs.num_roots(); ++i) {
      if (!set_contains(level, i)) continue;
      QMatrix ext(kept.size() + 1, rs.ambient_dim());
      for (size_t k = 0; k < kept.size(); ++k)
        for (int j = 0; j < rs.ambient_dim(); ++j) ext(k, j) = Rat(rs.root(kept[k])[j]);
      for (int j = 0; j < rs.ambient_dim(); ++j) ext(kept.size(), j) = Rat(rs.root(i)[j]);
      if (rank(ext) == base_rank) next = set_insert(next, i);
    }
    if (next == 0) break;
    level = next;
    for (int i = 0; i < rs.num_roots(); ++i)
      if (set_contains(level, i)) ++r.at(i);
  }
  if (!is_root_valuation_function(rs, r))
    throw std::logic_error("constructed function failed the recognizer");
  return r;
}

}  // namespace rvl

#endif
