#ifndef RVL_ROOT_SYSTEM_HPP
#define RVL_ROOT_SYSTEM_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvl/linalg.hpp"
#include "rvl/rational.hpp"

namespace rvl {

/// Subset of roots as a bitmask over root indices (|R| <= 64 for all
/// supported systems).
using RootSet = std::uint64_t;

inline std::vector<long> operator*(std::vector<long> v, long c) {
  for (auto& x : v) x *= c;
  return v;
}
inline std::vector<long> operator+(std::vector<long> a, const std::vector<long>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline std::vector<long> operator-(std::vector<long> a, const std::vector<long>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline bool set_contains(RootSet s, int i) { return (s >> i) & 1u; }
inline RootSet set_insert(RootSet s, int i) { return s | (RootSet(1) << i); }

/// A Weyl group element, stored as the induced permutation of root indices
/// together with a reduced word in the simple reflections.
struct WeylElement {
  std::vector<int> perm;       // image index of each root
  std::vector<int> word;       // indices into simple_indices
  bool is_identity() const {
    for (size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != static_cast<int>(i)) return false;
    return true;
  }
};

/// Root system data for types A (rank 1..6), B/C (2..4), D (4) and G2,
/// realized by integer vectors in a standard ambient space.  Immutable after
/// construction; all tables are precomputed.
class RootSystem {
 public:
  static RootSystem build(char cartan_type, int rank) {
    RootSystem rs;
    rs.type_ = cartan_type;
    rs.rank_ = rank;
    switch (cartan_type) {
      case 'A': {
        if (rank < 1 || rank > 6) throw std::invalid_argument("type A rank must be 1..6");
        rs.ambient_ = rank + 1;
        for (int i = 0; i < rank + 1; ++i)
          for (int j = 0; j < rank + 1; ++j)
            if (i != j) rs.add_root(unit(rank + 1, i) - unit(rank + 1, j));
        for (int i = 0; i < rank; ++i)
          rs.simple_.push_back(rs.index_of(unit(rank + 1, i) - unit(rank + 1, i + 1)));
        break;
      }
      case 'B': {
        if (rank < 2 || rank > 4) throw std::invalid_argument("type B rank must be 2..4");
        rs.ambient_ = rank;
        for (int i = 0; i < rank; ++i)
          for (int j = i + 1; j < rank; ++j)
            for (int si : {1, -1})
              for (int sj : {1, -1}) rs.add_root(unit(rank, i) * si + unit(rank, j) * sj);
        for (int i = 0; i < rank; ++i)
          for (int s : {1, -1}) rs.add_root(unit(rank, i) * s);
        for (int i = 0; i + 1 < rank; ++i)
          rs.simple_.push_back(rs.index_of(unit(rank, i) - unit(rank, i + 1)));
        rs.simple_.push_back(rs.index_of(unit(rank, rank - 1)));
        break;
      }
      case 'C': {
        if (rank < 2 || rank > 4) throw std::invalid_argument("type C rank must be 2..4");
        rs.ambient_ = rank;
        for (int i = 0; i < rank; ++i)
          for (int j = i + 1; j < rank; ++j)
            for (int si : {1, -1})
              for (int sj : {1, -1}) rs.add_root(unit(rank, i) * si + unit(rank, j) * sj);
        for (int i = 0; i < rank; ++i)
          for (int s : {1, -1}) rs.add_root(unit(rank, i) * (2 * s));
        for (int i = 0; i + 1 < rank; ++i)
          rs.simple_.push_back(rs.index_of(unit(rank, i) - unit(rank, i + 1)));
        rs.simple_.push_back(rs.index_of(unit(rank, rank - 1) * 2));
        break;
      }
      case 'D': {
        if (rank != 4) throw std::invalid_argument("type D rank must be 4");
        rs.ambient_ = rank;
        for (int i = 0; i < rank; ++i)
          for (int j = i + 1; j < rank; ++j)
            for (int si : {1, -1})
              for (int sj : {1, -1}) rs.add_root(unit(rank, i) * si + unit(rank, j) * sj);
        for (int i = 0; i + 1 < rank; ++i)
          rs.simple_.push_back(rs.index_of(unit(rank, i) - unit(rank, i + 1)));
        rs.simple_.push_back(rs.index_of(unit(rank, rank - 2) + unit(rank, rank - 1)));
        break;
      }
      case 'G': {
        if (rank != 2) throw std::invalid_argument("type G rank must be 2");
        rs.ambient_ = 3;
        // short roots e_i - e_j, long roots 2e_i - e_j - e_k inside sum-zero space
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            if (i != j) rs.add_root(unit(3, i) - unit(3, j));
        for (int i = 0; i < 3; ++i) {
          Vec v(3, 0);
          for (int j = 0; j < 3; ++j) v[j] = (j == i) ? 2 : -1;
          rs.add_root(v);
          rs.add_root(v * -1);
        }
        rs.simple_.push_back(rs.index_of(unit(3, 0) - unit(3, 1)));
        {
          Vec v(3, 0);
          v[0] = -2;
          v[1] = 1;
          v[2] = 1;
          rs.simple_.push_back(rs.index_of(v));
        }
        break;
      }
      default:
        throw std::invalid_argument(std::string("unsupported Cartan type: ") + cartan_type);
    }
    rs.finish_tables();
    return rs;
  }

  char cartan_type() const { return type_; }
  int rank() const { return rank_; }
  int ambient_dim() const { return ambient_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }

  const std::vector<long>& root(int i) const { return roots_[i]; }
  const std::vector<Rat>& coroot(int i) const { return coroots_[i]; }
  int negative_of(int i) const { return neg_[i]; }
  const std::vector<int>& simple_indices() const { return simple_; }

  /// <alpha_i, alpha_j^vee>
  long pairing(int i, int j) const { return pairing_[i][j]; }

  /// Index of alpha_i + alpha_j if it is a root, else -1.
  int sum_index(int i, int j) const { return sum_[i][j]; }

  int index_of(const std::vector<long>& v) const {
    auto it = lookup_.find(v);
    if (it == lookup_.end()) return -1;
    return it->second;
  }

  bool strongly_orthogonal(int a, int b) const { return strong_orth_[a][b]; }

  /// Plain orthogonality: pairing zero (equivalently the roots are
  /// perpendicular in the ambient metric).
  bool orthogonal(int a, int b) const { return pairing_[a][b] == 0; }

  RootSet full_set() const {
    return num_roots() == 64 ? ~RootSet(0) : (RootSet(1) << num_roots()) - 1;
  }

  /// S^perp: roots strongly orthogonal to every member of S.
  RootSet perp(RootSet s) const {
    RootSet out = 0;
    for (int b = 0; b < num_roots(); ++b) {
      bool ok = true;
      for (int a = 0; a < num_roots() && ok; ++a)
        if (set_contains(s, a) && !strong_orth_[b][a]) ok = false;
      if (ok) out = set_insert(out, b);
    }
    return out;
  }

  /// Z-closed: a, b in S and a+b a root implies a+b in S.
  bool is_Z_closed(RootSet s) const {
    for (int a = 0; a < num_roots(); ++a) {
      if (!set_contains(s, a)) continue;
      for (int b = 0; b < num_roots(); ++b) {
        if (!set_contains(s, b)) continue;
        int c = sum_[a][b];
        if (c >= 0 && !set_contains(s, c)) return false;
      }
    }
    return true;
  }

  /// Q-closed: R intersect span_Q(S) = S.
  bool is_Q_closed(RootSet s) const {
    std::vector<int> members;
    for (int i = 0; i < num_roots(); ++i)
      if (set_contains(s, i)) members.push_back(i);
    if (members.empty()) return true;
    QMatrix span(members.size(), ambient_);
    for (size_t i = 0; i < members.size(); ++i)
      for (int j = 0; j < ambient_; ++j) span(i, j) = Rat(roots_[members[i]][j]);
    size_t r = rvl::rank(span);
    for (int i = 0; i < num_roots(); ++i) {
      if (set_contains(s, i)) continue;
      QMatrix ext(members.size() + 1, ambient_);
      for (size_t k = 0; k < members.size(); ++k)
        for (int j = 0; j < ambient_; ++j) ext(k, j) = Rat(roots_[members[k]][j]);
      for (int j = 0; j < ambient_; ++j) ext(members.size(), j) = Rat(roots_[i][j]);
      if (rvl::rank(ext) == r) return false;  // root in the span but outside S
    }
    return true;
  }

  /// Full Weyl group, enumerated by closure of the simple reflections.
  /// Throws if the group size would exceed the cap.
  const std::vector<WeylElement>& weyl_elements(size_t cap = 100000) const {
    if (weyl_.empty()) enumerate_weyl(cap);
    return weyl_;
  }

  /// Composition of the induced root permutations: (vw)(alpha) = v(w(alpha)).
  WeylElement compose(const WeylElement& v, const WeylElement& w) const {
    WeylElement r;
    r.perm.resize(num_roots());
    for (int i = 0; i < num_roots(); ++i) r.perm[i] = v.perm[w.perm[i]];
    r.word = v.word;
    r.word.insert(r.word.end(), w.word.begin(), w.word.end());
    return r;
  }
  WeylElement inverse_elt(const WeylElement& w) const {
    WeylElement r;
    r.perm.resize(num_roots());
    for (int i = 0; i < num_roots(); ++i) r.perm[w.perm[i]] = i;
    r.word.assign(w.word.rbegin(), w.word.rend());
    return r;
  }
  WeylElement identity_elt() const {
    WeylElement e;
    e.perm.resize(num_roots());
    for (int i = 0; i < num_roots(); ++i) e.perm[i] = i;
    return e;
  }
  WeylElement simple_reflection(int k) const {
    WeylElement s;
    s.perm = reflection_perm(simple_[k]);
    s.word = {k};
    return s;
  }
  WeylElement from_word(const std::vector<int>& word) const {
    WeylElement w = identity_elt();
    for (int k : word) w = compose(w, simple_reflection(k));
    return w;
  }

 private:
  using Vec = std::vector<long>;

  static Vec unit(int n, int i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
  }

  void add_root(Vec v) {
    if (lookup_.count(v)) return;
    lookup_[v] = static_cast<int>(roots_.size());
    roots_.push_back(std::move(v));
  }

  void finish_tables() {
    int n = num_roots();
    coroots_.resize(n);
    neg_.resize(n);
    for (int i = 0; i < n; ++i) {
      long norm2 = 0;
      for (long c : roots_[i]) norm2 += c * c;
      coroots_[i].resize(ambient_);
      for (int j = 0; j < ambient_; ++j)
        coroots_[i][j] = rat(2 * roots_[i][j], norm2);
      Vec negv = roots_[i] * -1L;
      neg_[i] = index_of(negv);
      if (neg_[i] < 0) throw std::logic_error("root table not negation-closed");
    }
    pairing_.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat p(0);
        for (int k = 0; k < ambient_; ++k) p += Rat(roots_[i][k]) * coroots_[j][k];
        if (p.get_den() != 1) throw std::logic_error("non-integral root pairing");
        pairing_[i][j] = p.get_num().get_si();
      }
    sum_.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec s(roots_[i]);
        for (int k = 0; k < ambient_; ++k) s[k] += roots_[j][k];
        sum_[i][j] = index_of(s);
      }
    strong_orth_.assign(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        bool sum_in = (sum_[a][b] >= 0) || (b == neg_[a]);
        bool diff_in = (sum_[a][neg_[b]] >= 0) || (a == b);
        strong_orth_[a][b] = !sum_in && !diff_in;
      }
  }

  std::vector<int> reflection_perm(int root_idx) const {
    int n = num_roots();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) {
      // s_alpha(beta) = beta - <beta, alpha^vee> alpha
      Vec img(roots_[i]);
      long p = pairing_[i][root_idx];
      for (int k = 0; k < ambient_; ++k) img[k] -= p * roots_[root_idx][k];
      int idx = index_of(img);
      if (idx < 0) throw std::logic_error("reflection left the root set");
      perm[i] = idx;
    }
    return perm;
  }

  void enumerate_weyl(size_t cap) const {
    std::map<std::vector<int>, size_t> seen;
    std::vector<WeylElement> out;
    out.push_back(identity_elt());
    seen[out[0].perm] = 0;
    for (size_t head = 0; head < out.size(); ++head) {
      for (size_t k = 0; k < simple_.size(); ++k) {
        WeylElement next = compose(out[head], simple_reflection(static_cast<int>(k)));
        if (seen.count(next.perm)) continue;
        if (out.size() >= cap)
          throw std::runtime_error("Weyl group enumeration cap exceeded");
        seen[next.perm] = out.size();
        out.push_back(std::move(next));
      }
    }
    weyl_ = std::move(out);
  }

  char type_ = '?';
  int rank_ = 0;
  int ambient_ = 0;
  std::vector<Vec> roots_;
  std::vector<std::vector<Rat>> coroots_;
  std::vector<int> neg_;
  std::vector<int> simple_;
  std::vector<std::vector<long>> pairing_;
  std::vector<std::vector<int>> sum_;
  std::vector<std::vector<char>> strong_orth_;
  std::map<Vec, int> lookup_;
  mutable std::vector<WeylElement> weyl_;
};

/// Total integer-valued function on the roots of a fixed system.
struct RootFunction {
  const RootSystem* rs = nullptr;
  std::vector<long> values;  // indexed by root index

  RootFunction() = default;
  RootFunction(const RootSystem& system, long constant = 0)
      : rs(&system), values(system.num_roots(), constant) {}

  long operator()(int root_idx) const { return values[root_idx]; }
  long& at(int root_idx) { return values[root_idx]; }

  /// Sets the value on a root and its negative (the symmetric case).
  void set_symmetric(int root_idx, long v) {
    values[root_idx] = v;
    values[rs->negative_of(root_idx)] = v;
  }

  bool is_symmetric() const {
    for (int i = 0; i < rs->num_roots(); ++i)
      if (values[i] != values[rs->negative_of(i)]) return false;
    return true;
  }

  long max_value() const { return *std::max_element(values.begin(), values.end()); }
  long min_value() const { return *std::min_element(values.begin(), values.end()); }

  bool operator==(const RootFunction& o) const { return values == o.values; }
  bool operator!=(const RootFunction& o) const { return !(*this == o); }

  RootFunction operator+(long n) const {
    RootFunction r(*this);
    for (auto& v : r.values) v += n;
    return r;
  }
  RootFunction operator+(const RootFunction& o) const {
    RootFunction r(*this);
    for (size_t i = 0; i < values.size(); ++i) r.values[i] += o.values[i];
    return r;
  }
  RootFunction operator-(const RootFunction& o) const {
    RootFunction r(*this);
    for (size_t i = 0; i < values.size(); ++i) r.values[i] -= o.values[i];
    return r;
  }

  /// Super-level set R_n = { alpha : f(alpha) >= n }.
  RootSet level_set(long n) const {
    RootSet s = 0;
    for (int i = 0; i < rs->num_roots(); ++i)
      if (values[i] >= n) s = set_insert(s, i);
    return s;
  }
};

/// (wf)(alpha) = f(w^{-1} alpha).
inline RootFunction act(const RootSystem& rs, const WeylElement& w, const RootFunction& f) {
  WeylElement winv = rs.inverse_elt(w);
  RootFunction out(rs);
  for (int i = 0; i < rs.num_roots(); ++i) out.values[i] = f.values[winv.perm[i]];
  return out;
}

}  // namespace rvl

#endif
