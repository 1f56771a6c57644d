#ifndef RVL_QTUPLE_HPP
#define RVL_QTUPLE_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvl/extrat.hpp"
#include "rvl/mutation.hpp"

namespace rvl {

/// Non-decreasing tuple in the extended rationals (Newton/Hodge points live here).
class QTuple {
 public:
  QTuple() = default;
  explicit QTuple(std::vector<ExtRat> entries, bool presorted = false)
      : entries_(std::move(entries)) {
    if (!presorted) std::sort(entries_.begin(), entries_.end());
    for (size_t i = 0; i + 1 < entries_.size(); ++i)
      if (entries_[i + 1] < entries_[i])
        throw std::invalid_argument("QTuple entries not non-decreasing");
  }

  size_t size() const { return entries_.size(); }
  const ExtRat& operator[](size_t i) const { return entries_[i]; }
  const std::vector<ExtRat>& entries() const { return entries_; }

  bool operator==(const QTuple& o) const { return entries_ == o.entries_; }
  bool operator!=(const QTuple& o) const { return !(*this == o); }

  ExtRat partial_sum(size_t i) const {  // sum of the first i entries
    ExtRat s(Rat(0));
    for (size_t j = 0; j < i; ++j) s += entries_[j];
    return s;
  }

  std::string str() const {
    std::string out = "(";
    for (size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ", ";
      out += entries_[i].str();
    }
    return out + ")";
  }

 private:
  std::vector<ExtRat> entries_;
};

/// The dominance order "mu >= nu": partial sums of mu are <= those of nu for
/// i < n, and the full sums agree.  Increasing tuples are dominant (lower
/// triangular Borel convention).
inline bool dominance_geq(const QTuple& mu, const QTuple& nu) {
  if (mu.size() != nu.size())
    throw std::invalid_argument("dominance_geq: length mismatch");
  size_t n = mu.size();
  ExtRat sm(Rat(0)), sn(Rat(0));
  for (size_t i = 0; i + 1 < n; ++i) {
    sm += mu[i];
    sn += nu[i];
    ExtRat lhs = sm;
    if (mutation::dominance_off_by_one) lhs = lhs + ExtRat(Rat(1));
    if (!(lhs <= sn)) return false;
  }
  if (n > 0) {
    sm += mu[n - 1];
    sn += nu[n - 1];
  }
  return sm == sn;
}

}  // namespace rvl

#endif
