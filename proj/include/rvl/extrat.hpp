#ifndef RVL_EXTRAT_HPP
#define RVL_EXTRAT_HPP

#include <compare>
#include <optional>
#include <string>

#include "rvl/rational.hpp"

namespace rvl {

/// Element of the extended rationals Q with a greatest element "infinity".
/// Addition absorbs infinity: x + inf = inf + x = inf.
class ExtRat {
 public:
  ExtRat() : finite_(Rat(0)) {}
  ExtRat(Rat v) : finite_(std::move(v)) {}
  ExtRat(long v) : finite_(Rat(v)) {}
  static ExtRat infinity() {
    ExtRat e;
    e.finite_.reset();
    return e;
  }

  bool is_infinite() const { return !finite_.has_value(); }
  bool is_finite() const { return finite_.has_value(); }
  const Rat& value() const { return *finite_; }

  ExtRat operator+(const ExtRat& o) const {
    if (is_infinite() || o.is_infinite()) return infinity();
    return ExtRat(*finite_ + *o.finite_);
  }
  ExtRat& operator+=(const ExtRat& o) { return *this = *this + o; }
  ExtRat operator-() const {
    if (is_infinite()) return infinity();  // only used for sort-order tricks
    return ExtRat(-*finite_);
  }

  bool operator==(const ExtRat& o) const {
    if (is_infinite() != o.is_infinite()) return false;
    return is_infinite() || *finite_ == *o.finite_;
  }
  bool operator!=(const ExtRat& o) const { return !(*this == o); }
  bool operator<(const ExtRat& o) const {
    if (is_infinite()) return false;
    if (o.is_infinite()) return true;
    return *finite_ < *o.finite_;
  }
  bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }
  bool operator>(const ExtRat& o) const { return o < *this; }
  bool operator>=(const ExtRat& o) const { return o <= *this; }

  std::string str() const { return is_infinite() ? "inf" : to_string(*finite_); }

 private:
  std::optional<Rat> finite_;  // nullopt encodes infinity
};

inline ExtRat extrat_add(const ExtRat& a, const ExtRat& b) { return a + b; }

inline int extrat_cmp(const ExtRat& a, const ExtRat& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace rvl

#endif
