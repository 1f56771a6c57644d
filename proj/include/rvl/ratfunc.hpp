#ifndef RVL_RATFUNC_HPP
#define RVL_RATFUNC_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

#include "rvl/extrat.hpp"
#include "rvl/poly.hpp"

namespace rvl {

/// Element of Q(e), the field of rational functions in the uniformizer e.
///
/// Normal form: value = e^order * num/den where num, den are polynomials with
/// nonzero constant term, gcd(num, den) = 1, and den has constant term 1.
/// Zero is represented uniquely by num = 0, den = 1, order = 0.  Equal values
/// therefore compare equal componentwise, and the valuation is an O(1) read.
class RatFunc {
 public:
  RatFunc() : order_(0), num_(), den_(Rat(1)) {}
  RatFunc(Rat c) : RatFunc(Poly(std::move(c)), Poly(Rat(1))) {}
  RatFunc(long c) : RatFunc(Rat(c)) {}
  RatFunc(Poly num, Poly den = Poly(Rat(1))) { normalize(std::move(num), std::move(den), 0); }

  static RatFunc monomial(const Rat& c, int deg) {
    RatFunc f;
    if (c == 0) return f;
    f.order_ = deg;
    f.num_ = Poly(c);
    f.den_ = Poly(Rat(1));
    return f;
  }
  static RatFunc uniformizer_pow(int k) { return monomial(Rat(1), k); }

  bool is_zero() const { return num_.is_zero(); }

  /// Valuation at e = 0; infinity iff the element is zero.
  ExtRat val() const {
    if (is_zero()) return ExtRat::infinity();
    return ExtRat(Rat(order_));
  }
  /// Finite valuation of a nonzero element.
  int order() const {
    if (is_zero()) throw std::logic_error("order of zero");
    return order_;
  }

  const Poly& unit_num() const { return num_; }
  const Poly& unit_den() const { return den_; }

  RatFunc operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int m = std::min(order_, o.order_);
    Poly a = num_.shift(order_ - m) * o.den_;
    Poly b = o.num_.shift(o.order_ - m) * den_;
    RatFunc r;
    r.normalize(a + b, den_ * o.den_, m);
    return r;
  }
  RatFunc operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
  }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    RatFunc r;
    r.normalize(num_ * o.num_, den_ * o.den_, order_ + o.order_);
    return r;
  }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::invalid_argument("division by zero in Q(e)");
    if (is_zero()) return RatFunc();
    RatFunc r;
    r.normalize(num_ * o.den_, den_ * o.num_, order_ - o.order_);
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  bool operator==(const RatFunc& o) const {
    return order_ == o.order_ && num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  /// True iff the value lies in O = Q[[e]] ∩ Q(e), i.e. val >= 0.
  bool is_integral() const { return is_zero() || order_ >= 0; }
  /// True iff val == 0.
  bool is_unit() const { return !is_zero() && order_ == 0; }

  /// Power-series coefficient of e^k (expansion at the origin).
  Rat series_coeff(int k) const {
    if (is_zero() || k < order_) return Rat(0);
    // synthetic division of num by den up to the needed length
    int len = k - order_ + 1;
    std::vector<Rat> q(len, Rat(0));
    for (int i = 0; i < len; ++i) {
      Rat s = num_.coeff(i);
      for (int j = 1; j <= i; ++j) s -= den_.coeff(j) * q[i - j];
      q[i] = s / den_.coeff(0);
    }
    return q[len - 1];
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string core = num_.str();
    if (num_.degree() > 0) core = "(" + core + ")";
    if (den_ != Poly(Rat(1))) core += "/(" + den_.str() + ")";
    if (order_ != 0) {
      std::string p = "e^" + std::to_string(order_);
      if (order_ == 1) p = "e";
      core = (core == "1") ? p : p + "*" + core;
    }
    return core;
  }

 private:
  void normalize(Poly num, Poly den, int base_order) {
    if (den.is_zero()) throw std::invalid_argument("zero denominator in Q(e)");
    if (num.is_zero()) {
      order_ = 0;
      num_ = Poly();
      den_ = Poly(Rat(1));
      return;
    }
    int on = num.order(), od = den.order();
    num = num.shift(-on);
    den = den.shift(-od);
    Poly g = Poly::gcd(num, den);
    num = num.divmod(g).first;
    den = den.divmod(g).first;
    Rat c0 = den.coeff(0);
    num_ = num * (Rat(1) / c0);
    den_ = den * (Rat(1) / c0);
    order_ = base_order + on - od;
  }

  int order_;
  Poly num_;
  Poly den_;
};

inline ExtRat val(const RatFunc& f) { return f.val(); }

namespace detail {

/// Recursive-descent parser for Q(e) expressions:
///   expr  := term (('+'|'-') term)*
///   term  := factor (('*'|'/') factor)*
///   factor:= ('-'|'+')* atom ('^' integer)?
///   atom  := rational | 'e' | '(' expr ')'
class RatFuncParser {
 public:
  explicit RatFuncParser(const std::string& s) : s_(s) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        r += term();
      } else if (peek() == '-') {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }
  RatFunc term() {
    RatFunc r = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        r *= factor();
      } else if (peek() == '/') {
        ++pos_;
        r /= factor();
      } else {
        return r;
      }
    }
  }
  RatFunc factor() {
    skip_ws();
    bool neg = false;
    while (peek() == '-' || peek() == '+') {
      if (peek() == '-') neg = !neg;
      ++pos_;
      skip_ws();
    }
    RatFunc a = atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      bool eneg = false;
      if (peek() == '-') {
        eneg = true;
        ++pos_;
      }
      long ex = integer();
      if (eneg) ex = -ex;
      a = pow(a, ex);
    }
    return neg ? -a : a;
  }
  RatFunc atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == 'e' && !std::isalnum(static_cast<unsigned char>(at(pos_ + 1)))) {
      ++pos_;
      return RatFunc::uniformizer_pow(1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long n = integer();
      skip_ws();
      if (peek() == '/' && rational_slash_ahead()) {
        ++pos_;
        long d = integer();
        if (d == 0) fail("zero denominator");
        return RatFunc(rat(n, d));
      }
      return RatFunc(Rat(n));
    }
    fail("unexpected character");
    return RatFunc();
  }

  static RatFunc pow(const RatFunc& a, long e) {
    if (e < 0) return RatFunc(Rat(1)) / pow(a, -e);
    RatFunc r(Rat(1)), b = a;
    for (long k = e; k > 0; k >>= 1) {
      if (k & 1) r *= b;
      b *= b;
    }
    return r;
  }

  // A '/' right after an integer denotes a rational literal only when followed
  // by another integer (e.g. "3/2"); "3/(e)" is field division.
  bool rational_slash_ahead() const {
    size_t p = pos_ + 1;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]));
  }

  long integer() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  char peek() const { return at(pos_); }
  char at(size_t p) const { return p < s_.size() ? s_[p] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("parse error in Q(e) expression at position " +
                                std::to_string(pos_) + ": " + why + " in \"" + s_ + "\"");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

/// Parses the CLI textual form, e.g. "(1 + 3/2*e^2)/(e - e^3)".
inline RatFunc parse_ratfunc(const std::string& s) {
  return detail::RatFuncParser(s).parse();
}

}  // namespace rvl

#endif
