#ifndef RVL_POLY_HPP
#define RVL_POLY_HPP

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvl/rational.hpp"

namespace rvl {

/// Dense polynomial in the uniformizer with rational coefficients.
/// Invariant: no trailing zero coefficient (the zero polynomial is empty).
class Poly {
 public:
  Poly() = default;
  explicit Poly(Rat c) {
    if (c != 0) coeffs_.push_back(std::move(c));
  }
  explicit Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly monomial(const Rat& c, int deg) {
    if (c == 0) return Poly();
    std::vector<Rat> v(deg + 1, Rat(0));
    v[deg] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for 0

  /// Order of vanishing at the origin; -1 for the zero polynomial.
  int order() const {
    for (size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  const Rat& coeff(int i) const {
    static const Rat zero(0);
    if (i < 0 || i > degree()) return zero;
    return coeffs_[i];
  }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  Poly operator+(const Poly& o) const {
    std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return Poly(std::move(v));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator-() const {
    std::vector<Rat> v(coeffs_);
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> v(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      for (size_t j = 0; j < o.coeffs_.size(); ++j)
        if (o.coeffs_[j] != 0) v[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return Poly(std::move(v));
  }
  Poly operator*(const Rat& c) const {
    if (c == 0) return Poly();
    std::vector<Rat> v(coeffs_);
    for (auto& x : v) x *= c;
    return Poly(std::move(v));
  }

  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Shift by a power of the uniformizer; k must be >= -order() unless zero.
  Poly shift(int k) const {
    if (is_zero()) return Poly();
    if (k == 0) return *this;
    if (k > 0) {
      std::vector<Rat> v(coeffs_.size() + k, Rat(0));
      std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + k);
      return Poly(std::move(v));
    }
    assert(order() >= -k);
    return Poly(std::vector<Rat>(coeffs_.begin() - k, coeffs_.end()));
  }

  /// Euclidean division: returns (quotient, remainder).
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rat> rem(coeffs_);
    int dd = d.degree();
    const Rat& lead = d.coeffs_.back();
    if (degree() < dd) return {Poly(), *this};
    std::vector<Rat> quot(coeffs_.size() - dd, Rat(0));
    for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
      if (rem[i] == 0) continue;
      Rat q = rem[i] / lead;
      quot[i - dd] = q;
      for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * d.coeffs_[j];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  /// Monic gcd.
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (Rat(1) / a.coeffs_.back());
  }

  std::string str(const std::string& var = "e") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= degree(); ++i) {
      if (coeffs_[i] == 0) continue;
      Rat c = coeffs_[i];
      bool neg = c < 0;
      if (!out.empty())
        out += neg ? " - " : " + ";
      else if (neg)
        out += "-";
      Rat a = neg ? Rat(-c) : c;
      if (i == 0) {
        out += to_string(a);
      } else {
        if (a != 1) out += to_string(a) + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rat> coeffs_;
};

}  // namespace rvl

#endif
