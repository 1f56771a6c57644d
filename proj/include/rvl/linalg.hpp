#ifndef RVL_LINALG_HPP
#define RVL_LINALG_HPP

#include <cassert>
#include <stdexcept>
#include <vector>

#include "rvl/ratfunc.hpp"

namespace rvl {

/// Dense matrix over an exact field (RatFunc or Rat).
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix operator*(const Matrix& o) const {
    assert(cols_ == o.rows_);
    Matrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (size_t j = 0; j < o.cols_; ++j) {
          const T& b = o(k, j);
          if (b == T(0)) continue;
          r(i, j) += a * b;
        }
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
  }
  Matrix operator*(const T& c) const {
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    assert(v.size() == cols_);
    std::vector<T> out(rows_, T(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (!((*this)(i, j) == T(0))) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix submatrix(const std::vector<size_t>& rs, const std::vector<size_t>& cs) const {
    Matrix r(rs.size(), cs.size());
    for (size_t i = 0; i < rs.size(); ++i)
      for (size_t j = 0; j < cs.size(); ++j) r(i, j) = (*this)(rs[i], cs[j]);
    return r;
  }

 private:
  size_t rows_, cols_;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rat>;
using FMatrix = Matrix<RatFunc>;

/// Determinant by Gaussian elimination over the field.
template <class T>
T det(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
  size_t n = m.rows();
  T d(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m(piv, col) == T(0)) ++piv;
    if (piv == n) return T(0);
    if (piv != col) {
      for (size_t j = col; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = d * T(-1);
    }
    d = d * m(col, col);
    for (size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == T(0)) continue;
      T f = m(i, col) / m(col, col);
      for (size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return d;
}

/// Inverse over the field; throws if singular.
template <class T>
Matrix<T> inverse(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  size_t n = m.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m(piv, col) == T(0)) ++piv;
    if (piv == n) throw std::invalid_argument("inverse: singular matrix");
    if (piv != col)
      for (size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T p = m(col, col);
    for (size_t j = 0; j < n; ++j) {
      m(col, j) = m(col, j) / p;
      inv(col, j) = inv(col, j) / p;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col) == T(0)) continue;
      T f = m(i, col);
      for (size_t j = 0; j < n; ++j) {
        m(i, j) = m(i, j) - f * m(col, j);
        inv(i, j) = inv(i, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

template <class T>
size_t rank(Matrix<T> m) {
  size_t r = 0;
  for (size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    size_t piv = r;
    while (piv < m.rows() && m(piv, col) == T(0)) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    for (size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, col) == T(0)) continue;
      T f = m(i, col) / m(r, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Reduced row echelon form (canonical representative of the row space).
template <class T>
Matrix<T> rref(Matrix<T> m) {
  size_t r = 0;
  for (size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    size_t piv = r;
    while (piv < m.rows() && m(piv, col) == T(0)) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    T p = m(r, col);
    for (size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) / p;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, col) == T(0)) continue;
      T f = m(i, col);
      for (size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    ++r;
  }
  return m;
}

/// Characteristic polynomial coefficients (c_0 = 1 leading) via
/// Faddeev-LeVerrier: returns [a_0=1, a_1, ..., a_n] with
/// char(x) = a_0 x^n + a_1 x^{n-1} + ... + a_n.
inline std::vector<RatFunc> char_poly(const FMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: not square");
  size_t n = m.rows();
  std::vector<RatFunc> a(n + 1);
  a[0] = RatFunc(Rat(1));
  FMatrix mk = FMatrix::identity(n);  // M_0 = I
  for (size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    RatFunc tr;
    for (size_t i = 0; i < n; ++i) tr += mk(i, i);
    a[k] = tr * RatFunc(rat(-1, static_cast<long>(k)));
    for (size_t i = 0; i < n; ++i) mk(i, i) += a[k];
  }
  return a;
}

/// Elementary-divisor valuations of a matrix over O inside Q(e): returns the
/// non-decreasing list of valuations of the Smith normal form diagonal, with
/// rank-deficiency contributing infinite entries.  Pivots on the
/// minimal-valuation entry, ties broken by lowest row then column index.
inline std::vector<ExtRat> smith_valuations(FMatrix m) {
  size_t n = std::min(m.rows(), m.cols());
  std::vector<ExtRat> out;
  size_t top = 0;
  while (top < n) {
    // locate minimal-valuation pivot in the active block
    bool found = false;
    size_t pi = 0, pj = 0;
    int best = 0;
    for (size_t i = top; i < m.rows(); ++i)
      for (size_t j = top; j < m.cols(); ++j) {
        if (m(i, j).is_zero()) continue;
        int v = m(i, j).order();
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    if (pi != top)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(pi, j), m(top, j));
    if (pj != top)
      for (size_t i = 0; i < m.rows(); ++i) std::swap(m(i, pj), m(i, top));
    const RatFunc piv = m(top, top);
    for (size_t i = top + 1; i < m.rows(); ++i) {
      if (m(i, top).is_zero()) continue;
      RatFunc f = m(i, top) / piv;  // in O since piv has minimal valuation
      for (size_t j = top; j < m.cols(); ++j) m(i, j) -= f * m(top, j);
    }
    for (size_t j = top + 1; j < m.cols(); ++j) {
      if (m(top, j).is_zero()) continue;
      RatFunc f = m(top, j) / piv;
      for (size_t i = top; i < m.rows(); ++i) m(i, j) -= f * m(i, top);
    }
    out.push_back(ExtRat(Rat(best)));
    ++top;
  }
  while (out.size() < n) out.push_back(ExtRat::infinity());
  return out;
}

}  // namespace rvl

#endif
