#pragma once

// Dense row-major matrices over a scalar backend, plus the elimination routines
// (RREF, null space, inverse) everything else is built on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mhx/errors.hpp"
#include "mhx/kernels.hpp"
#include "mhx/scalar.hpp"

namespace mhx {

template <class S>
using Vec = std::vector<S>;

template <class S>
double max_abs(const Vec<S>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, ScalarTraits<S>::magnitude(x));
  return m;
}

template <class S>
Vec<S> conj(const Vec<S>& v) {
  Vec<S> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = ScalarTraits<S>::conj(v[i]);
  return r;
}

/// Residual threshold for float containment/equality tests, relative to `scale`.
inline double residual_tol(double scale) { return 100.0 * tolerance() * std::max(1.0, scale); }

template <class S>
bool vec_is_zero(const Vec<S>& v, double scale = 0) {
  if constexpr (ScalarTraits<S>::exact) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  } else {
    return max_abs(v) <= residual_tol(scale);
  }
}

template <class S>
class Matrix {
  using T = ScalarTraits<S>;

 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols, T::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T::one();
    return m;
  }
  static Matrix from_columns(std::size_t n, const std::vector<Vec<S>>& cols) {
    Matrix m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
  }
  static Matrix from_rows(std::size_t n, const std::vector<Vec<S>>& rows) {
    Matrix m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  S& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
  S* row_ptr(std::size_t i) { return d_.data() + i * c_; }
  const S* row_ptr(std::size_t i) const { return d_.data() + i * c_; }

  Vec<S> column(std::size_t j) const {
    Vec<S> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec<S> row(std::size_t i) const { return Vec<S>(row_ptr(i), row_ptr(i) + c_); }
  std::vector<Vec<S>> columns() const {
    std::vector<Vec<S>> out;
    for (std::size_t j = 0; j < c_; ++j) out.push_back(column(j));
    return out;
  }

  Vec<S> apply(const Vec<S>& v) const {
    if (v.size() != c_) throw DimensionMismatch("matrix-vector size mismatch");
    Vec<S> out(r_, T::zero());
    for (std::size_t i = 0; i < r_; ++i) {
      if constexpr (T::exact) {
        S acc = T::zero();
        for (std::size_t j = 0; j < c_; ++j)
          if (!(*this)(i, j).is_zero() && !v[j].is_zero()) acc += (*this)(i, j) * v[j];
        out[i] = acc;
      } else {
        out[i] = kernels::dot(c_, row_ptr(i), v.data());
      }
    }
    return out;
  }

  Matrix operator*(const Matrix& b) const {
    if (c_ != b.r_) throw DimensionMismatch("matrix product size mismatch");
    Matrix out(r_, b.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const S& a = (*this)(i, k);
        if constexpr (T::exact) {
          if (a.is_zero()) continue;
          for (std::size_t j = 0; j < b.c_; ++j)
            if (!b(k, j).is_zero()) out(i, j) += a * b(k, j);
        } else {
          if (a == S{}) continue;
          kernels::axpy(b.c_, a, b.row_ptr(k), out.row_ptr(i));
        }
      }
    return out;
  }
  Matrix operator+(const Matrix& b) const {
    check_same(b);
    Matrix out = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) out.d_[i] += b.d_[i];
    return out;
  }
  Matrix operator-(const Matrix& b) const {
    check_same(b);
    Matrix out = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) out.d_[i] -= b.d_[i];
    return out;
  }
  Matrix scaled(const S& s) const {
    Matrix out = *this;
    for (auto& x : out.d_) x *= s;
    return out;
  }
  Matrix conj() const {
    Matrix out = *this;
    for (auto& x : out.d_) x = T::conj(x);
    return out;
  }
  Matrix transpose() const {
    Matrix out(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& x : d_) m = std::max(m, T::magnitude(x));
    return m;
  }
  bool is_zero_exact() const {
    for (const auto& x : d_)
      if (!(x == T::zero())) return false;
    return true;
  }
  bool is_real() const {
    for (const auto& x : d_)
      if (!T::is_zero(x - T::conj(x), residual_tol(max_abs()))) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }

 private:
  void check_same(const Matrix& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw DimensionMismatch("matrix shape mismatch");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<S> d_;
};

/// Exact: identically zero. Float: max entry ≤ residual_tol(scale).
template <class S>
bool is_negligible(const Matrix<S>& m, double scale = 0) {
  if constexpr (ScalarTraits<S>::exact)
    return m.is_zero_exact();
  else
    return m.max_abs() <= residual_tol(scale);
}

template <class S>
bool approx_equal(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (ScalarTraits<S>::exact)
    return a == b;
  else
    return (a - b).max_abs() <= residual_tol(std::max(a.max_abs(), b.max_abs()));
}

template <class S>
double distance(const Matrix<S>& a, const Matrix<S>& b) {
  return (a - b).max_abs();
}

/// In-place reduced row echelon form. Returns pivot columns in order; rows past
/// the rank are dropped. Float pivots must exceed ε·(largest input entry), or
/// ε·ref_scale when the caller knows the entries came from larger data.
template <class S>
std::vector<std::size_t> rref(Matrix<S>& m, double ref_scale = 0) {
  using T = ScalarTraits<S>;
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> pivots;
  double thresh = 0;
  if constexpr (!T::exact) {
    thresh = tolerance() * std::max(m.max_abs(), ref_scale);
    if (m.max_abs() <= thresh) {
      m = Matrix<S>(0, C);
      return pivots;
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < C && rank < R; ++c) {
    std::size_t best = R;
    if constexpr (T::exact) {
      for (std::size_t r = rank; r < R; ++r)
        if (!m(r, c).is_zero()) {
          best = r;
          break;
        }
    } else {
      double bestmag = thresh;
      for (std::size_t r = rank; r < R; ++r) {
        double mag = std::abs(m(r, c));
        if (mag > bestmag) {
          bestmag = mag;
          best = r;
        }
      }
    }
    if (best == R) continue;
    if (best != rank)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(best, j), m(rank, j));
    S inv = T::one() / m(rank, c);
    for (std::size_t j = c; j < C; ++j) m(rank, j) *= inv;
    m(rank, c) = T::one();
    for (std::size_t r = 0; r < R; ++r) {
      if (r == rank) continue;
      S f = m(r, c);
      if constexpr (T::exact) {
        if (f.is_zero()) continue;
        for (std::size_t j = c; j < C; ++j)
          if (!m(rank, j).is_zero()) m(r, j) -= f * m(rank, j);
      } else {
        if (f == S{}) continue;
        kernels::axpy(C - c, -f, m.row_ptr(rank) + c, m.row_ptr(r) + c);
        m(r, c) = T::zero();
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  Matrix<S> out(rank, C);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = m(i, j);
  m = std::move(out);
  return pivots;
}

template <class S>
std::size_t rank(Matrix<S> m) {
  return rref(m).size();
}

/// Basis of {x : m·x = 0}, one vector per free column (free entry = 1).
template <class S>
std::vector<Vec<S>> null_space(Matrix<S> m) {
  using T = ScalarTraits<S>;
  const std::size_t C = m.cols();
  if constexpr (!T::exact) {
    // complete pivoting: the rank decision and back-substitution are far more stable
    const std::size_t R = m.rows();
    const double thresh = tolerance() * m.max_abs();
    std::vector<std::size_t> perm(C);
    for (std::size_t j = 0; j < C; ++j) perm[j] = j;
    std::size_t rank = 0;
    for (; rank < std::min(R, C); ++rank) {
      std::size_t br = R, bc = C;
      double best = thresh;
      for (std::size_t r = rank; r < R; ++r)
        for (std::size_t c = rank; c < C; ++c)
          if (std::abs(m(r, c)) > best) {
            best = std::abs(m(r, c));
            br = r;
            bc = c;
          }
      if (br == R) break;
      for (std::size_t j = 0; j < C; ++j) std::swap(m(rank, j), m(br, j));
      for (std::size_t r = 0; r < R; ++r) std::swap(m(r, rank), m(r, bc));
      std::swap(perm[rank], perm[bc]);
      S inv = T::one() / m(rank, rank);
      for (std::size_t j = rank; j < C; ++j) m(rank, j) *= inv;
      m(rank, rank) = T::one();
      for (std::size_t r = 0; r < R; ++r) {
        if (r == rank) continue;
        S f = m(r, rank);
        if (f == S(0)) continue;
        for (std::size_t j = rank; j < C; ++j) m(r, j) -= f * m(rank, j);
        m(r, rank) = S(0);
      }
    }
    std::vector<Vec<S>> out;
    for (std::size_t f = rank; f < C; ++f) {
      Vec<S> v(C, T::zero());
      v[perm[f]] = T::one();
      for (std::size_t i = 0; i < rank; ++i) v[perm[i]] = -m(i, f);
      out.push_back(std::move(v));
    }
    return out;
  }
  auto piv = rref(m);
  std::vector<bool> is_piv(C, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<Vec<S>> out;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_piv[f]) continue;
    Vec<S> v(C, T::zero());
    v[f] = T::one();
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  using T = ScalarTraits<S>;
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("inverse of non-square matrix");
  Matrix<S> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T::one();
  }
  auto piv = rref(aug);
  if (piv.size() != n || (n > 0 && piv.back() != n - 1)) throw VerificationFailure("matrix is singular");
  Matrix<S> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class S>
Matrix<S> power(const Matrix<S>& a, std::size_t k) {
  Matrix<S> r = Matrix<S>::identity(a.rows());
  for (std::size_t i = 0; i < k; ++i) r = r * a;
  return r;
}

/// Smallest k with a^k = 0; throws NilpotencyError if a^dim ≠ 0.
template <class S>
std::size_t nilpotency_order(const Matrix<S>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("nilpotency of non-square matrix");
  const double scale = std::max(1.0, a.max_abs());
  Matrix<S> p = Matrix<S>::identity(n);
  double s = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (is_negligible(p, s)) return k;
    p = p * a;
    s *= scale;
  }
  throw NilpotencyError("operator is not nilpotent");
}

/// Σ_{j<n} (s·a)^j / j!  for nilpotent a (n = dim, so the series is complete).
template <class S>
Matrix<S> exp_nilpotent(const Matrix<S>& a, const S& s) {
  using T = ScalarTraits<S>;
  nilpotency_order(a);  // throws unless a^n vanishes
  const std::size_t n = a.rows();
  Matrix<S> sa = a.scaled(s);
  Matrix<S> term = Matrix<S>::identity(n), result = term;
  for (std::size_t j = 1; j < n; ++j) {
    term = (term * sa).scaled(T::one() / S(static_cast<long>(j)));
    if constexpr (T::exact)
      if (term.is_zero_exact()) break;
    result = result + term;
  }
  return result;
}

/// g·x·g⁻¹
template <class S>
Matrix<S> adjoint(const Matrix<S>& g, const Matrix<S>& x, const Matrix<S>& g_inv) {
  return g * x * g_inv;
}

template <class S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

template <class S>
Matrix<S> block_diagonal(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

template <class S>
Matrix<Complex> to_complex(const Matrix<S>& m) {
  Matrix<Complex> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ScalarTraits<S>::to_complex(m(i, j));
  return out;
}

template <class S>
Matrix<S> from_exact(const Matrix<GaussianRational>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ScalarTraits<S>::from_exact(m(i, j));
  return out;
}

}  // namespace mhx
