#pragma once

// Scalar backends: exact Gaussian rationals (GMP) and complex doubles.
// Every linear-algebra routine in mhx is a template over one of these two.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

namespace mhx {

using Complex = std::complex<double>;

/// a + b·i with a, b arbitrary-precision rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re) : re_(std::move(re)), im_(0) {}  // NOLINT
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Parses "p/q", "n", or a decimal like "-1.25e-3" exactly.
mpq_class parse_rational(const std::string& text);
std::string rational_to_string(const mpq_class& q);

/// Process-wide rank tolerance for the float backend (default 1e-9).
/// Read-only after start-up; the CLI sets it once from --tol / MHX_TOL.
double tolerance();
void set_tolerance(double eps);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  using Real = mpq_class;
  static constexpr bool exact = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
  static GaussianRational make(const mpq_class& re, const mpq_class& im) { return {re, im}; }
  static GaussianRational from_exact(const GaussianRational& g) { return g; }
  static bool is_zero(const GaussianRational& x, double) { return x.is_zero(); }
  static double magnitude(const GaussianRational& x) { return std::abs(x.to_complex()); }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
  static Real real(const GaussianRational& x) { return x.re(); }
  static Real imag(const GaussianRational& x) { return x.im(); }
  static double to_double(const Real& r) { return r.get_d(); }
  static GaussianRational from_real(const Real& r) { return GaussianRational(r); }
};

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex i() { return {0.0, 1.0}; }
  static Complex make(const mpq_class& re, const mpq_class& im) { return {re.get_d(), im.get_d()}; }
  static Complex from_exact(const GaussianRational& g) { return g.to_complex(); }
  static bool is_zero(const Complex& x, double abs_tol) { return std::abs(x) <= abs_tol; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static Complex to_complex(const Complex& x) { return x; }
  static Real real(const Complex& x) { return x.real(); }
  static Real imag(const Complex& x) { return x.imag(); }
  static double to_double(Real r) { return r; }
  static Complex from_real(Real r) { return {r, 0.0}; }
};

}  // namespace mhx
