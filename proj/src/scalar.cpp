#include "mhx/scalar.hpp"

#include <atomic>
#include <cctype>

#include "mhx/errors.hpp"

namespace mhx {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  mpq_class n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return rational_to_string(re_);
  std::string s = sgn(re_) == 0 ? "" : rational_to_string(re_);
  if (sgn(im_) > 0 && !s.empty()) s += "+";
  return s + rational_to_string(im_) + "i";
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw ParseError("empty number");
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);

  auto slash = body.find('/');
  if (slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + text + "'");
    mpz_class d(den, 10);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    mpq_class q(mpz_class(num, 10), d);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  }

  // decimal: digits[.digits][e[+-]digits]
  std::string mant = body, exps;
  auto e = body.find_first_of("eE");
  if (e != std::string::npos) {
    mant = body.substr(0, e);
    exps = body.substr(e + 1);
  }
  std::string ip = mant, fp;
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    ip = mant.substr(0, dot);
    fp = mant.substr(dot + 1);
  }
  if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
    throw ParseError("malformed number '" + text + "'");
  long exponent = 0;
  if (e != std::string::npos) {
    std::string digits = exps;
    bool eneg = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
      eneg = digits[0] == '-';
      digits = digits.substr(1);
    }
    if (!all_digits(digits) || digits.size() > 6) throw ParseError("malformed exponent in '" + text + "'");
    exponent = std::stol(digits) * (eneg ? -1 : 1);
  }
  mpz_class m((ip.empty() ? "0" : ip) + fp, 10);
  exponent -= static_cast<long>(fp.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent < 0 ? mpq_class(m, scale) : mpq_class(m * scale);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double eps) {
  if (!(eps > 0)) throw std::invalid_argument("tolerance must be positive");
  g_tolerance.store(eps, std::memory_order_relaxed);
}

}  // namespace mhx
