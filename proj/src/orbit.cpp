#include "mhx/orbit.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace mhx {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

template <class S>
std::size_t largest_entry(const Vec<S>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (ScalarTraits<S>::magnitude(v[i]) > ScalarTraits<S>::magnitude(v[best])) best = i;
  return best;
}

// c with v ≈ c·u (u ≠ 0), read off at the largest entry of u
template <class S>
S coefficient_on(const Vec<S>& v, const Vec<S>& u) {
  const std::size_t p = largest_entry(u);
  return v[p] / u[p];
}

template <class S>
bool vec_real(const Vec<S>& v) {
  for (const auto& x : v)
    if constexpr (ScalarTraits<S>::exact) {
      if (!x.is_real()) return false;
    } else if (std::abs(x.imag()) > residual_tol(max_abs(v))) {
      return false;
    }
  return true;
}

// Graded dims of an increasing filtration, nonzero entries only.
template <class S>
std::map<int, std::size_t> graded_dims_of(const Filtration<S>& w) {
  std::map<int, std::size_t> out;
  auto sup = w.support();
  if (!sup) return out;
  for (int k = sup->first; k <= sup->second; ++k)
    if (auto d = w.at(k).dim() - w.at(k - 1).dim()) out[k] = d;
  return out;
}

Vec<Complex> vec_to_complex(const Vec<GaussianRational>& v) {
  Vec<Complex> out;
  for (const auto& x : v) out.push_back(x.to_complex());
  return out;
}

Biextension<Complex> evaluate_float(const NilpotentOrbit<Complex>& o, Complex z) {
  auto f = o.F_infinity.transformed(exp_nilpotent(o.N.N, z));
  return as_biextension(validate(o.W, f), o.one, o.one_dual);
}

}  // namespace

template <class S>
NilpotentOrbit<S> make_orbit(const Matrix<S>& n, Filtration<S> f_infinity, Filtration<S> w, Vec<S> one,
                             Vec<S> one_dual) {
  using T = ScalarTraits<S>;
  const std::size_t d = w.ambient();
  if (n.rows() != d || n.cols() != d || f_infinity.ambient() != d || one.size() != d || one_dual.size() != d)
    throw DimensionMismatch("orbit data have inconsistent sizes");
  if (!n.is_real()) throw PreconditionError("N is not rational");
  NilpotentOrbit<S> o;
  o.N = NilpotentOperator<S>::make(n);

  for (const auto& [k, dim] : graded_dims_of(w))
    if (k < -2 || k > 0) throw ShapeError("Gr^W_" + std::to_string(k) + " is nonzero; W must have weights 0, -1, -2");
  auto gd = graded_dims_of(w);
  if (gd[0] != 1 || gd[-2] != 1) throw ShapeError("W must have one-dimensional Gr^W_0 and Gr^W_-2");
  if (!vec_real(one) || !vec_real(one_dual)) throw ShapeError("orbit generators must be rational");
  if (vec_is_zero(one_dual, 1.0) || !w.at(-2).contains(one_dual)) throw ShapeError("one_dual does not span W_-2");
  if (w.at(-1).contains(one)) throw ShapeError("one does not generate Gr^W_0");

  try {
    o.M = relative_weight_filtration(o.N, w).M;
  } catch (const NonExistence& e) {
    throw AdmissibilityError(std::string("relative weight filtration: ") + e.what());
  }
  try {
    o.limit_mhs = validate(o.M, f_infinity);
  } catch (const NotAnMHS& e) {
    throw AdmissibilityError(std::string("(F_infinity, M) is not a mixed Hodge structure: ") + e.what());
  }
  for (int p = f_infinity.lo(); p <= f_infinity.hi() + 1; ++p)
    if (!f_infinity.at(p - 1).contains(image(n, f_infinity.at(p))))
      throw AdmissibilityError("N(F^" + std::to_string(p) + ") is not contained in F^" + std::to_string(p - 1));
  for (const auto& [ab, piece] : o.limit_mhs.bigrading().pieces)
    if (!o.limit_mhs.I(ab.first - 1, ab.second - 1).contains(image(n, piece)))
      throw AdmissibilityError("N is not a (-1,-1)-morphism of the limit: N(I^{" + std::to_string(ab.first) + "," +
                               std::to_string(ab.second) + "}) leaves I^{" + std::to_string(ab.first - 1) + "," +
                               std::to_string(ab.second - 1) + "}");
  for (int im : orbit_sample_im) {
    const S z = T::i() * S(static_cast<long>(im));
    try {
      as_biextension(validate(w, f_infinity.transformed(exp_nilpotent(n, z))), one, one_dual);
    } catch (const NotAnMHS& e) {
      throw AdmissibilityError("e^{zN}F_infinity is not a mixed Hodge structure at z = " + std::to_string(im) +
                               "i: " + e.what());
    } catch (const ShapeError& e) {
      throw AdmissibilityError("e^{zN}F_infinity is not a biextension at z = " + std::to_string(im) + "i: " + e.what());
    }
  }
  o.F_infinity = std::move(f_infinity);
  o.W = std::move(w);
  o.one = std::move(one);
  o.one_dual = std::move(one_dual);
  return o;
}

NilpotentOrbit<Complex> to_complex(const NilpotentOrbit<GaussianRational>& o) {
  NilpotentOrbit<Complex> c;
  c.N = NilpotentOperator<Complex>{to_complex(o.N.N), o.N.order};
  c.F_infinity = to_complex(o.F_infinity);
  c.W = to_complex(o.W);
  c.M = to_complex(o.M);
  c.limit_mhs = validate(c.M, c.F_infinity);
  c.one = vec_to_complex(o.one);
  c.one_dual = vec_to_complex(o.one_dual);
  return c;
}

template <class S>
Biextension<Complex> evaluate_z(const NilpotentOrbit<S>& o, Complex z) {
  return evaluate_float(to_complex(o), z);
}

template <class S>
Biextension<Complex> evaluate(const NilpotentOrbit<S>& o, Complex t) {
  if (std::abs(t) == 0 || std::abs(t) >= 1) throw PreconditionError("t must lie in the punctured unit disc");
  return evaluate_z(o, std::log(t) / Complex(0, two_pi));
}

template <class S>
EigencomponentData<S> grading_y_nfw(const NilpotentOrbit<S>& o) {
  using T = ScalarTraits<S>;
  const std::size_t n = o.W.ambient();
  EigencomponentData<S> e;
  e.delta_M = delta(o.limit_mhs).delta;
  e.F_tilde_generator = exp_nilpotent(e.delta_M, S(-T::i()));
  const Matrix<S> eiN = exp_nilpotent(o.N.N, T::i()), emiN = exp_nilpotent(o.N.N, S(-T::i()));
  MixedHodgeStructure<S> shifted;
  try {
    shifted = validate(o.W, o.F_infinity.transformed(Matrix<S>(eiN * e.F_tilde_generator)));
  } catch (const NotAnMHS& err) {
    throw VerificationFailure(std::string("(e^{iN}F~, W) is not a mixed Hodge structure: ") + err.what());
  }
  e.Y_nfw = emiN * shifted.bigrading().Y * eiN;

  // eigenprojections by Lagrange interpolation over the weights of W
  std::vector<int> weights;
  for (const auto& [k, dim] : graded_dims_of(o.W)) weights.push_back(k);
  const Matrix<S> id = Matrix<S>::identity(n);
  for (int k : weights) {
    Matrix<S> p = id;
    for (int j : weights)
      if (j != k)
        p = p * (e.Y_nfw - id.scaled(S(static_cast<long>(j)))).scaled(T::one() / S(static_cast<long>(k - j)));
    e.projections[k] = p;
  }
  auto parts = [&](const Matrix<S>& x) {
    std::map<int, Matrix<S>> out;
    for (int s = -2; s <= 2; ++s) out[s] = Matrix<S>(n, n);
    for (int a : weights)
      for (int b : weights) {
        const int s = a - b;
        if (s < -2 || s > 2) continue;
        out[s] = out[s] + e.projections.at(a) * x * e.projections.at(b);
      }
    return out;
  };
  e.N_parts = parts(o.N.N);
  e.delta_parts = parts(e.delta_M);
  auto proj = [&](int k) { return e.projections.count(k) ? e.projections.at(k) : Matrix<S>(n, n); };
  e.delta_A = proj(-1) * e.delta_M * proj(0);
  e.delta_B = proj(-2) * e.delta_M * proj(-1);
  return e;
}

template <class S>
S mu(const NilpotentOrbit<S>& o, const EigencomponentData<S>& e) {
  return coefficient_on(e.N_parts.at(-2).apply(o.one), o.one_dual);
}

template <class S>
S mu(const NilpotentOrbit<S>& o) {
  if (o.N.order <= 1) return ScalarTraits<S>::zero();
  return mu(o, grading_y_nfw(o));
}

template <class S>
double limit_height(const NilpotentOrbit<S>& o, const EigencomponentData<S>& e) {
  return two_pi * ScalarTraits<S>::to_complex(coefficient_on(e.delta_parts.at(-2).apply(o.one), o.one_dual)).real();
}

template <class S>
double limit_height(const NilpotentOrbit<S>& o) {
  return limit_height(o, grading_y_nfw(o));
}

template <class S>
NilpotentOrbit<S> rescale_coordinate(const NilpotentOrbit<S>& o, const S& c) {
  return make_orbit(o.N.N, o.F_infinity.transformed(exp_nilpotent(o.N.N, S(-c))), o.W, o.one, o.one_dual);
}

double HeightScan::converged_gap() const {
  for (auto it = records.rbegin(); it != records.rend(); ++it)
    if (!it->error) return std::abs(it->h_tilde - H_limit);
  return std::nan("");
}

std::vector<double> decade_moduli(int decades) {
  std::vector<double> out;
  for (int k = 1; k <= decades; ++k) out.push_back(std::pow(10.0, -k));
  return out;
}

template <class S>
HeightScan height_scan(const NilpotentOrbit<S>& o, double theta, const std::vector<double>& moduli, unsigned threads) {
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (!(moduli[i] > 0 && moduli[i] < 1)) throw PreconditionError("scan moduli must lie in (0, 1)");
    if (i > 0 && !(moduli[i] < moduli[i - 1])) throw PreconditionError("scan moduli must be strictly decreasing");
  }
  HeightScan scan;
  scan.theta = theta;
  const auto e = grading_y_nfw(o);
  scan.mu = ScalarTraits<S>::to_complex(mu(o, e)).real();
  scan.H_limit = limit_height(o, e);
  const auto oc = to_complex(o);
  scan.records.resize(moduli.size());

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < moduli.size();) {
      ScanRecord& r = scan.records[i];
      const Complex t = std::polar(moduli[i], theta);
      r.t_abs = moduli[i];
      r.t_arg = theta;
      try {
        r.h = height(evaluate_float(oc, std::log(t) / Complex(0, two_pi)));
        r.h_tilde = r.h + scan.mu * std::log(r.t_abs);
      } catch (const Error& err) {
        r.error = err.what();
        r.h = r.h_tilde = std::nan("");
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, moduli.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return scan;
}

template <class S>
std::vector<CrosscheckRecord> y_limit_crosscheck(const NilpotentOrbit<S>& o, const std::vector<Complex>& zs) {
  const Matrix<Complex> y = to_complex(grading_y_nfw(o).Y_nfw);
  const auto oc = to_complex(o);
  std::vector<CrosscheckRecord> out;
  for (const auto& z : zs) {
    CrosscheckRecord r{z, 0, std::nullopt};
    try {
      auto m = validate(oc.W, oc.F_infinity.transformed(exp_nilpotent(oc.N.N, z)));
      Matrix<Complex> moved = exp_nilpotent(oc.N.N, -z) * m.bigrading().Y * exp_nilpotent(oc.N.N, z);
      r.distance = distance(moved, y);
    } catch (const Error& err) {
      r.error = err.what();
      r.distance = std::nan("");
    }
    out.push_back(r);
  }
  return out;
}

#define MHX_INSTANTIATE(S)                                                                                        \
  template NilpotentOrbit<S> make_orbit(const Matrix<S>&, Filtration<S>, Filtration<S>, Vec<S>, Vec<S>);          \
  template Biextension<Complex> evaluate(const NilpotentOrbit<S>&, Complex);                                      \
  template Biextension<Complex> evaluate_z(const NilpotentOrbit<S>&, Complex);                                    \
  template EigencomponentData<S> grading_y_nfw(const NilpotentOrbit<S>&);                                         \
  template S mu(const NilpotentOrbit<S>&);                                                                        \
  template S mu(const NilpotentOrbit<S>&, const EigencomponentData<S>&);                                          \
  template double limit_height(const NilpotentOrbit<S>&);                                                         \
  template double limit_height(const NilpotentOrbit<S>&, const EigencomponentData<S>&);                           \
  template NilpotentOrbit<S> rescale_coordinate(const NilpotentOrbit<S>&, const S&);                              \
  template HeightScan height_scan(const NilpotentOrbit<S>&, double, const std::vector<double>&, unsigned);        \
  template std::vector<CrosscheckRecord> y_limit_crosscheck(const NilpotentOrbit<S>&, const std::vector<Complex>&);

MHX_INSTANTIATE(GaussianRational)
MHX_INSTANTIATE(Complex)

}  // namespace mhx
