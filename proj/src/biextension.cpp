#include "mhx/biextension.hpp"

#include <numbers>

namespace mhx {

namespace {

template <class S>
std::size_t largest_entry(const Vec<S>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (ScalarTraits<S>::magnitude(v[i]) > ScalarTraits<S>::magnitude(v[best])) best = i;
  return best;
}

template <class S>
bool vec_is_real(const Vec<S>& v) {
  for (const auto& x : v)
    if constexpr (ScalarTraits<S>::exact) {
      if (!x.is_real()) return false;
    } else if (std::abs(x.imag()) > residual_tol(max_abs(v))) {
      return false;
    }
  return true;
}

}  // namespace

template <class S>
Biextension<S> as_biextension(const MixedHodgeStructure<S>& m, Vec<S> one, Vec<S> one_dual) {
  const std::size_t n = m.dim();
  if (one.size() != n || one_dual.size() != n) throw DimensionMismatch("biextension generators have the wrong length");
  if (!vec_is_real(one) || !vec_is_real(one_dual)) throw ShapeError("biextension generators must be rational");
  auto gd = m.graded_dims();
  for (const auto& [w, d] : gd)
    if (w < -2 || w > 0) throw ShapeError("Gr^W_" + std::to_string(w) + " is nonzero; a biextension has weights 0, -1, -2");
  if (gd[0] != 1) throw ShapeError("Gr^W_0 must be one-dimensional");
  if (gd[-2] != 1) throw ShapeError("Gr^W_-2 must be one-dimensional");
  auto hn = m.hodge_numbers();
  if (hn[{0, 0}] != 1) throw ShapeError("Gr^W_0 is not of type (0,0)");
  if (hn[{-1, -1}] != 1) throw ShapeError("Gr^W_-2 is not of type (-1,-1)");
  if (vec_is_zero(one_dual, 1.0) || !m.W().at(-2).contains(one_dual))
    throw ShapeError("one_dual does not span W_-2");
  if (m.W().at(-1).contains(one)) throw ShapeError("one does not generate Gr^W_0");
  return {m, std::move(one), std::move(one_dual)};
}

template <class S>
S height_coefficient(const Biextension<S>& b) {
  const auto d = delta(b.mhs);
  const Vec<S> v = d.delta.apply(b.one);
  const std::size_t p = largest_entry(b.one_dual);
  const S c = v[p] / b.one_dual[p];
  Vec<S> rest = v;
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= c * b.one_dual[i];
  const double scale = std::max(1.0, d.delta.max_abs() * max_abs(b.one));
  if constexpr (ScalarTraits<S>::exact) {
    if (!vec_is_zero(rest, scale)) throw VerificationFailure("δ(one) is not a multiple of one_dual");
  } else {
    if (max_abs(rest) > 1e4 * tolerance() * scale) throw VerificationFailure("δ(one) is not a multiple of one_dual");
  }
  return c;
}

template <class S>
double height(const Biextension<S>& b) {
  return 2 * std::numbers::pi * ScalarTraits<S>::to_complex(height_coefficient(b)).real();
}

template <class S>
Biextension<S> dual(const Biextension<S>& b) {
  using T = ScalarTraits<S>;
  const std::size_t n = b.mhs.dim();
  auto dm = tate_twist(dual(b.mhs), 1);
  const std::size_t p = largest_entry(b.one_dual);
  Vec<S> one(n, T::zero());
  one[p] = T::one() / b.one_dual[p];
  Vec<S> psi = annihilator(b.mhs.W().at(-1)).basis_vector(0);
  S s = T::zero();
  for (std::size_t i = 0; i < n; ++i) s += psi[i] * b.one[i];
  for (auto& x : psi) x = x / s;
  return as_biextension(dm, std::move(one), std::move(psi));
}

template <class S>
bool ExtensionClass<S>::equivalent(const ExtensionClass& other) const {
  if constexpr (ScalarTraits<S>::exact) {
    return z.im() == other.z.im();
  } else {
    const Complex d = z - other.z;
    const double tol = residual_tol(std::max(std::abs(z), std::abs(other.z)));
    const double re = d.real() - std::round(d.real());
    return std::abs(re) <= tol && std::abs(d.imag()) <= tol;
  }
}

template <class S>
ExtensionClass<S> extension_class(const MixedHodgeStructure<S>& m, const Vec<S>& one, const Vec<S>& one_dual) {
  auto gd = m.graded_dims();
  if (m.dim() != 2 || gd.size() != 2) throw ShapeError("extension class needs exactly two one-dimensional graded pieces");
  const int lo = gd.begin()->first, hi = gd.rbegin()->first;
  auto hn = m.hodge_numbers();
  if (lo % 2 != 0 || hi % 2 != 0 || hn[{lo / 2, lo / 2}] != 1 || hn[{hi / 2, hi / 2}] != 1)
    throw ShapeError("extension class needs Tate graded pieces");
  if (!m.W().at(lo).contains(one_dual) || vec_is_zero(one_dual, 1.0) || m.W().at(lo).contains(one))
    throw ShapeError("extension class generators do not match the weight filtration");
  // Hodge line v = a·one + b·one_dual
  const Vec<S> v = m.F().at(hi / 2).basis_vector(0);
  const Matrix<S> basis = Matrix<S>::from_columns(2, {one, one_dual});
  const Vec<S> ab = inverse(basis).apply(v);
  return {ab[1] / ab[0]};
}

template <class S>
ExtensionClass<S> extension_class(const MixedHodgeStructure<S>& m) {
  auto gd = m.graded_dims();
  if (m.dim() != 2 || gd.size() != 2) throw ShapeError("extension class needs exactly two one-dimensional graded pieces");
  const Subspace<S> low = m.W().at(gd.begin()->first);
  Vec<S> one(2, ScalarTraits<S>::zero());
  one[low.complement_indices().at(0)] = ScalarTraits<S>::one();
  return extension_class(m, one, low.basis_vector(0));
}

Complex cross_ratio(const P1Point& p, const P1Point& q, const P1Point& r, const P1Point& s) {
  const P1Point* pts[] = {&p, &q, &r, &s};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const auto& a = *pts[i];
      const auto& b = *pts[j];
      const bool same = (a.infinite && b.infinite) ||
                        (!a.infinite && !b.infinite &&
                         std::abs(a.z - b.z) <= tolerance() * (1 + std::abs(a.z) + std::abs(b.z)));
      if (same) throw DegenerateConfiguration("the four points must be pairwise distinct");
    }
  auto f = [](const P1Point& a, const P1Point& b) { return a.infinite || b.infinite ? Complex(1.0) : a.z - b.z; };
  return (f(r, p) * f(s, q)) / (f(r, q) * f(s, p));
}

Biextension<Complex> p1_four_points(const P1Point& p, const P1Point& q, const P1Point& r, const P1Point& s) {
  const Complex z = std::log(cross_ratio(p, q, r, s)) / Complex(0.0, 2 * std::numbers::pi);
  auto loop = Subspace<Complex>::span(2, {{0.0, 1.0}});
  Filtration<Complex> w(2, Direction::increasing, -2, {loop, loop, Subspace<Complex>::whole(2)});
  Filtration<Complex> f(2, Direction::decreasing, -1,
                        {Subspace<Complex>::whole(2), Subspace<Complex>::span(2, {{1.0, z}})});
  return as_biextension(validate(w, f), Vec<Complex>{1.0, 0.0}, Vec<Complex>{0.0, 1.0});
}

#define MHX_INSTANTIATE(S)                                                                            \
  template struct ExtensionClass<S>;                                                                  \
  template Biextension<S> as_biextension(const MixedHodgeStructure<S>&, Vec<S>, Vec<S>);              \
  template S height_coefficient(const Biextension<S>&);                                               \
  template double height(const Biextension<S>&);                                                      \
  template Biextension<S> dual(const Biextension<S>&);                                                \
  template ExtensionClass<S> extension_class(const MixedHodgeStructure<S>&, const Vec<S>&, const Vec<S>&); \
  template ExtensionClass<S> extension_class(const MixedHodgeStructure<S>&);

MHX_INSTANTIATE(GaussianRational)
MHX_INSTANTIATE(Complex)

}  // namespace mhx
