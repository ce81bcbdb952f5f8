#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numbers>

#include "doctest.h"
#include "mhx/biextension.hpp"
#include "support.hpp"

using namespace mhx;
using namespace mhx::testing;

#define BACKENDS GaussianRational, Complex

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

// basis (one, one_dual), W_{−2} = span(one_dual), F⁰ = span(one + z·one_dual)
template <class S>
Biextension<S> dim2(const Q& z) {
  auto line = Subspace<S>::span(2, {unit<S>(2, 1)});
  Filtration<S> w(2, Direction::increasing, -2, {line, line, Subspace<S>::whole(2)});
  Filtration<S> f(2, Direction::decreasing, -1,
                  {Subspace<S>::whole(2), Subspace<S>::span(2, {vec_of<S>({q(1), z})})});
  return as_biextension(validate(w, f), unit<S>(2, 0), unit<S>(2, 1));
}

template <class S>
Biextension<S> transported(const Biextension<S>& b, const Matrix<S>& g) {
  return as_biextension(validate(b.mhs.W().transformed(g), b.mhs.F().transformed(g)), g.apply(b.one),
                        g.apply(b.one_dual));
}

P1Point moebius(const P1Point& x, Complex a, Complex b, Complex c, Complex d) {
  if (x.infinite) return std::abs(c) == 0 ? P1Point::infinity() : P1Point::at(a / c);
  const Complex den = c * x.z + d;
  if (std::abs(den) == 0) return P1Point::infinity();
  return P1Point::at((a * x.z + b) / den);
}

}  // namespace

TEST_CASE_TEMPLATE("ℚ(0) ⊕ ℚ(1) with standard generators has height 0", S, BACKENDS) {
  auto b = dim2<S>(q(0));
  CHECK(height(b) == 0);
  CHECK(is_split(b.mhs));
}

TEST_CASE_TEMPLATE("split biextension with a genus-1 middle piece has height 0", S, BACKENDS) {
  Gen g(1);
  for (int i = 0; i < 5; ++i) {
    auto b = random_biextension<S>(g, 1, true);
    CHECK(std::abs(height(b)) < 1e-12);
    CHECK(is_split(b.mhs));
  }
}

TEST_CASE_TEMPLATE("a weight 1 piece is a shape error", S, BACKENDS) {
  auto e = validate(Filtration<S>::pure(2, Direction::increasing, 1),
                    Filtration<S>(2, Direction::decreasing, 0,
                                  {Subspace<S>::whole(2), Subspace<S>::span(2, {vec_of<S>({q(1), qi(0, 1, 1, 1)})})}));
  auto m = direct_sum(dim2<S>(q(0)).mhs, e);
  try {
    as_biextension(m, unit<S>(4, 0), unit<S>(4, 1));
    FAIL("expected a shape error");
  } catch (const ShapeError& err) {
    CHECK(std::string(err.what()).find("Gr^W_1") != std::string::npos);
  }
  // generators must match W
  CHECK_THROWS_AS(as_biextension(dim2<S>(q(0)).mhs, unit<S>(2, 1), unit<S>(2, 1)), ShapeError);
  CHECK_THROWS_AS(as_biextension(dim2<S>(q(0)).mhs, unit<S>(2, 0), unit<S>(2, 0)), ShapeError);
  // a two-step structure of weights 0 and −2 that is not Tate at weight −2 does not exist; weight −2 must be 1-dim
  CHECK_THROWS_AS(as_biextension(direct_sum(dim2<S>(q(0)).mhs, tate<S>(1)), unit<S>(3, 0), unit<S>(3, 1)), ShapeError);
}

TEST_CASE_TEMPLATE("dim-2 model: Ht = 2π·Im z", S, BACKENDS) {
  for (auto z : {qi(1, 2, 3, 4), qi(-2, 1, -1, 3), qi(0, 1, 5, 1), q(7, 3)}) {
    auto b = dim2<S>(z);
    if constexpr (ScalarTraits<S>::exact)
      CHECK(height_coefficient(b) == Q(z.im()));
    CHECK(height(b) == doctest::Approx(two_pi * z.im().get_d()).epsilon(1e-13));
  }
}

TEST_CASE_TEMPLATE("heights are invariant under generator-matching morphisms", S, BACKENDS) {
  Gen g(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto b = random_biextension<S>(g, static_cast<std::size_t>(g.integer(0, 2)));
    const std::size_t n = b.mhs.dim();
    Matrix<S> t = g.invertible_rational<S>(n, 1, 1);
    auto b2 = transported(b, t);
    CHECK_NOTHROW(check_morphism(t, b.mhs, b2.mhs));
    CHECK(height(b2) == doctest::Approx(height(b)).epsilon(1e-9));
    // changing the lift of one by W_{−1} leaves the height alone
    Vec<S> lift = b.one;
    for (const auto& v : b.mhs.W().at(-1).basis())
      for (std::size_t i = 0; i < n; ++i) lift[i] += v[i];
    CHECK(height(as_biextension(b.mhs, lift, b.one_dual)) == doctest::Approx(height(b)).epsilon(1e-9));
  }
}

TEST_CASE_TEMPLATE("duality: ℚ(0) ⊕ ℚ(1) is self-dual, the double dual returns B, and the height changes sign", S,
                   BACKENDS) {
  auto d = dual(dim2<S>(q(0)));
  CHECK(d.mhs.graded_dims() == std::map<int, std::size_t>{{-2, 1}, {0, 1}});
  CHECK(height(d) == 0);

  auto b = dim2<S>(qi(1, 3, 2, 5));
  auto bd = dual(b);
  CHECK(height(bd) == doctest::Approx(-height(b)).epsilon(1e-13));

  Gen g(4);
  for (int trial = 0; trial < 8; ++trial) {
    auto r = random_biextension<S>(g, static_cast<std::size_t>(g.integer(0, 2)));
    auto rdd = dual(dual(r));
    CHECK(rdd.mhs.W() == r.mhs.W());
    CHECK(rdd.mhs.F() == r.mhs.F());
    CHECK(height(rdd) == doctest::Approx(height(r)).epsilon(1e-9));
    CHECK(height(dual(r)) == doctest::Approx(-height(r)).epsilon(1e-9));
  }
}

TEST_CASE("dual of the dim-2 model by explicit transpose: the class goes to −z") {
  // dual basis (φ1, φ2) with φ_i(e_j) = δ_ij; after the twist, one' = φ2 and one_dual' = φ1.
  // F'⁰ = ann(F¹) shifted: F'^0 (twisted) = dual F^1 = ann(F⁰) = span(−z·φ1 + φ2) = span(one' − z·one_dual').
  using S = GaussianRational;
  Q z = qi(3, 7, -2, 9);
  auto bd = dual(dim2<S>(z));
  CHECK(bd.one == vec_of<S>({q(0), q(1)}));
  CHECK(bd.one_dual == vec_of<S>({q(1), q(0)}));
  CHECK(extension_class(bd.mhs, bd.one, bd.one_dual).z == -z);
}

TEST_CASE_TEMPLATE("height vanishes exactly on ℝ-split biextensions", S, BACKENDS) {
  Gen g(6);
  for (int trial = 0; trial < 12; ++trial) {
    const bool split = g.coin();
    auto b = random_biextension<S>(g, static_cast<std::size_t>(g.integer(0, 2)), split);
    const bool zero = std::abs(height(b)) < 1e-9;
    CHECK(zero == is_split(b.mhs));
    if (split) CHECK(zero);
  }
}

TEST_CASE_TEMPLATE("extension classes", S, BACKENDS) {
  CHECK(extension_class(dim2<S>(q(0)).mhs).value() == Complex(0, 0));
  Q z = qi(5, 2, -1, 3);
  CHECK(std::abs(extension_class(dim2<S>(z).mhs).value() - z.to_complex()) < 1e-14);
  // rescaling by e^{−cN}, N(one) = one_dual, sends z to z − c
  Q c = qi(1, 4, 7, 5);
  Matrix<S> nm(2, 2);
  nm(1, 0) = ScalarTraits<S>::one();
  auto m = dim2<S>(z).mhs;
  auto moved = validate(m.W(), m.F().transformed(exp_nilpotent(nm, ScalarTraits<S>::from_exact(-c))));
  auto cls = extension_class(moved);
  CHECK(std::abs(cls.value() - (z - c).to_complex()) < 1e-14);
  // lattice: lift changes move the real part
  CHECK(cls.equivalent({ScalarTraits<S>::from_exact(z - c + q(1))}));
  CHECK_FALSE(cls.equivalent({ScalarTraits<S>::from_exact(z - c + qi(0, 1, 1, 10))}));
  // Ext¹(ℚ(−1), ℚ): weights 2 and 0
  auto e = validate(Filtration<S>(2, Direction::increasing, 0, {Subspace<S>::span(2, {unit<S>(2, 1)}), Subspace<S>::span(2, {unit<S>(2, 1)}), Subspace<S>::whole(2)}),
                    Filtration<S>(2, Direction::decreasing, 0, {Subspace<S>::whole(2), Subspace<S>::span(2, {vec_of<S>({q(1), z})})}));
  CHECK(std::abs(extension_class(e).value() - z.to_complex()) < 1e-14);
  CHECK_THROWS_AS(extension_class(tate<S>(0)), ShapeError);
}

TEST_CASE("extension classes add under concatenation of dim-2 models") {
  using S = GaussianRational;
  // the composite of F-generators one + z1·one_dual and one + z2·one_dual under the
  // Baer sum is one + (z1 + z2)·one_dual
  Q z1 = qi(1, 2, 1, 3), z2 = qi(-3, 4, 2, 5);
  auto sum_class = extension_class(dim2<S>(z1 + z2).mhs);
  CHECK(sum_class.z == extension_class(dim2<S>(z1).mhs).z + extension_class(dim2<S>(z2).mhs).z);
}

TEST_CASE("cross-ratio and the ℙ¹ model") {
  using P = P1Point;
  // unit-modulus cross-ratio → height 0
  auto b0 = p1_four_points(P::at(1), P::at(-1), P::at({0, 1}), P::at({0, -1}));
  CHECK(std::abs(cross_ratio(P::at(1), P::at(-1), P::at({0, 1}), P::at({0, -1})) - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(height(b0)) < 1e-12);
  // (0, ∞, 1, x) → CR = 1/x
  const Complex x(3, -2);
  CHECK(std::abs(cross_ratio(P::at(0), P::infinity(), P::at(1), P::at(x)) - 1.0 / x) < 1e-15);
  CHECK(height(p1_four_points(P::at(0), P::infinity(), P::at(1), P::at(x))) ==
        doctest::Approx(kappa * std::log(std::abs(1.0 / x))).epsilon(1e-12));
  // swapping r and s negates the height
  auto h1 = height(p1_four_points(P::at({0.3, 1}), P::at(2), P::at({-1, 0.5}), P::at({4, 4})));
  auto h2 = height(p1_four_points(P::at({0.3, 1}), P::at(2), P::at({4, 4}), P::at({-1, 0.5})));
  CHECK(h1 == doctest::Approx(-h2).epsilon(1e-12));
  CHECK_THROWS_AS(p1_four_points(P::at(1), P::at(1), P::at(2), P::at(3)), DegenerateConfiguration);
  CHECK_THROWS_AS(p1_four_points(P::infinity(), P::at(1), P::infinity(), P::at(3)), DegenerateConfiguration);
}

TEST_CASE("property: ℙ¹ height = κ·log|CR| and is Möbius invariant") {
  Gen g(8);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<P1Point> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(P1Point::at({g.real(-3, 3), g.real(-3, 3)}));
    if (trial % 5 == 0) pts[static_cast<std::size_t>(g.integer(0, 3))] = P1Point::infinity();
    const Complex cr = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
    const double h = height(p1_four_points(pts[0], pts[1], pts[2], pts[3]));
    CHECK(std::abs(h - kappa * std::log(std::abs(cr))) < 1e-9);
    Complex a(g.real(-2, 2), g.real(-2, 2)), b(g.real(-2, 2), g.real(-2, 2)), c(g.real(-2, 2), g.real(-2, 2)),
        d(g.real(-2, 2), g.real(-2, 2));
    if (std::abs(a * d - b * c) < 0.1) continue;
    std::vector<P1Point> moved;
    for (const auto& p : pts) moved.push_back(moebius(p, a, b, c, d));
    CHECK(std::abs(height(p1_four_points(moved[0], moved[1], moved[2], moved[3])) - h) < 1e-9);
  }
}
