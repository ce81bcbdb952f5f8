#pragma once

// Biextensions: three-step structures with graded pieces ℚ(0), a weight −1
// piece and ℚ(1), their archimedean height, duality, extension classes of
// two-step Tate structures, and the four-point model on ℙ¹.

#include "mhx/mhs.hpp"

namespace mhx {

/// height(p1_four_points(p, q, r, s)) = kappa · log|CR(p, q, r, s)|.
inline constexpr double kappa = -1.0;

template <class S>
struct Biextension {
  MixedHodgeStructure<S> mhs;
  Vec<S> one;       // rational lift of the generator of Gr^W_0
  Vec<S> one_dual;  // rational generator of W_{−2}
};

/// Validates graded dims (1, h, 1) at weights (0, −1, −2), Tate end pieces and
/// the generators. Throws ShapeError naming the offending weight.
template <class S>
Biextension<S> as_biextension(const MixedHodgeStructure<S>& m, Vec<S> one, Vec<S> one_dual);

/// c with δ(one) = c·one_dual.
template <class S>
S height_coefficient(const Biextension<S>& b);

/// Ht = 2π · (coefficient of one_dual in δ(one)).
template <class S>
double height(const Biextension<S>& b);

/// (dual structure)(1); one' pairs to 1 with one_dual, one_dual' kills W_{−1} and pairs to 1 with one.
template <class S>
Biextension<S> dual(const Biextension<S>& b);

/// Period z of a two-step Tate structure: the Hodge line is spanned by one + z·one_dual.
/// Lift changes move z by rationals, so classes are compared modulo ℚ (exact backend)
/// or modulo ℤ (float backend) in the real part.
template <class S>
struct ExtensionClass {
  S z;
  Complex value() const { return ScalarTraits<S>::to_complex(z); }
  bool equivalent(const ExtensionClass& other) const;
};

/// Generators taken from the echelon basis: one_dual spans the lower weight step,
/// one is the complementary coordinate vector.
template <class S>
ExtensionClass<S> extension_class(const MixedHodgeStructure<S>& m);
template <class S>
ExtensionClass<S> extension_class(const MixedHodgeStructure<S>& m, const Vec<S>& one, const Vec<S>& one_dual);

struct P1Point {
  Complex z{};
  bool infinite = false;
  static P1Point at(Complex c) { return {c, false}; }
  static P1Point infinity() { return {{}, true}; }
};

/// ((r−p)(s−q)) / ((r−q)(s−p)), with factors involving ∞ cancelled.
/// Throws DegenerateConfiguration unless the points are pairwise distinct.
Complex cross_ratio(const P1Point& p, const P1Point& q, const P1Point& r, const P1Point& s);

/// Rank-2 model with Betti basis (relative path, loop) and Hodge line
/// one + z·one_dual, z = log(CR)/(2πi).
Biextension<Complex> p1_four_points(const P1Point& p, const P1Point& q, const P1Point& r, const P1Point& s);

}  // namespace mhx
