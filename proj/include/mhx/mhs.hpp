#pragma once

// Mixed Hodge structures: validation through the Deligne bigrading, the grading
// Y, the splitting operator δ, morphisms, and the standard constructions.

#include <map>
#include <memory>
#include <utility>

#include "mhx/subspace.hpp"

namespace mhx {

using Bidegree = std::pair<int, int>;

/// The bigrading V_C = ⊕ I^{a,b} together with the adapted basis P (columns are
/// bases of the nonzero pieces, in increasing (a, b) order) and Y = P·diag(a+b)·P⁻¹.
template <class S>
struct Bigrading {
  std::map<Bidegree, Subspace<S>> pieces;  // nonzero pieces only
  Matrix<S> P, P_inv;
  std::vector<Bidegree> column_type;  // (a, b) of each column of P
  Matrix<S> Y;

  Subspace<S> piece(int a, int b) const;
  std::vector<int> column_weights() const;
  /// Component of x of ad(Y)-eigenvalue e (in the original basis).
  Matrix<S> shift_component(const Matrix<S>& x, int e) const;
  /// x maps each I^{c,d} into ⊕_{a<c, b<d} I^{a,b}.
  bool in_lambda_minus(const Matrix<S>& x) const;
};

template <class S>
class MixedHodgeStructure {
 public:
  MixedHodgeStructure() = default;

  /// Computes the bigrading and checks it is a direct sum rebuilding W and F.
  /// Throws NotAnMHS naming the first failing (a, b).
  static MixedHodgeStructure validate(Filtration<S> W, Filtration<S> F);

  std::size_t dim() const { return W_.ambient(); }
  const Filtration<S>& W() const { return W_; }
  const Filtration<S>& F() const { return F_; }
  const Bigrading<S>& bigrading() const { return *grading_; }
  Subspace<S> I(int a, int b) const { return grading_->piece(a, b); }

  /// weight → dim Gr^W_weight (nonzero entries only)
  std::map<int, std::size_t> graded_dims() const;
  /// (a, b) → dim I^{a,b}
  std::map<Bidegree, std::size_t> hodge_numbers() const;

 private:
  Filtration<S> W_, F_;
  std::shared_ptr<const Bigrading<S>> grading_;
};

template <class S>
MixedHodgeStructure<S> validate(Filtration<S> W, Filtration<S> F) {
  return MixedHodgeStructure<S>::validate(std::move(W), std::move(F));
}

template <class S>
struct DeligneSplitting {
  Bigrading<S> bigrading;
  Matrix<S> Y;
  Matrix<S> delta;                          // empty until computed
  std::map<int, Matrix<S>> delta_components;  // j → δ_{−j}, j ≥ 2, nonzero only
};

template <class S>
DeligneSplitting<S> deligne_bigrading(const MixedHodgeStructure<S>& m);

/// Bigrading plus δ, solved shift by shift and verified against
/// conj(Y) = Ad(e^{−2iδ})Y. Throws VerificationFailure if the check fails.
template <class S>
DeligneSplitting<S> delta(const MixedHodgeStructure<S>& m);

/// conj(I^{a,b}) = I^{b,a} for all (a, b).
template <class S>
bool is_split(const MixedHodgeStructure<S>& m);

/// Max-entry residual of Ad(e^{−2iδ})Y − conj(Y).
template <class S>
double delta_residual(const DeligneSplitting<S>& d);

/// (e^{−iδ}·F, W)
template <class S>
MixedHodgeStructure<S> real_split(const MixedHodgeStructure<S>& m, const Matrix<S>& delta);

template <class S>
struct MHSMorphism {
  MixedHodgeStructure<S> source, target;
  Matrix<S> map;  // target.dim × source.dim
};

/// Checks filtration compatibility, strictness and f∘δ_A = δ_B∘f.
/// Throws NotAMorphism (compatibility/strictness) or VerificationFailure (δ).
template <class S>
MHSMorphism<S> check_morphism(const Matrix<S>& f, const MixedHodgeStructure<S>& a, const MixedHodgeStructure<S>& b);

template <class S>
MixedHodgeStructure<S> graded_piece(const MixedHodgeStructure<S>& m, int n);
template <class S>
MixedHodgeStructure<S> tate_twist(const MixedHodgeStructure<S>& m, int a);
template <class S>
MixedHodgeStructure<S> dual(const MixedHodgeStructure<S>& m);
template <class S>
MixedHodgeStructure<S> exterior_power(const MixedHodgeStructure<S>& m, std::size_t k);
template <class S>
MixedHodgeStructure<S> direct_sum(const MixedHodgeStructure<S>& a, const MixedHodgeStructure<S>& b);
/// ℚ(a): dim 1, weight −2a, Hodge type (−a, −a).
template <class S>
MixedHodgeStructure<S> tate(int a);

template <class S>
struct SubObject {
  MixedHodgeStructure<S> mhs;
  Matrix<S> map;  // inclusion (n × d) or projection (d × n)
};

/// Restriction to a rational subspace, in its echelon coordinates.
template <class S>
SubObject<S> sub_mhs(const MixedHodgeStructure<S>& m, const Subspace<S>& s);
/// Quotient by a rational subspace, in the complement coordinates.
template <class S>
SubObject<S> quotient_mhs(const MixedHodgeStructure<S>& m, const Subspace<S>& s);

/// Filtration restricted to s, expressed in s's echelon coordinates.
template <class S>
Filtration<S> restrict_filtration(const Filtration<S>& f, const Subspace<S>& s);
/// Filtration pushed through a linear map (image of every step).
template <class S>
Filtration<S> push_filtration(const Filtration<S>& f, const Matrix<S>& q);

/// Basis adapted to a filtration: each vector carries the index at which it first appears.
template <class S>
std::vector<std::pair<Vec<S>, int>> adapted_basis(const Filtration<S>& f);

/// k-subsets of {0..n−1} in lexicographic order (the Λ^k coordinate order).
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

/// Coordinates of u_1 ∧ … ∧ u_k in the lexicographic basis of Λ^k.
template <class S>
Vec<S> wedge(const std::vector<Vec<S>>& us);

/// Λ^k of a linear map (k×k minors).
template <class S>
Matrix<S> exterior_power_map(const Matrix<S>& f, std::size_t k);

}  // namespace mhx
