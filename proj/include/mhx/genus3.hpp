#pragma once

// Linear-algebra models of the two genus-3 degenerations: the limit H¹ and H³
// structures, the limit biextension orbit 𝒱 over H³, its boundary
// sub-structure 𝒬, the boundary biextension and the consistency check
// H(N, F∞, W) = Ht(B).
//
// H¹ basis: α₁*, α₂*, α₃*, β₁*, β₂*, β₃* (indices 0..5). The vanishing cycle is
// the third symplectic pair: N β₃* = α₃*. H³ = Λ³H¹ ⊗ ℚ(2) in the lexicographic
// wedge basis. 𝒱 has dim 22: index 0 is one, 1..20 is H³, 21 is one_dual.

#include <array>
#include <string>
#include <variant>

#include "mhx/orbit.hpp"

namespace mhx {

/// Nodal case. tau: period matrix of the genus-2 normalization on the pairs
/// (α₁, β₁), (α₂, β₂). aj_z, aj_w: 6 coefficients on the pairs of
/// {α₁*, α₂*, β₁*, β₂*} (lexicographic); b: the (one, one_dual) extension.
struct NodalModel {
  std::array<std::array<GaussianRational, 2>, 2> tau;
  std::vector<GaussianRational> aj_z, aj_w;
  GaussianRational b;
};

/// Reducible case: genus-1 component (pair 1) and genus-2 component (pairs 2, 3);
/// N = 0. aj_z, aj_w: 20 coefficients on the Λ³ basis.
struct ReducibleModel {
  GaussianRational tau1;
  std::array<std::array<GaussianRational, 2>, 2> tau2;
  std::vector<GaussianRational> aj_z, aj_w;
  GaussianRational b;
};

using Genus3Model = std::variant<NodalModel, ReducibleModel>;

inline constexpr std::size_t nodal_aj_length = 6;
inline constexpr std::size_t reducible_aj_length = 20;

/// Throws InvalidPeriodMatrix unless tau is square, symmetric and Im tau is
/// positive definite (leading principal minors).
void check_period_matrix(const Matrix<GaussianRational>& tau);
/// Block period matrix: 2×2 (nodal) or diag(τ₁, τ₂) (reducible).
Matrix<GaussianRational> period_matrix(const Genus3Model& m);
/// Period matrix plus parameter lengths (ShapeError).
void check_model(const Genus3Model& m);

template <class S>
struct LimitStructure {
  MixedHodgeStructure<S> mhs;  // nodal: the limit (F∞, M); reducible: pure
  NilpotentOperator<S> N;
};

/// Split H¹_lim = ℚ(0) ⊕ H¹(C̃₀) ⊕ ℚ(−1) (nodal) or H¹(C₁) ⊕ H¹(C₂) (reducible).
template <class S>
LimitStructure<S> build_h1_lim(const Genus3Model& m);
/// Λ³H¹_lim(2) with the induced N.
template <class S>
LimitStructure<S> build_h3_lim(const Genus3Model& m);

/// F^p = {h + λ(h)·one_dual : h ∈ F^p H³} + [p ≤ 0]·(one + ẑ + b·one_dual) + [p ≤ −1]·one_dual,
/// N = N_{H³} ⊕ 0. Nodal: ẑ = Σ aj_z[k]·α₃*∧pair_k, λ(h) = Σ aj_w[k]·⟨β₃*∧pair_k, h⟩.
/// Reducible: ẑ = Σ aj_z[k]·e_k, λ(h) = Σ aj_w[k]·h_k.
template <class S>
NilpotentOrbit<S> build_v_lim(const Genus3Model& m);

template <class S>
struct Boundary {
  SubObject<S> Q;          // 𝒬 ⊆ 𝒱_lim with its inclusion
  Vec<S> one, one_dual;    // generators in 𝒬 coordinates
  Biextension<S> B;        // boundary biextension
  Matrix<S> f;             // 𝒬 → B, generator-matching
};

/// Nodal: 𝒬 = ⟨one, one_dual⟩ + (Ker N ∩ H³), B = 𝒬 / (M_{−2} ∩ H³).
/// Reducible: 𝒬 = 𝒱_lim = B. Throws VerificationFailure if f is not a morphism.
template <class S>
Boundary<S> build_boundary(const Genus3Model& m, const NilpotentOrbit<S>& v);
template <class S>
Boundary<S> build_boundary(const Genus3Model& m);

struct MainTheoremReport {
  double limit_height = 0;     // H(N, F∞, W)
  double boundary_height = 0;  // Ht(B)
  double gap = 0;
  double restriction_distance = 0;  // ‖δ_M|𝒬 − δ_𝒬‖
  double delta_m0 = 0;              // ‖δ_{M,0}‖
  double mu = 0;
  std::map<std::string, std::map<int, std::size_t>> graded_dims;  // "H1", "H3", "V", "Q", "B"
  std::string describe() const;
};

template <class S>
MainTheoremReport verify_main_theorem(const Genus3Model& m);

}  // namespace mhx
