#pragma once

// Weight filtrations of nilpotent endomorphisms: W(N) centred at an integer,
// the relative filtration M(N, W), and the Leibniz action on exterior powers.

#include <optional>
#include <string>

#include "mhx/subspace.hpp"

namespace mhx {

template <class S>
struct NilpotentOperator {
  Matrix<S> N;
  std::size_t order = 0;  // smallest k with N^k = 0

  /// Throws ShapeError (non-square) or NilpotencyError.
  static NilpotentOperator make(Matrix<S> n);
  std::size_t dim() const { return N.rows(); }
};

/// Outcome of one defining condition at one index.
/// shift: N(M_l) ⊆ M_{l−2} (k unused). iso: N^l : Gr_{k+l} → Gr_{k−l} is an isomorphism
/// (on Gr^W_k for the relative filtration; k is the centre for W(N)).
struct FiltrationCheck {
  enum class Kind { shift, iso };
  Kind kind;
  int k = 0;
  int l = 0;
  bool passed = true;
};

struct FiltrationReport {
  std::vector<FiltrationCheck> checks;
  bool ok() const;
  std::optional<FiltrationCheck> first_failure() const;
  std::string describe() const;
};

template <class S>
struct WeightFiltrationResult {
  Filtration<S> W;
  int center = 0;
};

/// W(N) centred at c, built from kernels and images of powers of N and verified.
/// Throws VerificationFailure if the verifier rejects the construction.
template <class S>
WeightFiltrationResult<S> weight_filtration(const NilpotentOperator<S>& n, int c);

template <class S>
FiltrationReport verify_weight(const Filtration<S>& w, const Matrix<S>& n, int c);

template <class S>
struct RelativeWeightFiltration {
  Filtration<S> M;
  Matrix<S> N;
  Filtration<S> W;
};

/// M(N, W), centred at k on Gr^W_k. Throws PreconditionError if N does not
/// preserve W and NonExistence if no filtration passes the verifier.
template <class S>
RelativeWeightFiltration<S> relative_weight_filtration(const NilpotentOperator<S>& n, const Filtration<S>& w);

template <class S>
FiltrationReport verify_relative(const Filtration<S>& m, const Matrix<S>& n, const Filtration<S>& w);

/// Λ^k N acting as a derivation on the lexicographic basis of Λ^k.
template <class S>
NilpotentOperator<S> induced_on_exterior_power(const NilpotentOperator<S>& n, std::size_t k);

}  // namespace mhx
