#pragma once

// Admissible biextension nilpotent orbits θ(z) = e^{zN}·F∞ over the weight
// filtration W: the limit structure (F∞, M), the grading Y(N, F∞, W) and its
// eigencomponents, μ, the limit height, coordinate changes and height scans.

#include <optional>
#include <string>

#include "mhx/biextension.hpp"
#include "mhx/nilpotent.hpp"

namespace mhx {

/// Validity of (e^{zN}F∞, W) is sampled at z = i·Im for these values; Im z ≥ 1 is
/// the region where evaluate is expected to succeed.
inline constexpr int orbit_sample_im[] = {1, 5, 10};

template <class S>
struct NilpotentOrbit {
  NilpotentOperator<S> N;
  Filtration<S> F_infinity;
  Filtration<S> W;
  Filtration<S> M;
  MixedHodgeStructure<S> limit_mhs;  // (F∞, M)
  Vec<S> one, one_dual;
};

/// Throws ShapeError (W or generators not of biextension shape), PreconditionError
/// (N not rational or not preserving W), NilpotencyError, or AdmissibilityError.
template <class S>
NilpotentOrbit<S> make_orbit(const Matrix<S>& n, Filtration<S> f_infinity, Filtration<S> w, Vec<S> one,
                             Vec<S> one_dual);

NilpotentOrbit<Complex> to_complex(const NilpotentOrbit<GaussianRational>& o);
inline const NilpotentOrbit<Complex>& to_complex(const NilpotentOrbit<Complex>& o) { return o; }

/// (e^{zN}·F∞, W) with z = log(t)/(2πi) on the principal branch.
template <class S>
Biextension<Complex> evaluate(const NilpotentOrbit<S>& o, Complex t);
template <class S>
Biextension<Complex> evaluate_z(const NilpotentOrbit<S>& o, Complex z);

template <class S>
struct EigencomponentData {
  Matrix<S> Y_nfw;
  Matrix<S> delta_M;
  Matrix<S> F_tilde_generator;       // e^{−iδ_M}, so F̃∞ = F_tilde_generator·F∞
  std::map<int, Matrix<S>> N_parts;  // j → N_j (ad Y_nfw eigenvalue j), j ∈ {−2..2}
  std::map<int, Matrix<S>> delta_parts;
  Matrix<S> delta_A;                 // δ_{M,−1}: Gr_0 → Gr_{−1}
  Matrix<S> delta_B;                 // δ_{M,−1}: Gr_{−1} → Gr_{−2}
  std::map<int, Matrix<S>> projections;  // eigenprojections of Y_nfw for eigenvalues 0, −1, −2
};

/// Y(N, F∞, W) = Ad(e^{−iN})·Y_{(e^{iN}F̃∞, W)}, F̃∞ = e^{−iδ_M}F∞, with the
/// ad(Y)-eigencomponents of N and δ_M. Throws VerificationFailure if
/// (e^{iN}F̃∞, W) is not a mixed Hodge structure.
template <class S>
EigencomponentData<S> grading_y_nfw(const NilpotentOrbit<S>& o);

/// Coefficient of one_dual in N_{−2}(one).
template <class S>
S mu(const NilpotentOrbit<S>& o);
template <class S>
S mu(const NilpotentOrbit<S>& o, const EigencomponentData<S>& e);

/// H = 2π · (coefficient of one_dual in δ_{M,−2}(one)).
template <class S>
double limit_height(const NilpotentOrbit<S>& o);
template <class S>
double limit_height(const NilpotentOrbit<S>& o, const EigencomponentData<S>& e);

/// F∞ ↦ e^{−cN}·F∞ (the coordinate change s = f·t with c = log f(0)/(2πi)).
/// H changes by μ·log|e^{2πic}| = −2πμ·Im c.
template <class S>
NilpotentOrbit<S> rescale_coordinate(const NilpotentOrbit<S>& o, const S& c);

struct ScanRecord {
  double t_abs = 0, t_arg = 0;
  double h = 0, h_tilde = 0;
  std::optional<std::string> error;
};

struct HeightScan {
  double theta = 0;
  std::vector<ScanRecord> records;  // in the order of the requested moduli
  double mu = 0;
  double H_limit = 0;
  /// |h̃ − H| at the last successful sample (NaN if none succeeded).
  double converged_gap() const;
};

/// Moduli 10^{−1}, …, 10^{−decades}.
std::vector<double> decade_moduli(int decades);

/// Samples t = r·e^{iθ}; per-sample failures are recorded, not thrown. Work is
/// spread over `threads` workers (0 = hardware concurrency); the output order is fixed.
template <class S>
HeightScan height_scan(const NilpotentOrbit<S>& o, double theta, const std::vector<double>& moduli,
                       unsigned threads = 0);

struct CrosscheckRecord {
  Complex z;
  double distance = 0;
  std::optional<std::string> error;
};

/// ‖Ad(e^{−zN})·Y_{(e^{zN}F∞, W)} − Y(N, F∞, W)‖ (max entry) at each z.
template <class S>
std::vector<CrosscheckRecord> y_limit_crosscheck(const NilpotentOrbit<S>& o, const std::vector<Complex>& zs);

}  // namespace mhx
