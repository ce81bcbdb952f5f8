#pragma once

// Subspaces of a coordinate space with a fixed rational structure, and
// increasing/decreasing filtrations by them.

#include <map>
#include <optional>
#include <string>

#include "mhx/matrix.hpp"

namespace mhx {

template <class S>
class Subspace {
 public:
  Subspace() = default;
  /// Zero subspace of an n-dimensional space.
  explicit Subspace(std::size_t n) : n_(n), basis_(0, n) {}

  /// ref_scale: magnitude of the data the generators were computed from (float rank rule).
  static Subspace span(std::size_t n, const std::vector<Vec<S>>& gens, double ref_scale = 0);
  static Subspace whole(std::size_t n);
  /// Column space of m (m has n rows).
  static Subspace column_space(const Matrix<S>& m);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_whole() const { return dim() == n_; }

  /// Reduced echelon basis, one vector per row; pivots()[i] is the pivot column of row i.
  const Matrix<S>& rref_basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vec<S>> basis() const { return rows(); }
  Vec<S> basis_vector(std::size_t i) const { return basis_.row(i); }

  /// v minus its projection along the echelon basis; zero iff v ∈ this.
  Vec<S> residual(const Vec<S>& v) const;
  bool contains(const Vec<S>& v) const;
  bool contains(const Subspace& other) const;
  /// Echelon coordinates: v = Σ x_i·basis_i (assumes v ∈ this).
  Vec<S> coordinates(const Vec<S>& v) const { return coordinates_of(v); }

  /// Complement rule: standard basis vectors at non-pivot indices, ascending.
  std::vector<std::size_t> complement_indices() const;
  /// Matrix of V → V/this in the complement coordinates.
  Matrix<S> quotient_projection() const;

  Subspace conjugate() const;
  bool is_real() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.equals(b); }
  bool equals(const Subspace& other) const;

 private:
  std::vector<Vec<S>> rows() const {
    std::vector<Vec<S>> out;
    for (std::size_t i = 0; i < basis_.rows(); ++i) out.push_back(basis_.row(i));
    return out;
  }
  Vec<S> coordinates_of(const Vec<S>& v) const;

  std::size_t n_ = 0;
  Matrix<S> basis_;
  std::vector<std::size_t> pivots_;
};

template <class S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b);
template <class S>
Subspace<S> sum(const Subspace<S>& a, const Subspace<S>& b);
template <class S>
Subspace<S> image(const Matrix<S>& t, const Subspace<S>& a);
/// {v : t·v ∈ a}
template <class S>
Subspace<S> preimage(const Matrix<S>& t, const Subspace<S>& a);
template <class S>
Subspace<S> kernel(const Matrix<S>& t);
/// Annihilator {φ : φ(v) = 0 ∀ v ∈ a}, as coefficient vectors (no conjugation).
template <class S>
Subspace<S> annihilator(const Subspace<S>& a);

template <class S>
struct QuotientMap {
  std::size_t dim = 0;
  Matrix<S> projection;
};

template <class S>
QuotientMap<S> quotient_map(std::size_t n, const Subspace<S>& s);

enum class Direction { increasing, decreasing };

/// Increasing: F_k = 0 below lo, whole above hi. Decreasing: F^p = whole below
/// lo, 0 above hi. The chain is validated at construction.
template <class S>
class Filtration {
 public:
  Filtration() = default;
  Filtration(std::size_t n, Direction dir, int lo, std::vector<Subspace<S>> steps);

  /// Single-step filtrations: W_k = 0 (k < w), whole (k ≥ w); F^p = whole (p ≤ p0), 0 otherwise.
  static Filtration pure(std::size_t n, Direction dir, int level);
  static Filtration from_map(std::size_t n, Direction dir, const std::map<int, Subspace<S>>& steps);

  std::size_t ambient() const { return n_; }
  Direction direction() const { return dir_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(steps_.size()) - 1; }
  Subspace<S> at(int k) const;
  Subspace<S> operator[](int k) const { return at(k); }

  /// Tight support: increasing → [smallest k with W_k ≠ 0, smallest k with W_k whole];
  /// decreasing → [largest p with F^p whole, largest p with F^p ≠ 0]. Empty space → nullopt.
  std::optional<std::pair<int, int>> support() const;

  Filtration transformed(const Matrix<S>& g) const;
  Filtration conjugate() const;
  Filtration shifted(int offset) const;  // G_k = F_{k+offset}
  bool equals(const Filtration& other) const;
  friend bool operator==(const Filtration& a, const Filtration& b) { return a.equals(b); }

 private:
  std::size_t n_ = 0;
  Direction dir_ = Direction::increasing;
  int lo_ = 0;
  std::vector<Subspace<S>> steps_;
};

/// Entrywise conversion to the float backend.
template <class S>
Subspace<Complex> to_complex(const Subspace<S>& s);
template <class S>
Filtration<Complex> to_complex(const Filtration<S>& f);

}  // namespace mhx
