#include "mhx/subspace.hpp"

namespace mhx {

template <class S>
Subspace<S> Subspace<S>::span(std::size_t n, const std::vector<Vec<S>>& gens, double ref_scale) {
  Subspace out(n);
  if (gens.empty()) return out;
  for (const auto& g : gens)
    if (g.size() != n) throw DimensionMismatch("generator length does not match ambient dimension");
  Matrix<S> m = Matrix<S>::from_rows(n, gens);
  out.pivots_ = rref(m, ref_scale);
  out.basis_ = std::move(m);
  return out;
}

template <class S>
Subspace<S> Subspace<S>::whole(std::size_t n) {
  Subspace out(n);
  out.basis_ = Matrix<S>::identity(n);
  for (std::size_t i = 0; i < n; ++i) out.pivots_.push_back(i);
  return out;
}

template <class S>
Subspace<S> Subspace<S>::column_space(const Matrix<S>& m) {
  return span(m.rows(), m.columns());
}

template <class S>
Vec<S> Subspace<S>::residual(const Vec<S>& v) const {
  if (v.size() != n_) throw DimensionMismatch("vector length does not match ambient dimension");
  Vec<S> r = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    S c = v[pivots_[i]];
    if constexpr (ScalarTraits<S>::exact) {
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!basis_(i, j).is_zero()) r[j] -= c * basis_(i, j);
    } else {
      if (c == S{}) continue;
      kernels::axpy(n_, -c, basis_.row_ptr(i), r.data());
    }
  }
  return r;
}

template <class S>
bool Subspace<S>::contains(const Vec<S>& v) const {
  return vec_is_zero(residual(v), max_abs(v));
}

template <class S>
bool Subspace<S>::contains(const Subspace& other) const {
  if (other.n_ != n_) throw DimensionMismatch("subspaces live in different spaces");
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

template <class S>
Vec<S> Subspace<S>::coordinates_of(const Vec<S>& v) const {
  Vec<S> x(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) x[i] = v[pivots_[i]];
  return x;
}

template <class S>
std::vector<std::size_t> Subspace<S>::complement_indices() const {
  std::vector<bool> piv(n_, false);
  for (auto p : pivots_) piv[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (!piv[i]) out.push_back(i);
  return out;
}

template <class S>
Matrix<S> Subspace<S>::quotient_projection() const {
  // proj(v)_c = v_c − Σ_i v_{p_i}·b_i[c]  for c not a pivot
  auto comp = complement_indices();
  Matrix<S> q(comp.size(), n_);
  for (std::size_t r = 0; r < comp.size(); ++r) {
    q(r, comp[r]) = ScalarTraits<S>::one();
    for (std::size_t i = 0; i < pivots_.size(); ++i) q(r, pivots_[i]) -= basis_(i, comp[r]);
  }
  return q;
}

template <class S>
Subspace<S> Subspace<S>::conjugate() const {
  // conjugating an echelon basis keeps it echelon with the same pivots
  Subspace out = *this;
  out.basis_ = basis_.conj();
  return out;
}

template <class S>
bool Subspace<S>::is_real() const {
  return equals(conjugate());
}

template <class S>
bool Subspace<S>::equals(const Subspace& other) const {
  if (n_ != other.n_ || dim() != other.dim()) return false;
  if constexpr (ScalarTraits<S>::exact)
    return pivots_ == other.pivots_ && basis_ == other.basis_;
  else
    return contains(other) && other.contains(*this);
}

template <class S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b) {
  const std::size_t n = a.ambient();
  if (b.ambient() != n) throw DimensionMismatch("intersect: subspaces live in different spaces");
  if (a.is_zero() || b.is_zero()) return Subspace<S>(n);
  if (a.is_whole()) return b;
  if (b.is_whole()) return a;
  // Σ x_i a_i − Σ y_j b_j = 0
  const std::size_t da = a.dim(), db = b.dim();
  Matrix<S> m(n, da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t r = 0; r < n; ++r) m(r, i) = a.rref_basis()(i, r);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t r = 0; r < n; ++r) m(r, da + j) = -b.rref_basis()(j, r);
  std::vector<Vec<S>> gens;
  for (const auto& x : null_space(m)) {
    Vec<S> v(n, ScalarTraits<S>::zero());
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t r = 0; r < n; ++r) v[r] += x[i] * a.rref_basis()(i, r);
    gens.push_back(std::move(v));
  }
  return Subspace<S>::span(n, gens);
}

template <class S>
Subspace<S> sum(const Subspace<S>& a, const Subspace<S>& b) {
  if (b.ambient() != a.ambient()) throw DimensionMismatch("sum: subspaces live in different spaces");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto gens = a.basis();
  for (auto& v : b.basis()) gens.push_back(std::move(v));
  return Subspace<S>::span(a.ambient(), gens);
}

template <class S>
Subspace<S> image(const Matrix<S>& t, const Subspace<S>& a) {
  if (t.cols() != a.ambient()) throw DimensionMismatch("image: map/subspace size mismatch");
  std::vector<Vec<S>> gens;
  double scale = 0;
  for (const auto& v : a.basis()) {
    scale = std::max(scale, max_abs(v));
    gens.push_back(t.apply(v));
  }
  return Subspace<S>::span(t.rows(), gens, scale * t.max_abs());
}

template <class S>
Subspace<S> kernel(const Matrix<S>& t) {
  return Subspace<S>::span(t.cols(), null_space(t));
}

template <class S>
Subspace<S> preimage(const Matrix<S>& t, const Subspace<S>& a) {
  if (t.rows() != a.ambient()) throw DimensionMismatch("preimage: map/subspace size mismatch");
  if (a.is_whole()) return Subspace<S>::whole(t.cols());
  return kernel(Matrix<S>(a.quotient_projection() * t));
}

template <class S>
Subspace<S> annihilator(const Subspace<S>& a) {
  if (a.is_zero()) return Subspace<S>::whole(a.ambient());
  return kernel(a.rref_basis());
}

template <class S>
QuotientMap<S> quotient_map(std::size_t n, const Subspace<S>& s) {
  if (s.ambient() != n) throw DimensionMismatch("quotient: subspace not in this space");
  QuotientMap<S> q;
  q.dim = n - s.dim();
  q.projection = s.quotient_projection();
  return q;
}

// ---------------------------------------------------------------------------

template <class S>
Filtration<S>::Filtration(std::size_t n, Direction dir, int lo, std::vector<Subspace<S>> steps)
    : n_(n), dir_(dir), lo_(lo), steps_(std::move(steps)) {
  for (const auto& s : steps_)
    if (s.ambient() != n_) throw DimensionMismatch("filtration step lives in a different space");
  for (std::size_t i = 0; i + 1 < steps_.size(); ++i) {
    const auto& small = dir_ == Direction::increasing ? steps_[i] : steps_[i + 1];
    const auto& big = dir_ == Direction::increasing ? steps_[i + 1] : steps_[i];
    if (!big.contains(small))
      throw FiltrationError("filtration is not a chain at index " + std::to_string(lo_ + static_cast<int>(i)));
  }
  if (!steps_.empty()) {
    if (dir_ == Direction::increasing && !steps_.back().is_whole())
      throw FiltrationError("top weight step " + std::to_string(hi()) + " is not the whole space");
    if (dir_ == Direction::decreasing && !steps_.front().is_whole())
      throw FiltrationError("bottom Hodge step " + std::to_string(lo_) + " is not the whole space");
  }
}

template <class S>
Filtration<S> Filtration<S>::pure(std::size_t n, Direction dir, int level) {
  return Filtration(n, dir, level, {Subspace<S>::whole(n)});
}

template <class S>
Filtration<S> Filtration<S>::from_map(std::size_t n, Direction dir, const std::map<int, Subspace<S>>& steps) {
  if (steps.empty()) return pure(n, dir, 0);
  int lo = steps.begin()->first, hi = steps.rbegin()->first;
  std::vector<Subspace<S>> v(static_cast<std::size_t>(hi - lo + 1));
  if (dir == Direction::increasing) {
    for (int k = lo; k <= hi; ++k) {
      auto it = steps.find(k);
      v[static_cast<std::size_t>(k - lo)] = it != steps.end() ? it->second : v[static_cast<std::size_t>(k - lo - 1)];
    }
  } else {
    for (int k = hi; k >= lo; --k) {
      auto it = steps.find(k);
      v[static_cast<std::size_t>(k - lo)] = it != steps.end() ? it->second : v[static_cast<std::size_t>(k - lo + 1)];
    }
  }
  return Filtration(n, dir, lo, std::move(v));
}

template <class S>
Subspace<S> Filtration<S>::at(int k) const {
  if (steps_.empty() || k < lo_)
    return dir_ == Direction::increasing ? Subspace<S>(n_) : Subspace<S>::whole(n_);
  if (k > hi()) return dir_ == Direction::increasing ? Subspace<S>::whole(n_) : Subspace<S>(n_);
  return steps_[static_cast<std::size_t>(k - lo_)];
}

template <class S>
std::optional<std::pair<int, int>> Filtration<S>::support() const {
  if (n_ == 0) return std::nullopt;
  if (steps_.empty()) return std::make_pair(lo_, lo_);
  int a = lo_, b = hi();
  if (dir_ == Direction::increasing) {
    int first_nonzero = hi(), first_whole = hi();
    for (int k = hi(); k >= lo_; --k) {
      if (!at(k).is_zero()) first_nonzero = k;
      if (at(k).is_whole()) first_whole = k;
    }
    a = first_nonzero;
    b = first_whole;
  } else {
    int last_whole = lo_, last_nonzero = lo_;
    for (int k = lo_; k <= hi(); ++k) {
      if (at(k).is_whole()) last_whole = k;
      if (!at(k).is_zero()) last_nonzero = k;
    }
    a = last_whole;
    b = last_nonzero;
  }
  return std::make_pair(a, b);
}

template <class S>
Filtration<S> Filtration<S>::transformed(const Matrix<S>& g) const {
  std::vector<Subspace<S>> v;
  for (const auto& s : steps_) v.push_back(image(g, s));
  return Filtration(g.rows(), dir_, lo_, std::move(v));
}

template <class S>
Filtration<S> Filtration<S>::conjugate() const {
  std::vector<Subspace<S>> v;
  for (const auto& s : steps_) v.push_back(s.conjugate());
  return Filtration(n_, dir_, lo_, std::move(v));
}

template <class S>
Filtration<S> Filtration<S>::shifted(int offset) const {
  return Filtration(n_, dir_, lo_ - offset, steps_);
}

template <class S>
bool Filtration<S>::equals(const Filtration& other) const {
  if (n_ != other.n_ || dir_ != other.dir_) return false;
  int a = std::min(lo_, other.lo_), b = std::max(hi(), other.hi());
  for (int k = a; k <= b; ++k)
    if (!(at(k) == other.at(k))) return false;
  return true;
}

template <class S>
Subspace<Complex> to_complex(const Subspace<S>& s) {
  std::vector<Vec<Complex>> gens;
  for (const auto& v : s.basis()) {
    Vec<Complex> w;
    for (const auto& x : v) w.push_back(ScalarTraits<S>::to_complex(x));
    gens.push_back(std::move(w));
  }
  return Subspace<Complex>::span(s.ambient(), gens);
}

template <class S>
Filtration<Complex> to_complex(const Filtration<S>& f) {
  std::vector<Subspace<Complex>> steps;
  for (int k = f.lo(); k <= f.hi(); ++k) steps.push_back(to_complex(f.at(k)));
  return Filtration<Complex>(f.ambient(), f.direction(), f.lo(), std::move(steps));
}

#define MHX_INSTANTIATE(S)                                                  \
  template class Subspace<S>;                                               \
  template class Filtration<S>;                                             \
  template Subspace<S> intersect(const Subspace<S>&, const Subspace<S>&);   \
  template Subspace<S> sum(const Subspace<S>&, const Subspace<S>&);         \
  template Subspace<S> image(const Matrix<S>&, const Subspace<S>&);         \
  template Subspace<S> preimage(const Matrix<S>&, const Subspace<S>&);      \
  template Subspace<S> kernel(const Matrix<S>&);                            \
  template Subspace<S> annihilator(const Subspace<S>&);                     \
  template QuotientMap<S> quotient_map(std::size_t, const Subspace<S>&);    \
  template Subspace<Complex> to_complex(const Subspace<S>&);                \
  template Filtration<Complex> to_complex(const Filtration<S>&);

MHX_INSTANTIATE(GaussianRational)
MHX_INSTANTIATE(Complex)

}  // namespace mhx
