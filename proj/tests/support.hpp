#pragma once

// Hand-rolled generators shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <random>
#include <vector>

#include "mhx/matrix.hpp"
#include "mhx/subspace.hpp"

namespace mhx::testing {

using Q = GaussianRational;

inline Q q(long num, long den = 1) { return Q(mpq_class(num, den)); }
inline Q qi(long re_num, long re_den, long im_num, long im_den) {
  return Q(mpq_class(re_num, re_den), mpq_class(im_num, im_den));
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  mpq_class rational(long bound = 5, long den_bound = 4) {
    mpq_class r(integer(-bound, bound), integer(1, den_bound));
    r.canonicalize();
    return r;
  }
  mpq_class nonzero_rational(long bound = 5, long den_bound = 4) {
    for (;;) {
      auto r = rational(bound, den_bound);
      if (sgn(r) != 0) return r;
    }
  }
  Q gaussian(long bound = 5, long den_bound = 4) { return Q(rational(bound, den_bound), rational(bound, den_bound)); }

  template <class S>
  S scalar() {
    return ScalarTraits<S>::from_exact(gaussian());
  }
  template <class S>
  S real_scalar() {
    return ScalarTraits<S>::from_exact(Q(rational()));
  }

  template <class S>
  Vec<S> vec(std::size_t n, bool real_only = false) {
    Vec<S> v(n);
    for (auto& x : v) x = real_only ? real_scalar<S>() : scalar<S>();
    return v;
  }

  template <class S>
  Matrix<S> matrix(std::size_t r, std::size_t c, bool real_only = false) {
    Matrix<S> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = real_only ? real_scalar<S>() : scalar<S>();
    return m;
  }

  /// Invertible rational matrix: unit lower × unit upper, entries of height ≤ bound.
  template <class S>
  Matrix<S> invertible_rational(std::size_t n, long bound = 2, long den = 2) {
    Matrix<S> l = Matrix<S>::identity(n), u = Matrix<S>::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        l(i, j) = ScalarTraits<S>::from_exact(Q(rational(bound, den)));
        u(j, i) = ScalarTraits<S>::from_exact(Q(rational(bound, den)));
      }
    return l * u;
  }

  /// Vector with Gaussian-rational entries of height ≤ bound.
  template <class S>
  Vec<S> small_vec(std::size_t n, bool real_only, long bound = 2, long den = 2) {
    Vec<S> v(n);
    for (auto& x : v)
      x = ScalarTraits<S>::from_exact(real_only ? Q(rational(bound, den)) : Q(rational(bound, den), rational(bound, den)));
    return v;
  }

  /// Random subspace of dimension ≤ k spanned by k random vectors (possibly dependent).
  template <class S>
  Subspace<S> subspace(std::size_t n, std::size_t k, bool real_only = false) {
    std::vector<Vec<S>> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(vec<S>(n, real_only));
    if (k >= 2 && coin()) {
      // force a dependency
      Vec<S> v = gens[0];
      for (std::size_t j = 0; j < n; ++j) v[j] += gens[1][j];
      gens.back() = v;
    }
    return Subspace<S>::span(n, gens);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

template <class S>
Vec<S> unit(std::size_t n, std::size_t i) {
  Vec<S> v(n, ScalarTraits<S>::zero());
  v[i] = ScalarTraits<S>::one();
  return v;
}

template <class S>
Subspace<S> span_units(std::size_t n, std::initializer_list<std::size_t> idx) {
  std::vector<Vec<S>> gens;
  for (auto i : idx) gens.push_back(unit<S>(n, i));
  return Subspace<S>::span(n, gens);
}

template <class S>
Vec<S> vec_of(std::initializer_list<Q> xs) {
  Vec<S> v;
  for (const auto& x : xs) v.push_back(ScalarTraits<S>::from_exact(x));
  return v;
}

}  // namespace mhx::testing

#include "mhx/biextension.hpp"
#include "mhx/genus3.hpp"
#include "mhx/mhs.hpp"

namespace mhx::testing {

/// Random valid MHS of dimension n with weights in [wmin, wmax]:
/// a split bigrading (complex pairs and real diagonal pieces), bent by a random
/// element of Λ^{−1,−1} (so it is generally not split), then moved by a random
/// rational change of basis.
template <class S>
MixedHodgeStructure<S> random_mhs(Gen& g, std::size_t n, int wmin = -3, int wmax = 2, bool bend = true);

template <>
inline MixedHodgeStructure<Complex> random_mhs<Complex>(Gen& g, std::size_t n, int wmin, int wmax, bool bend) {
  auto m = random_mhs<Q>(g, n, wmin, wmax, bend);
  return validate(to_complex(m.W()), to_complex(m.F()));
}

template <class S>
MixedHodgeStructure<S> random_mhs(Gen& g, std::size_t n, int wmin, int wmax, bool bend) {
  using T = ScalarTraits<S>;
  for (int attempt = 0;; ++attempt) {
    std::vector<Bidegree> types;
    std::vector<Vec<S>> cols;
    // Split basis: permuted coordinate vectors (pairs e_a ± i·e_b) with sparse
    // small perturbations, so the adapted basis stays well conditioned.
    std::vector<std::size_t> coord(n);
    for (std::size_t i = 0; i < n; ++i) coord[i] = i;
    std::shuffle(coord.begin(), coord.end(), g.engine());
    auto perturb = [&](Vec<S>& v, bool real_only) {
      for (auto& x : v)
        if (g.integer(0, 3) == 0)
          x += T::from_exact(real_only ? Q(g.rational(1, 2)) : Q(g.rational(1, 2), g.rational(1, 2)));
    };
    while (types.size() < n) {
      int w = static_cast<int>(g.integer(wmin, wmax));
      const bool room_for_pair = n - types.size() >= 2;
      if (room_for_pair && (w % 2 != 0 || g.coin())) {
        int q = static_cast<int>(std::floor((w - 1) / 2.0)) - static_cast<int>(g.integer(0, 1));
        int p = w - q;
        Vec<S> v(n, T::zero());
        v[coord[types.size()]] = T::one();
        v[coord[types.size() + 1]] = T::i();
        perturb(v, false);
        types.push_back({p, q});
        cols.push_back(v);
        types.push_back({q, p});
        cols.push_back(conj(v));
      } else {
        if (w % 2 != 0) w += (w + 1 <= wmax) ? 1 : -1;
        Vec<S> v(n, T::zero());
        v[coord[types.size()]] = T::one();
        perturb(v, true);
        types.push_back({w / 2, w / 2});
        cols.push_back(v);
      }
    }
    Matrix<S> P = Matrix<S>::from_columns(n, cols);
    if (rank(P) != n) continue;
    Matrix<S> X(n, n);
    if (bend)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (types[r].first < types[c].first && types[r].second < types[c].second)
            X(r, c) = T::from_exact(Q(g.rational(1, 2), g.rational(1, 2)));
    Matrix<S> gmat = P * exp_nilpotent(X, T::one()) * inverse(P);
    // change of basis: unit lower-bidiagonal with ±1/0 entries, conjugated by a
    // random permutation; h and h⁻¹ both have entries of size ≤ 1
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), g.engine());
    Matrix<S> h = Matrix<S>::identity(n);
    for (std::size_t r = 1; r < n; ++r)
      if (g.integer(0, 2) != 0) h(perm[r], perm[r - 1]) = T::from_exact(Q(mpq_class(g.coin() ? 1 : -1)));
    auto span_cols = [&](auto pred) {
      std::vector<Vec<S>> gens;
      for (std::size_t i = 0; i < n; ++i)
        if (pred(types[i])) gens.push_back(cols[i]);
      return Subspace<S>::span(n, gens);
    };
    std::vector<Subspace<S>> w, f;
    for (int k = wmin; k <= wmax; ++k) w.push_back(image(h, span_cols([k](Bidegree t) { return t.first + t.second <= k; })));
    int plo = 100, phi = -100;
    for (auto t : types) {
      plo = std::min(plo, t.first);
      phi = std::max(phi, t.first);
    }
    for (int p = plo; p <= phi; ++p)
      f.push_back(image(Matrix<S>(h * gmat), span_cols([p](Bidegree t) { return t.first >= p; })));
    return validate(Filtration<S>(n, Direction::increasing, wmin, std::move(w)),
                    Filtration<S>(n, Direction::decreasing, plo, std::move(f)));
  }
}

/// Nilpotent Jordan matrix with blocks of the given sizes (N e_i = e_{i+1} inside a block).
template <class S>
Matrix<S> jordan_matrix(const std::vector<std::size_t>& sizes) {
  std::size_t n = 0;
  for (auto s : sizes) n += s;
  Matrix<S> m(n, n);
  std::size_t off = 0;
  for (auto s : sizes) {
    for (std::size_t i = 0; i + 1 < s; ++i) m(off + i + 1, off + i) = ScalarTraits<S>::one();
    off += s;
  }
  return m;
}

/// All partitions of n (non-increasing parts).
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n, std::size_t max_part = 0) {
  if (max_part == 0) max_part = n;
  if (n == 0) return {{}};
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t p = std::min(n, max_part); p >= 1; --p)
    for (auto rest : partitions(n - p, p)) {
      rest.insert(rest.begin(), p);
      out.push_back(std::move(rest));
    }
  return out;
}

/// g·J·g⁻¹ for a random Jordan type on n and a random rational g; sizes receives the type.
template <class S>
Matrix<S> random_nilpotent(Gen& g, std::size_t n, std::vector<std::size_t>* sizes = nullptr) {
  auto parts = partitions(n);
  auto type = parts[static_cast<std::size_t>(g.integer(0, static_cast<long>(parts.size()) - 1))];
  if (sizes) *sizes = type;
  Matrix<S> h = g.invertible_rational<S>(n, 1, 1);
  return h * jordan_matrix<S>(type) * inverse(h);
}

/// Filtrations differing from w at exactly one index: the step is replaced by a
/// neighbouring step, or by a different subspace of the same dimension squeezed
/// between its neighbours. Increasing filtrations only.
template <class S>
std::vector<std::pair<int, Filtration<S>>> single_index_perturbations(Gen& g, const Filtration<S>& w) {
  std::vector<std::pair<int, Filtration<S>>> out;
  const std::size_t n = w.ambient();
  auto sup = w.support();
  if (!sup) return out;
  const int lo = sup->first - 1, hi = sup->second + 1;
  auto with = [&](int l, const Subspace<S>& s) {
    std::map<int, Subspace<S>> m;
    for (int k = lo - 1; k <= hi + 1; ++k) m[k] = w.at(k);
    m[l] = s;
    m[hi + 2] = Subspace<S>::whole(n);
    return Filtration<S>::from_map(n, Direction::increasing, m);
  };
  for (int l = lo; l <= hi; ++l) {
    const auto below = w.at(l - 1), here = w.at(l), above = w.at(l + 1);
    if (!(below == here)) out.push_back({l, with(l, below)});
    if (!(above == here)) out.push_back({l, with(l, above)});
    if (below.dim() < here.dim() && here.dim() < above.dim()) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        auto gens = below.basis();
        auto up = above.basis();
        while (Subspace<S>::span(n, gens).dim() < here.dim()) {
          Vec<S> v(n, ScalarTraits<S>::zero());
          for (const auto& u : up) {
            auto c = ScalarTraits<S>::from_exact(Q(g.rational(3, 2)));
            for (std::size_t i = 0; i < n; ++i) v[i] += c * u[i];
          }
          gens.push_back(v);
        }
        auto alt = Subspace<S>::span(n, gens);
        if (!(alt == here)) {
          out.push_back({l, with(l, alt)});
          break;
        }
      }
    }
  }
  return out;
}

/// Random biextension with a weight −1 piece of genus g (dim 2 + 2g):
/// basis one, α_1..α_g, β_1..β_g, one_dual; F⁰_H = span(α_j + Σ τ_jk β_k) with
/// Im τ = 1 + diagonal, F⁰ = span(one + u + z·one_dual, h_j + w_j·one_dual),
/// then moved by a sparse rational change of basis. split = true gives u = w = 0, z real.
template <class S>
Biextension<S> random_biextension(Gen& g, std::size_t genus, bool split = false) {
  using T = ScalarTraits<S>;
  const std::size_t n = 2 + 2 * genus, last = n - 1;
  auto small = [&]() { return T::from_exact(Q(g.rational(2, 3), g.rational(2, 3))); };
  std::vector<Vec<S>> f0;
  Vec<S> top(n, T::zero());
  top[0] = T::one();
  top[last] = split ? T::from_exact(Q(g.rational(3, 4))) : small();
  if (!split)
    for (std::size_t i = 1; i < last; ++i) top[i] = small();
  f0.push_back(top);
  std::vector<std::vector<Q>> tau(genus, std::vector<Q>(genus));
  for (std::size_t j = 0; j < genus; ++j)
    for (std::size_t k = j; k < genus; ++k) {
      Q re(g.rational(1, 2));
      Q im = j == k ? Q(mpq_class(1) + mpq_class(g.integer(0, 2), 2)) : Q();
      tau[j][k] = tau[k][j] = re + Q(mpq_class(0), im.re());
    }
  for (std::size_t j = 0; j < genus; ++j) {
    Vec<S> v(n, T::zero());
    v[1 + j] = T::one();
    for (std::size_t k = 0; k < genus; ++k) v[1 + genus + k] = T::from_exact(tau[j][k]);
    if (!split) v[last] = small();
    f0.push_back(v);
  }
  std::vector<Vec<S>> wm1;
  for (std::size_t i = 1; i < n; ++i) wm1.push_back(unit<S>(n, i));
  auto line = Subspace<S>::span(n, {unit<S>(n, last)});
  Filtration<S> w(n, Direction::increasing, -2, {line, Subspace<S>::span(n, wm1), Subspace<S>::whole(n)});
  Filtration<S> f(n, Direction::decreasing, -1, {Subspace<S>::whole(n), Subspace<S>::span(n, f0)});
  Matrix<S> h = Matrix<S>::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (r != c && g.integer(0, 3) == 0) h(r, c) = T::from_exact(Q(mpq_class(g.integer(-1, 1))));
  if (rank(h) != n) h = Matrix<S>::identity(n);
  return as_biextension(validate(w.transformed(h), f.transformed(h)), h.column(0), h.column(last));
}

}  // namespace mhx::testing

namespace mhx::testing {

/// Inputs of a nilpotent orbit over a biextension-shaped W.
template <class S>
struct OrbitData {
  Matrix<S> N;
  Filtration<S> F, W;
  Vec<S> one, one_dual;
};

inline OrbitData<Complex> to_complex(const OrbitData<Q>& d) {
  auto v = [](const Vec<Q>& x) {
    Vec<Complex> out;
    for (const auto& e : x) out.push_back(e.to_complex());
    return out;
  };
  return {to_complex(d.N), to_complex(d.F), to_complex(d.W), v(d.one), v(d.one_dual)};
}

template <class S>
OrbitData<S> on_backend(const OrbitData<Q>& d) {
  if constexpr (std::is_same_v<S, Q>)
    return d;
  else
    return to_complex(d);
}

/// Kind A: N(one) = m·one_dual and N = 0 on W_{−1}, middle piece of the given genus.
/// Kind B: genus-1 middle with the nodal degeneration, basis one, α, β, one_dual:
/// N(one) = a·α + m·one_dual, N(β) = α + ℓ·one_dual, F⁰ = span(one + u·α + w·one_dual,
/// β + τ₀·α + w₁·one_dual). Both are moved by a sparse rational change of basis.
enum class OrbitKind { A, B };

inline OrbitData<Q> random_orbit_data(Gen& g, OrbitKind kind, std::size_t genus = 1) {
  auto small = [&]() { return Q(g.rational(2, 3), g.rational(2, 3)); };
  auto rat = [&](long bound, long den) { return Q(g.rational(bound, den)); };
  OrbitData<Q> d;
  if (kind == OrbitKind::A) {
    auto b = random_biextension<Q>(g, genus);
    const std::size_t n = b.mhs.dim();
    Vec<Q> psi = annihilator(b.mhs.W().at(-1)).basis_vector(0);
    Q s;
    for (std::size_t i = 0; i < n; ++i) s += psi[i] * b.one[i];
    Q m = rat(3, 2);
    if (m.is_zero()) m = q(1);
    d.N = Matrix<Q>(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) d.N(r, c) = m * b.one_dual[r] * psi[c] / s;
    d.F = b.mhs.F();
    d.W = b.mhs.W();
    d.one = b.one;
    d.one_dual = b.one_dual;
    return d;
  }
  const std::size_t n = 4;
  Matrix<Q> nm(n, n);
  nm(1, 0) = rat(2, 2);
  nm(3, 0) = rat(2, 2);
  nm(1, 2) = q(1);
  nm(3, 2) = rat(2, 2);
  Q tau0 = Q(g.rational(1, 2), mpq_class(g.integer(0, 2), 2));
  Filtration<Q> f(n, Direction::decreasing, -1,
                  {Subspace<Q>::whole(n), Subspace<Q>::span(n, {vec_of<Q>({q(1), small(), q(0), small()}),
                                                               vec_of<Q>({q(0), tau0, q(1), small()})})});
  Filtration<Q> w(n, Direction::increasing, -2,
                  {span_units<Q>(n, {3}), span_units<Q>(n, {1, 2, 3}), Subspace<Q>::whole(n)});
  Matrix<Q> h = Matrix<Q>::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (r != c && g.integer(0, 3) == 0) h(r, c) = Q(mpq_class(g.integer(-1, 1)));
  if (rank(h) != n) h = Matrix<Q>::identity(n);
  d.N = h * nm * inverse(h);
  d.F = f.transformed(h);
  d.W = w.transformed(h);
  d.one = h.column(0);
  d.one_dual = h.column(n - 1);
  return d;
}

}  // namespace mhx::testing

namespace mhx::testing {

/// Symmetric 2×2 period matrix with Im τ = [[a, c], [c, d]], a, d ≥ 1, |c| ≤ 1/2.
inline std::array<std::array<Q, 2>, 2> random_period_2(Gen& g) {
  auto im_diag = [&]() { return mpq_class(2 + g.integer(0, 2), 2); };
  const mpq_class c(g.integer(-1, 1), 2);
  const Q off(g.rational(1, 2), c);
  return {{{Q(g.rational(1, 2), im_diag()), off}, {off, Q(g.rational(1, 2), im_diag())}}};
}

inline std::vector<Q> random_aj(Gen& g, std::size_t n) {
  std::vector<Q> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Q(g.rational(2, 3), g.rational(2, 3)));
  return out;
}

inline NodalModel random_nodal_model(Gen& g) {
  return {random_period_2(g), random_aj(g, nodal_aj_length), random_aj(g, nodal_aj_length),
          Q(g.rational(2, 3), g.rational(2, 3))};
}

inline ReducibleModel random_reducible_model(Gen& g) {
  return {Q(g.rational(1, 2), mpq_class(2 + g.integer(0, 2), 2)), random_period_2(g), random_aj(g, reducible_aj_length),
          random_aj(g, reducible_aj_length), Q(g.rational(2, 3), g.rational(2, 3))};
}

}  // namespace mhx::testing
