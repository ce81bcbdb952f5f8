#include "mhx/mhs.hpp"

#include <numeric>

namespace mhx {

namespace {

// Internal consistency checks on float data are looser than rank decisions:
// they guard against solver bugs, not rounding.
double verify_tol(double scale) { return 1e4 * tolerance() * std::max(1.0, scale); }

template <class S>
bool negligible_verify(const Matrix<S>& m, double scale) {
  if constexpr (ScalarTraits<S>::exact)
    return m.is_zero_exact();
  else
    return m.max_abs() <= verify_tol(scale);
}

template <class S>
Subspace<S> span_of(std::size_t n, const std::vector<const Subspace<S>*>& parts) {
  std::vector<Vec<S>> gens;
  for (auto* p : parts)
    for (auto& v : p->basis()) gens.push_back(std::move(v));
  return Subspace<S>::span(n, gens);
}

// entries (r, c) of x with w_r − w_c == e, others zeroed
template <class S>
Matrix<S> mask_shift(const Matrix<S>& x, const std::vector<int>& w, int e) {
  Matrix<S> out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c)
      if (w[r] - w[c] == e) out(r, c) = x(r, c);
  return out;
}

}  // namespace

template <class S>
Subspace<S> Bigrading<S>::piece(int a, int b) const {
  auto it = pieces.find({a, b});
  return it == pieces.end() ? Subspace<S>(P.rows()) : it->second;
}

template <class S>
std::vector<int> Bigrading<S>::column_weights() const {
  std::vector<int> w;
  for (auto [a, b] : column_type) w.push_back(a + b);
  return w;
}

template <class S>
Matrix<S> Bigrading<S>::shift_component(const Matrix<S>& x, int e) const {
  return P * mask_shift(P_inv * x * P, column_weights(), e) * P_inv;
}

template <class S>
bool Bigrading<S>::in_lambda_minus(const Matrix<S>& x) const {
  Matrix<S> xp = P_inv * x * P;
  Matrix<S> bad(xp.rows(), xp.cols());
  for (std::size_t r = 0; r < xp.rows(); ++r)
    for (std::size_t c = 0; c < xp.cols(); ++c) {
      auto [ar, br] = column_type[r];
      auto [ac, bc] = column_type[c];
      if (!(ar < ac && br < bc)) bad(r, c) = xp(r, c);
    }
  return negligible_verify(bad, xp.max_abs());
}

template <class S>
MixedHodgeStructure<S> MixedHodgeStructure<S>::validate(Filtration<S> W, Filtration<S> F) {
  const std::size_t n = W.ambient();
  if (F.ambient() != n) throw DimensionMismatch("W and F live in different spaces");
  if (W.direction() != Direction::increasing || F.direction() != Direction::decreasing)
    throw FiltrationError("W must be increasing and F decreasing");
  for (int k = W.lo(); k <= W.hi(); ++k)
    if (!W.at(k).is_real()) throw PreconditionError("W_" + std::to_string(k) + " is not defined over the rationals");

  MixedHodgeStructure out;
  out.W_ = std::move(W);
  out.F_ = std::move(F);
  auto g = std::make_shared<Bigrading<S>>();
  g->P = Matrix<S>(n, 0);
  g->P_inv = Matrix<S>(0, n);
  g->Y = Matrix<S>(n, n);
  if (n == 0) {
    out.grading_ = g;
    return out;
  }
  const auto& Wf = out.W_;
  const auto& Ff = out.F_;
  auto [wlo, whi] = *Wf.support();
  auto [plo, phi] = *Ff.support();

  std::map<std::pair<int, int>, Subspace<S>> fw_cache;  // F^p ∩ W_k
  auto FW = [&](int p, int k) -> const Subspace<S>& {
    auto key = std::make_pair(p, k);
    auto it = fw_cache.find(key);
    if (it == fw_cache.end()) it = fw_cache.emplace(key, intersect(Ff.at(p), Wf.at(k))).first;
    return it->second;
  };
  // U^r_s = Σ_{j≥0} F^{r−j} ∩ W_{s−j}
  auto U = [&](int r, int s) {
    Subspace<S> u(n);
    for (int j = 0; s - j >= wlo; ++j) u = sum(u, FW(r - j, s - j));
    return u;
  };

  std::vector<Vec<S>> cols;
  for (int a = plo; a <= phi; ++a)
    for (int b = wlo - phi; b <= whi - plo; ++b) {
      const int k = a + b;
      if (k < wlo || k > whi) continue;
      Subspace<S> rhs = sum(intersect(Ff.at(b).conjugate(), Wf.at(k)), U(b - 1, k - 2).conjugate());
      Subspace<S> piece = intersect(FW(a, k), rhs);
      if (piece.is_zero()) continue;
      for (auto& v : piece.basis()) {
        cols.push_back(std::move(v));
        g->column_type.push_back({a, b});
      }
      g->pieces.emplace(Bidegree{a, b}, std::move(piece));
      if (cols.size() > n || rank(Matrix<S>::from_rows(n, cols)) != cols.size())
        throw NotAnMHS(a, b, "the bigrading is not a direct sum");
    }

  // W and F must be rebuilt from the pieces
  auto rebuilt = [&](auto pred) {
    std::vector<const Subspace<S>*> parts;
    for (const auto& [ab, sp] : g->pieces)
      if (pred(ab.first, ab.second)) parts.push_back(&sp);
    return span_of(n, parts);
  };
  for (int p = plo; p <= phi + 1; ++p)
    if (!(rebuilt([p](int a, int) { return a >= p; }) == Ff.at(p)))
      throw NotAnMHS(p, whi - p, "F^" + std::to_string(p) + " is not rebuilt by the bigrading");
  for (int k = wlo - 1; k <= whi; ++k)
    if (!(rebuilt([k](int a, int b) { return a + b <= k; }) == Wf.at(k)))
      throw NotAnMHS(plo, k - plo, "W_" + std::to_string(k) + " is not rebuilt by the bigrading");

  // conj(I^{a,b}) ⊆ I^{b,a} ⊕ ⊕_{r<b, s<a} I^{r,s}
  for (const auto& [ab, sp] : g->pieces) {
    auto [a, b] = ab;
    Subspace<S> target = rebuilt([a = a, b = b](int r, int s) { return (r == b && s == a) || (r < b && s < a); });
    if (!target.contains(sp.conjugate())) throw NotAnMHS(a, b, "conjugation congruence fails");
  }

  g->P = Matrix<S>::from_columns(n, cols);
  g->P_inv = inverse(g->P);
  Matrix<S> D(n, n);
  for (std::size_t i = 0; i < n; ++i) D(i, i) = S(static_cast<long>(g->column_type[i].first + g->column_type[i].second));
  g->Y = g->P * D * g->P_inv;
  out.grading_ = g;
  return out;
}

template <class S>
std::map<int, std::size_t> MixedHodgeStructure<S>::graded_dims() const {
  std::map<int, std::size_t> out;
  for (const auto& [ab, sp] : grading_->pieces) out[ab.first + ab.second] += sp.dim();
  return out;
}

template <class S>
std::map<Bidegree, std::size_t> MixedHodgeStructure<S>::hodge_numbers() const {
  std::map<Bidegree, std::size_t> out;
  for (const auto& [ab, sp] : grading_->pieces) out[ab] = sp.dim();
  return out;
}

template <class S>
DeligneSplitting<S> deligne_bigrading(const MixedHodgeStructure<S>& m) {
  DeligneSplitting<S> d;
  d.bigrading = m.bigrading();
  d.Y = d.bigrading.Y;
  return d;
}

template <class S>
DeligneSplitting<S> delta(const MixedHodgeStructure<S>& m) {
  using T = ScalarTraits<S>;
  DeligneSplitting<S> d = deligne_bigrading(m);
  const std::size_t n = m.dim();
  const auto& g = d.bigrading;
  d.delta = Matrix<S>(n, n);
  if (n == 0) return d;
  const auto w = g.column_weights();
  const int span = *std::max_element(w.begin(), w.end()) - *std::min_element(w.begin(), w.end());

  // Work in the adapted basis, where Y is diagonal and every X below is
  // strictly weight-lowering (hence exactly nilpotent, also in floating point).
  Matrix<S> D(n, n);
  for (std::size_t i = 0; i < n; ++i) D(i, i) = S(static_cast<long>(w[i]));
  Matrix<S> Ybar = g.P_inv * d.Y.conj() * g.P;
  Matrix<S> X(n, n);
  for (int j = 2; j <= span; ++j) {
    Matrix<S> e = exp_nilpotent(X, T::one()), einv = exp_nilpotent(X, S(-T::one()));
    Matrix<S> r = Ybar - e * D * einv;
    X = X + mask_shift(r, w, -j).scaled(T::one() / S(static_cast<long>(j)));
  }
  // X = −2iδ
  Matrix<S> delta_p = X.scaled(T::i() / S(2L));
  d.delta = g.P * delta_p * g.P_inv;
  for (int j = 2; j <= span; ++j) {
    Matrix<S> c = mask_shift(delta_p, w, -j);
    if (!is_negligible(c)) d.delta_components[j] = g.P * c * g.P_inv;
  }

  const double scale = std::max(d.Y.max_abs(), d.delta.max_abs());
  if (!negligible_verify(Matrix<S>(d.delta - d.delta.conj()), scale))
    throw VerificationFailure("delta is not real");
  if (!g.in_lambda_minus(d.delta)) throw VerificationFailure("delta is not in Lambda^{-1,-1}");
  if (!negligible_verify(
          Matrix<S>(exp_nilpotent(d.delta, S(T::i() * S(-2L))) * d.Y * exp_nilpotent(d.delta, S(T::i() * S(2L))) -
                    d.Y.conj()),
          scale))
    throw VerificationFailure("delta does not satisfy conj(Y) = Ad(exp(-2i delta)) Y");
  return d;
}

template <class S>
double delta_residual(const DeligneSplitting<S>& d) {
  using T = ScalarTraits<S>;
  if (d.Y.rows() == 0) return 0;
  auto lhs = exp_nilpotent(d.delta, S(T::i() * S(-2L))) * d.Y * exp_nilpotent(d.delta, S(T::i() * S(2L)));
  return distance(lhs, d.Y.conj());
}

template <class S>
bool is_split(const MixedHodgeStructure<S>& m) {
  const auto& g = m.bigrading();
  for (const auto& [ab, sp] : g.pieces)
    if (!(sp.conjugate() == g.piece(ab.second, ab.first))) return false;
  return true;
}

template <class S>
MixedHodgeStructure<S> real_split(const MixedHodgeStructure<S>& m, const Matrix<S>& delta) {
  using T = ScalarTraits<S>;
  return validate(m.W(), m.F().transformed(exp_nilpotent(delta, S(-T::i()))));
}

template <class S>
MHSMorphism<S> check_morphism(const Matrix<S>& f, const MixedHodgeStructure<S>& a, const MixedHodgeStructure<S>& b) {
  if (f.cols() != a.dim() || f.rows() != b.dim()) throw DimensionMismatch("morphism matrix has the wrong shape");
  if (!f.is_real()) throw PreconditionError("morphism matrix is not rational");
  Subspace<S> img = Subspace<S>::column_space(f);
  auto range = [](const Filtration<S>& x, const Filtration<S>& y) {
    return std::make_pair(std::min(x.lo(), y.lo()) - 1, std::max(x.hi(), y.hi()) + 1);
  };
  auto [wl, wh] = range(a.W(), b.W());
  for (int k = wl; k <= wh; ++k) {
    Subspace<S> fw = image(f, a.W().at(k));
    if (!b.W().at(k).contains(fw)) throw NotAMorphism("f(W_" + std::to_string(k) + ") is not contained in W_" + std::to_string(k));
    if (!(intersect(img, b.W().at(k)) == fw)) throw NotAMorphism("f is not strict at W_" + std::to_string(k));
  }
  auto [fl, fh] = range(a.F(), b.F());
  for (int p = fl; p <= fh; ++p) {
    Subspace<S> ff = image(f, a.F().at(p));
    if (!b.F().at(p).contains(ff)) throw NotAMorphism("f(F^" + std::to_string(p) + ") is not contained in F^" + std::to_string(p));
    if (!(intersect(img, b.F().at(p)) == ff)) throw NotAMorphism("f is not strict at F^" + std::to_string(p));
  }
  auto da = delta(a), db = delta(b);
  Matrix<S> lhs = f * da.delta, rhs = db.delta * f;
  if (!negligible_verify(Matrix<S>(lhs - rhs), std::max(lhs.max_abs(), rhs.max_abs())))
    throw VerificationFailure("f does not commute with delta");
  return {a, b, f};
}

template <class S>
Filtration<S> restrict_filtration(const Filtration<S>& f, const Subspace<S>& s) {
  std::vector<Subspace<S>> steps;
  for (int k = f.lo(); k <= f.hi(); ++k) {
    std::vector<Vec<S>> gens;
    for (const auto& v : intersect(f.at(k), s).basis()) gens.push_back(s.coordinates(v));
    steps.push_back(Subspace<S>::span(s.dim(), gens));
  }
  // the restricted chain may not reach the whole subspace at the old end points
  if (f.direction() == Direction::increasing) {
    steps.push_back(Subspace<S>::whole(s.dim()));
    return Filtration<S>(s.dim(), f.direction(), f.lo(), std::move(steps));
  }
  steps.insert(steps.begin(), Subspace<S>::whole(s.dim()));
  return Filtration<S>(s.dim(), f.direction(), f.lo() - 1, std::move(steps));
}

template <class S>
Filtration<S> push_filtration(const Filtration<S>& f, const Matrix<S>& q) {
  std::vector<Subspace<S>> steps;
  for (int k = f.lo(); k <= f.hi(); ++k) steps.push_back(image(q, f.at(k)));
  if (f.direction() == Direction::increasing) {
    steps.push_back(Subspace<S>::whole(q.rows()));
    return Filtration<S>(q.rows(), f.direction(), f.lo(), std::move(steps));
  }
  steps.insert(steps.begin(), Subspace<S>::whole(q.rows()));
  return Filtration<S>(q.rows(), f.direction(), f.lo() - 1, std::move(steps));
}

template <class S>
SubObject<S> sub_mhs(const MixedHodgeStructure<S>& m, const Subspace<S>& s) {
  if (!s.is_real()) throw PreconditionError("sub-structure must be spanned by rational vectors");
  Matrix<S> inc = Matrix<S>::from_columns(m.dim(), s.basis());
  return {validate(restrict_filtration(m.W(), s), restrict_filtration(m.F(), s)), inc};
}

template <class S>
SubObject<S> quotient_mhs(const MixedHodgeStructure<S>& m, const Subspace<S>& s) {
  if (!s.is_real()) throw PreconditionError("quotient must be by a rational subspace");
  Matrix<S> q = s.quotient_projection();
  return {validate(push_filtration(m.W(), q), push_filtration(m.F(), q)), q};
}

template <class S>
MixedHodgeStructure<S> graded_piece(const MixedHodgeStructure<S>& m, int n) {
  auto sub = sub_mhs(m, m.W().at(n));
  auto lower = restrict_filtration(m.W(), m.W().at(n)).at(n - 1);
  auto quo = quotient_mhs(sub.mhs, lower);
  // pure of weight n
  const std::size_t d = quo.mhs.dim();
  return validate(Filtration<S>::pure(d, Direction::increasing, n), quo.mhs.F());
}

template <class S>
MixedHodgeStructure<S> tate_twist(const MixedHodgeStructure<S>& m, int a) {
  return validate(m.W().shifted(2 * a), m.F().shifted(a));
}

template <class S>
MixedHodgeStructure<S> tate(int a) {
  return validate(Filtration<S>::pure(1, Direction::increasing, -2 * a), Filtration<S>::pure(1, Direction::decreasing, -a));
}

template <class S>
MixedHodgeStructure<S> dual(const MixedHodgeStructure<S>& m) {
  const std::size_t n = m.dim();
  std::vector<Subspace<S>> w, f;
  // W'_k = ann(W_{−k−1}),  F'^p = ann(F^{1−p})
  const int wlo = -m.W().hi() - 1, whi = -m.W().lo() + 1;
  for (int k = wlo; k <= whi; ++k) w.push_back(annihilator(m.W().at(-k - 1)));
  const int flo = -m.F().hi() - 1, fhi = -m.F().lo() + 1;
  for (int p = flo; p <= fhi; ++p) f.push_back(annihilator(m.F().at(1 - p)));
  return validate(Filtration<S>(n, Direction::increasing, wlo, std::move(w)),
                  Filtration<S>(n, Direction::decreasing, flo, std::move(f)));
}

template <class S>
MixedHodgeStructure<S> direct_sum(const MixedHodgeStructure<S>& a, const MixedHodgeStructure<S>& b) {
  const std::size_t n = a.dim() + b.dim();
  auto embed = [&](const Subspace<S>& x, const Subspace<S>& y) {
    std::vector<Vec<S>> gens;
    for (const auto& v : x.basis()) {
      Vec<S> e(n, ScalarTraits<S>::zero());
      std::copy(v.begin(), v.end(), e.begin());
      gens.push_back(std::move(e));
    }
    for (const auto& v : y.basis()) {
      Vec<S> e(n, ScalarTraits<S>::zero());
      std::copy(v.begin(), v.end(), e.begin() + static_cast<std::ptrdiff_t>(a.dim()));
      gens.push_back(std::move(e));
    }
    return Subspace<S>::span(n, gens);
  };
  auto combine = [&](const Filtration<S>& x, const Filtration<S>& y, Direction dir) {
    const int lo = std::min(x.lo(), y.lo()) - 1, hi = std::max(x.hi(), y.hi()) + 1;
    std::vector<Subspace<S>> steps;
    for (int k = lo; k <= hi; ++k) steps.push_back(embed(x.at(k), y.at(k)));
    return Filtration<S>(n, dir, lo, std::move(steps));
  };
  return validate(combine(a.W(), b.W(), Direction::increasing), combine(a.F(), b.F(), Direction::decreasing));
}

template <class S>
std::vector<std::pair<Vec<S>, int>> adapted_basis(const Filtration<S>& f) {
  const std::size_t n = f.ambient();
  std::vector<std::pair<Vec<S>, int>> out;
  Subspace<S> cur(n);
  auto take = [&](int k) {
    for (const auto& v : f.at(k).basis()) {
      if (cur.contains(v)) continue;
      out.push_back({v, k});
      cur = sum(cur, Subspace<S>::span(n, {v}));
    }
  };
  if (f.direction() == Direction::increasing)
    for (int k = f.lo(); k <= f.hi(); ++k) take(k);
  else
    for (int k = f.hi(); k >= f.lo(); --k) take(k);
  return out;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

namespace {

template <class S>
S determinant(Matrix<S> m) {
  using T = ScalarTraits<S>;
  const std::size_t n = m.rows();
  S det = T::one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    double bestmag = 0;
    for (std::size_t r = c; r < n; ++r) {
      double mag = T::magnitude(m(r, c));
      if constexpr (T::exact) {
        if (!m(r, c).is_zero()) {
          best = r;
          break;
        }
      } else if (mag > bestmag) {
        bestmag = mag;
        best = r;
      }
    }
    if (best == n) return T::zero();
    if (best != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(best, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    S inv = T::one() / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      S f = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

}  // namespace

template <class S>
Vec<S> wedge(const std::vector<Vec<S>>& us) {
  const std::size_t k = us.size();
  const std::size_t n = k == 0 ? 0 : us[0].size();
  auto subsets = k_subsets(n, k);
  Vec<S> out(subsets.size());
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    Matrix<S> minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = us[j][subsets[s][i]];
    out[s] = determinant(minor);
  }
  return out;
}

template <class S>
Matrix<S> exterior_power_map(const Matrix<S>& f, std::size_t k) {
  auto src = k_subsets(f.cols(), k), dst = k_subsets(f.rows(), k);
  Matrix<S> out(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    std::vector<Vec<S>> cols;
    for (auto j : src[c]) cols.push_back(f.column(j));
    Vec<S> w = wedge(cols);
    for (std::size_t r = 0; r < dst.size(); ++r) out(r, c) = w[r];
  }
  return out;
}

template <class S>
MixedHodgeStructure<S> exterior_power(const MixedHodgeStructure<S>& m, std::size_t k) {
  const std::size_t n = m.dim();
  if (k > n) throw PreconditionError("exterior power degree exceeds the dimension");
  auto subsets = k_subsets(n, k);
  const std::size_t N = subsets.size();
  auto build = [&](const Filtration<S>& f) {
    auto basis = adapted_basis(f);
    std::vector<std::pair<Vec<S>, int>> wedges;
    for (const auto& s : subsets) {
      std::vector<Vec<S>> us;
      int level = 0;
      for (auto i : s) {
        us.push_back(basis[i].first);
        level += basis[i].second;
      }
      wedges.push_back({wedge(us), level});
    }
    int lo = 0, hi = 0;
    if (!wedges.empty()) {
      lo = hi = wedges[0].second;
      for (const auto& [v, l] : wedges) {
        lo = std::min(lo, l);
        hi = std::max(hi, l);
      }
    }
    std::vector<Subspace<S>> steps;
    const bool inc = f.direction() == Direction::increasing;
    for (int l = lo; l <= hi; ++l) {
      std::vector<Vec<S>> gens;
      for (const auto& [v, lev] : wedges)
        if (inc ? lev <= l : lev >= l) gens.push_back(v);
      steps.push_back(Subspace<S>::span(N, gens));
    }
    return Filtration<S>(N, f.direction(), lo, std::move(steps));
  };
  if (k == 0)
    return validate(Filtration<S>::pure(1, Direction::increasing, 0), Filtration<S>::pure(1, Direction::decreasing, 0));
  return validate(build(m.W()), build(m.F()));
}

#define MHX_INSTANTIATE(S)                                                                                       \
  template struct Bigrading<S>;                                                                                  \
  template class MixedHodgeStructure<S>;                                                                         \
  template DeligneSplitting<S> deligne_bigrading(const MixedHodgeStructure<S>&);                                 \
  template DeligneSplitting<S> delta(const MixedHodgeStructure<S>&);                                             \
  template double delta_residual(const DeligneSplitting<S>&);                                                    \
  template bool is_split(const MixedHodgeStructure<S>&);                                                         \
  template MixedHodgeStructure<S> real_split(const MixedHodgeStructure<S>&, const Matrix<S>&);                   \
  template MHSMorphism<S> check_morphism(const Matrix<S>&, const MixedHodgeStructure<S>&,                        \
                                         const MixedHodgeStructure<S>&);                                         \
  template MixedHodgeStructure<S> graded_piece(const MixedHodgeStructure<S>&, int);                              \
  template MixedHodgeStructure<S> tate_twist(const MixedHodgeStructure<S>&, int);                                \
  template MixedHodgeStructure<S> tate(int);                                                                     \
  template MixedHodgeStructure<S> dual(const MixedHodgeStructure<S>&);                                           \
  template MixedHodgeStructure<S> exterior_power(const MixedHodgeStructure<S>&, std::size_t);                    \
  template MixedHodgeStructure<S> direct_sum(const MixedHodgeStructure<S>&, const MixedHodgeStructure<S>&);      \
  template SubObject<S> sub_mhs(const MixedHodgeStructure<S>&, const Subspace<S>&);                              \
  template SubObject<S> quotient_mhs(const MixedHodgeStructure<S>&, const Subspace<S>&);                         \
  template Filtration<S> restrict_filtration(const Filtration<S>&, const Subspace<S>&);                          \
  template Filtration<S> push_filtration(const Filtration<S>&, const Matrix<S>&);                                \
  template std::vector<std::pair<Vec<S>, int>> adapted_basis(const Filtration<S>&);                              \
  template Vec<S> wedge(const std::vector<Vec<S>>&);                                                             \
  template Matrix<S> exterior_power_map(const Matrix<S>&, std::size_t);

MHX_INSTANTIATE(GaussianRational)
MHX_INSTANTIATE(Complex)

}  // namespace mhx
