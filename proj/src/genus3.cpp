#include "mhx/genus3.hpp"

#include <sstream>

namespace mhx {

namespace {

constexpr std::size_t h1_dim = 6, h3_dim = 20, v_dim = 22;
constexpr std::size_t one_index = 0, one_dual_index = v_dim - 1;

mpq_class det(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

const NodalModel* as_nodal(const Genus3Model& m) { return std::get_if<NodalModel>(&m); }

template <class S>
S lift(const GaussianRational& x) {
  return ScalarTraits<S>::from_exact(x);
}

// Pairs of {α₁*, α₂*, β₁*, β₂*} in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> normalization_pairs() {
  const std::size_t idx[] = {0, 1, 3, 4};
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) out.emplace_back(idx[i], idx[j]);
  return out;
}

template <class S>
Vec<S> unit_vec(std::size_t n, std::size_t i) {
  Vec<S> v(n, ScalarTraits<S>::zero());
  v[i] = ScalarTraits<S>::one();
  return v;
}

// e_a ∧ e_b ∧ e_c in the Λ³H¹ basis
template <class S>
Vec<S> wedge3(std::size_t a, std::size_t b, std::size_t c) {
  return wedge<S>({unit_vec<S>(h1_dim, a), unit_vec<S>(h1_dim, b), unit_vec<S>(h1_dim, c)});
}

template <class S>
Vec<S> embed_h3(const Vec<S>& h) {
  Vec<S> v(v_dim, ScalarTraits<S>::zero());
  for (std::size_t i = 0; i < h3_dim; ++i) v[1 + i] = h[i];
  return v;
}

// ẑ ∈ H³ and the functional λ on H³ as a coefficient vector
template <class S>
std::pair<Vec<S>, Vec<S>> extension_data(const Genus3Model& m) {
  Vec<S> z(h3_dim, ScalarTraits<S>::zero()), lambda(h3_dim, ScalarTraits<S>::zero());
  if (const auto* n = as_nodal(m)) {
    const auto pairs = normalization_pairs();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Vec<S> a = wedge3<S>(2, pairs[k].first, pairs[k].second);
      const Vec<S> b = wedge3<S>(5, pairs[k].first, pairs[k].second);
      for (std::size_t i = 0; i < h3_dim; ++i) {
        z[i] += lift<S>(n->aj_z[k]) * a[i];
        lambda[i] += lift<S>(n->aj_w[k]) * b[i];
      }
    }
  } else {
    const auto& r = std::get<ReducibleModel>(m);
    for (std::size_t i = 0; i < h3_dim; ++i) {
      z[i] = lift<S>(r.aj_z[i]);
      lambda[i] = lift<S>(r.aj_w[i]);
    }
  }
  return {z, lambda};
}

const GaussianRational& extension_b(const Genus3Model& m) {
  return std::visit([](const auto& x) -> const GaussianRational& { return x.b; }, m);
}

template <class S>
std::map<int, std::size_t> graded_dims_of(const Filtration<S>& w) {
  std::map<int, std::size_t> out;
  auto sup = w.support();
  if (!sup) return out;
  for (int k = sup->first; k <= sup->second; ++k)
    if (auto d = w.at(k).dim() - w.at(k - 1).dim()) out[k] = d;
  return out;
}

}  // namespace

void check_period_matrix(const Matrix<GaussianRational>& tau) {
  const std::size_t n = tau.rows();
  if (n == 0 || tau.cols() != n) throw InvalidPeriodMatrix("period matrix must be square and nonempty");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(tau(i, j) == tau(j, i))) throw InvalidPeriodMatrix("period matrix is not symmetric");
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<mpq_class>> im(k, std::vector<mpq_class>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) im[i][j] = tau(i, j).im();
    if (sgn(det(im)) <= 0)
      throw InvalidPeriodMatrix("Im tau is not positive definite (leading minor " + std::to_string(k) + ")");
  }
}

Matrix<GaussianRational> period_matrix(const Genus3Model& m) {
  if (const auto* n = as_nodal(m)) {
    Matrix<GaussianRational> t(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) t(i, j) = n->tau[i][j];
    return t;
  }
  const auto& r = std::get<ReducibleModel>(m);
  Matrix<GaussianRational> t(3, 3);
  t(0, 0) = r.tau1;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t(1 + i, 1 + j) = r.tau2[i][j];
  return t;
}

void check_model(const Genus3Model& m) {
  check_period_matrix(period_matrix(m));
  const std::size_t want = as_nodal(m) ? nodal_aj_length : reducible_aj_length;
  std::visit(
      [&](const auto& x) {
        if (x.aj_z.size() != want || x.aj_w.size() != want)
          throw ShapeError("aj_z and aj_w must have length " + std::to_string(want));
      },
      m);
}

template <class S>
LimitStructure<S> build_h1_lim(const Genus3Model& m) {
  check_model(m);
  const Matrix<GaussianRational> tau = period_matrix(m);
  const std::size_t g = tau.rows();  // pairs carrying a period matrix: 2 (nodal) or 3
  std::vector<Vec<S>> f1;
  for (std::size_t j = 0; j < g; ++j) {
    Vec<S> w = unit_vec<S>(h1_dim, j);
    for (std::size_t k = 0; k < g; ++k) w[3 + k] = lift<S>(tau(j, k));
    f1.push_back(w);
  }
  LimitStructure<S> out;
  Matrix<S> n(h1_dim, h1_dim);
  Filtration<S> w;
  if (as_nodal(m)) {
    // ℚ(0) = α₃*, ℚ(−1) = β₃* (type (1,1), so in F¹); N β₃* = α₃*
    f1.push_back(unit_vec<S>(h1_dim, 5));
    n(2, 5) = ScalarTraits<S>::one();
    auto m0 = Subspace<S>::span(h1_dim, {unit_vec<S>(h1_dim, 2)});
    auto m1 = Subspace<S>::span(h1_dim, {unit_vec<S>(h1_dim, 0), unit_vec<S>(h1_dim, 1), unit_vec<S>(h1_dim, 2),
                                         unit_vec<S>(h1_dim, 3), unit_vec<S>(h1_dim, 4)});
    w = Filtration<S>(h1_dim, Direction::increasing, 0, {m0, m1, Subspace<S>::whole(h1_dim)});
  } else {
    w = Filtration<S>::pure(h1_dim, Direction::increasing, 1);
  }
  Filtration<S> f(h1_dim, Direction::decreasing, 0, {Subspace<S>::whole(h1_dim), Subspace<S>::span(h1_dim, f1)});
  out.mhs = validate(w, f);
  out.N = NilpotentOperator<S>::make(n);
  return out;
}

template <class S>
LimitStructure<S> build_h3_lim(const Genus3Model& m) {
  auto h1 = build_h1_lim<S>(m);
  return {tate_twist(exterior_power(h1.mhs, 3), 2), induced_on_exterior_power(h1.N, 3)};
}

template <class S>
NilpotentOrbit<S> build_v_lim(const Genus3Model& m) {
  using T = ScalarTraits<S>;
  auto h3 = build_h3_lim<S>(m);
  auto [z, lambda] = extension_data<S>(m);

  Matrix<S> n(v_dim, v_dim);
  for (std::size_t i = 0; i < h3_dim; ++i)
    for (std::size_t j = 0; j < h3_dim; ++j) n(1 + i, 1 + j) = h3.N.N(i, j);

  Vec<S> top = embed_h3(z);
  top[one_index] = T::one();
  top[one_dual_index] = lift<S>(extension_b(m));
  const Vec<S> one = unit_vec<S>(v_dim, one_index), one_dual = unit_vec<S>(v_dim, one_dual_index);

  const auto& fh = h3.mhs.F();
  const int lo = std::min(fh.lo(), -1), hi = std::max(fh.hi(), 0);
  std::vector<Subspace<S>> steps;
  for (int p = lo; p <= hi; ++p) {
    std::vector<Vec<S>> gens;
    for (const auto& h : fh.at(p).basis()) {
      Vec<S> v = embed_h3(h);
      S l = T::zero();
      for (std::size_t i = 0; i < h3_dim; ++i) l += lambda[i] * h[i];
      v[one_dual_index] = l;
      gens.push_back(v);
    }
    if (p <= 0) gens.push_back(top);
    if (p <= -1) gens.push_back(one_dual);
    steps.push_back(Subspace<S>::span(v_dim, gens));
  }
  Filtration<S> f(v_dim, Direction::decreasing, lo, std::move(steps));

  std::vector<Vec<S>> mid;
  for (std::size_t i = 1; i < v_dim; ++i) mid.push_back(unit_vec<S>(v_dim, i));
  Filtration<S> w(v_dim, Direction::increasing, -2,
                  {Subspace<S>::span(v_dim, {one_dual}), Subspace<S>::span(v_dim, mid), Subspace<S>::whole(v_dim)});
  return make_orbit(n, std::move(f), std::move(w), one, one_dual);
}

template <class S>
Boundary<S> build_boundary(const Genus3Model& m, const NilpotentOrbit<S>& v) {
  Boundary<S> out;
  const Vec<S>& one = v.one;
  const Vec<S>& one_dual = v.one_dual;
  if (!as_nodal(m)) {
    out.Q = sub_mhs(v.limit_mhs, Subspace<S>::whole(v_dim));
    out.one = out.Q.mhs.W().at(0).coordinates(one);
    out.one_dual = out.Q.mhs.W().at(0).coordinates(one_dual);
    out.B = as_biextension(out.Q.mhs, out.one, out.one_dual);
    out.f = Matrix<S>::identity(v_dim);
  } else {
    std::vector<Vec<S>> h3;
    for (std::size_t i = 1; i <= h3_dim; ++i) h3.push_back(unit_vec<S>(v_dim, i));
    const auto h3_space = Subspace<S>::span(v_dim, h3);
    const auto ker_h = intersect(kernel(v.N.N), h3_space);
    auto gens = ker_h.basis();
    gens.push_back(one);
    gens.push_back(one_dual);
    const auto q_space = Subspace<S>::span(v_dim, gens);
    out.Q = sub_mhs(v.limit_mhs, q_space);
    out.one = q_space.coordinates(one);
    out.one_dual = q_space.coordinates(one_dual);
    // kill the weight −2 part of H³ inside 𝒬
    std::vector<Vec<S>> low;
    for (const auto& x : intersect(v.M.at(-2), h3_space).basis()) low.push_back(q_space.coordinates(x));
    auto quo = quotient_mhs(out.Q.mhs, Subspace<S>::span(q_space.dim(), low));
    out.f = quo.map;
    out.B = as_biextension(quo.mhs, out.f.apply(out.one), out.f.apply(out.one_dual));
  }
  try {
    check_morphism(out.f, out.Q.mhs, out.B.mhs);
  } catch (const NotAMorphism& e) {
    throw VerificationFailure(std::string("boundary map is not a morphism: ") + e.what());
  }
  return out;
}

template <class S>
Boundary<S> build_boundary(const Genus3Model& m) {
  return build_boundary(m, build_v_lim<S>(m));
}

std::string MainTheoremReport::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "limit height H(N,F,W): " << limit_height << "\n"
     << "boundary height Ht(B): " << boundary_height << "\n"
     << "gap: " << gap << "\n"
     << "restriction distance: " << restriction_distance << "\n"
     << "delta_M,0 norm: " << delta_m0 << "\n"
     << "mu: " << mu << "\n";
  for (const auto& [name, dims] : graded_dims) {
    os << "graded dims " << name << ":";
    for (auto it = dims.rbegin(); it != dims.rend(); ++it) os << " " << it->first << ":" << it->second;
    os << "\n";
  }
  return os.str();
}

template <class S>
MainTheoremReport verify_main_theorem(const Genus3Model& m) {
  MainTheoremReport r;
  auto h1 = build_h1_lim<S>(m);
  auto h3 = build_h3_lim<S>(m);
  auto v = build_v_lim<S>(m);
  auto e = grading_y_nfw(v);
  auto b = build_boundary(m, v);
  r.limit_height = limit_height(v, e);
  r.boundary_height = height(b.B);
  r.gap = std::abs(r.limit_height - r.boundary_height);
  r.mu = ScalarTraits<S>::to_complex(mu(v, e)).real();
  r.delta_m0 = to_complex(e.delta_parts.at(0)).max_abs();
  const auto dq = delta(b.Q.mhs).delta;
  r.restriction_distance = distance(to_complex(Matrix<S>(e.delta_M * b.Q.map)), to_complex(Matrix<S>(b.Q.map * dq)));
  r.graded_dims["H1"] = h1.mhs.graded_dims();
  r.graded_dims["H3"] = h3.mhs.graded_dims();
  r.graded_dims["V"] = graded_dims_of(v.M);
  r.graded_dims["Q"] = b.Q.mhs.graded_dims();
  r.graded_dims["B"] = b.B.mhs.graded_dims();
  return r;
}

#define MHX_INSTANTIATE(S)                                                             \
  template LimitStructure<S> build_h1_lim(const Genus3Model&);                         \
  template LimitStructure<S> build_h3_lim(const Genus3Model&);                         \
  template NilpotentOrbit<S> build_v_lim(const Genus3Model&);                          \
  template Boundary<S> build_boundary(const Genus3Model&, const NilpotentOrbit<S>&);   \
  template Boundary<S> build_boundary(const Genus3Model&);                             \
  template MainTheoremReport verify_main_theorem<S>(const Genus3Model&);

MHX_INSTANTIATE(GaussianRational)
MHX_INSTANTIATE(Complex)

}  // namespace mhx
