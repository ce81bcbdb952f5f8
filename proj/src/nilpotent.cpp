#include "mhx/nilpotent.hpp"

#include <sstream>

#include "mhx/mhs.hpp"

namespace mhx {

namespace {

template <class S>
std::vector<Matrix<S>> powers_of(const Matrix<S>& n) {
  std::vector<Matrix<S>> pw{Matrix<S>::identity(n.rows())};
  for (std::size_t j = 0; j <= n.rows(); ++j) pw.push_back(pw.back() * n);
  return pw;
}

// W(N̄) on A/B centred at c, as subspaces between B and A; keys are contiguous.
template <class S>
std::map<int, Subspace<S>> weight_between(const std::vector<Matrix<S>>& pw, Subspace<S> a, Subspace<S> b, int c) {
  std::map<int, Subspace<S>> out;
  std::optional<int> upper;
  for (;;) {
    int l = 0;
    while (l + 1 < static_cast<int>(pw.size()) && !b.contains(image(pw[static_cast<std::size_t>(l + 1)], a))) ++l;
    for (int j = l; j <= upper.value_or(l); ++j) {
      out[c + j] = a;
      out[c - j - 1] = b;
    }
    if (l == 0) break;
    upper = l - 1;
    const auto& nl = pw[static_cast<std::size_t>(l)];
    Subspace<S> a2 = intersect(a, preimage(nl, b));
    Subspace<S> b2 = sum(b, image(nl, a));
    a = std::move(a2);
    b = std::move(b2);
  }
  return out;
}

// Cut an increasing filtration down to its tight support.
template <class S>
Filtration<S> tight(const Filtration<S>& f, int fallback) {
  const std::size_t n = f.ambient();
  auto sup = f.support();
  if (!sup) return Filtration<S>::pure(n, Direction::increasing, fallback);
  std::vector<Subspace<S>> steps;
  for (int k = sup->first; k <= sup->second; ++k) steps.push_back(f.at(k));
  return Filtration<S>(n, Direction::increasing, sup->first, std::move(steps));
}

std::size_t dim_diff(std::size_t hi, std::size_t lo) { return hi - lo; }

}  // namespace

bool FiltrationReport::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::optional<FiltrationCheck> FiltrationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return c;
  return std::nullopt;
}

std::string FiltrationReport::describe() const {
  auto f = first_failure();
  if (!f) return "all conditions hold";
  std::ostringstream os;
  if (f->kind == FiltrationCheck::Kind::shift)
    os << "N(M_" << f->l << ") is not contained in M_" << f->l - 2;
  else
    os << "N^" << f->l << " is not an isomorphism Gr_" << f->k + f->l << " -> Gr_" << f->k - f->l << " (k=" << f->k
       << ")";
  return os.str();
}

template <class S>
NilpotentOperator<S> NilpotentOperator<S>::make(Matrix<S> n) {
  if (n.rows() != n.cols()) throw ShapeError("N must be square");
  NilpotentOperator out;
  out.order = nilpotency_order(n);
  out.N = std::move(n);
  return out;
}

template <class S>
FiltrationReport verify_weight(const Filtration<S>& w, const Matrix<S>& n, int c) {
  FiltrationReport rep;
  if (n.rows() != w.ambient() || n.cols() != w.ambient()) throw DimensionMismatch("verify_weight: N and W sizes differ");
  auto sup = w.support();
  if (!sup) return rep;
  auto [lo, hi] = *sup;
  for (int l = lo; l <= hi + 2; ++l)
    rep.checks.push_back({FiltrationCheck::Kind::shift, c, l, w.at(l - 2).contains(image(n, w.at(l)))});
  auto pw = powers_of(n);
  const int reach = std::max(hi - c, c - lo) + 1;
  for (int j = 1; j <= reach; ++j) {
    const auto& nj = pw[std::min<std::size_t>(static_cast<std::size_t>(j), pw.size() - 1)];
    const std::size_t up = dim_diff(w.at(c + j).dim(), w.at(c + j - 1).dim());
    const std::size_t down = dim_diff(w.at(c - j).dim(), w.at(c - j - 1).dim());
    bool ok = up == down;
    if (ok) ok = w.at(c + j - 1).contains(intersect(w.at(c + j), preimage(nj, w.at(c - j - 1))));
    rep.checks.push_back({FiltrationCheck::Kind::iso, c, j, ok});
  }
  return rep;
}

template <class S>
WeightFiltrationResult<S> weight_filtration(const NilpotentOperator<S>& n, int c) {
  const std::size_t d = n.dim();
  auto steps = weight_between(powers_of(n.N), Subspace<S>::whole(d), Subspace<S>(d), c);
  WeightFiltrationResult<S> out;
  out.center = c;
  out.W = tight(Filtration<S>::from_map(d, Direction::increasing, steps), c);
  auto rep = verify_weight(out.W, n.N, c);
  if (!rep.ok()) throw VerificationFailure("weight filtration failed its verifier: " + rep.describe());
  return out;
}

template <class S>
FiltrationReport verify_relative(const Filtration<S>& m, const Matrix<S>& n, const Filtration<S>& w) {
  FiltrationReport rep;
  const std::size_t d = w.ambient();
  if (m.ambient() != d || n.rows() != d || n.cols() != d) throw DimensionMismatch("verify_relative: sizes differ");
  auto msup = m.support();
  auto wsup = w.support();
  if (!msup || !wsup) return rep;
  auto [mlo, mhi] = *msup;
  for (int l = mlo; l <= mhi + 2; ++l)
    rep.checks.push_back({FiltrationCheck::Kind::shift, 0, l, m.at(l - 2).contains(image(n, m.at(l)))});
  auto pw = powers_of(n);
  for (int k = wsup->first; k <= wsup->second; ++k) {
    const Subspace<S> wk = w.at(k), wk1 = w.at(k - 1);
    std::map<int, Subspace<S>> memo;
    auto mk = [&](int j) -> const Subspace<S>& {
      auto it = memo.find(j);
      if (it == memo.end()) it = memo.emplace(j, sum(intersect(m.at(j), wk), wk1)).first;
      return it->second;
    };
    const int reach = std::max(mhi - k, k - mlo) + 1;
    for (int l = 1; l <= reach; ++l) {
      const auto& nl = pw[std::min<std::size_t>(static_cast<std::size_t>(l), pw.size() - 1)];
      bool ok = dim_diff(mk(k + l).dim(), mk(k + l - 1).dim()) == dim_diff(mk(k - l).dim(), mk(k - l - 1).dim());
      if (ok) ok = mk(k + l - 1).contains(intersect(mk(k + l), preimage(nl, mk(k - l - 1))));
      rep.checks.push_back({FiltrationCheck::Kind::iso, k, l, ok});
    }
  }
  return rep;
}

template <class S>
RelativeWeightFiltration<S> relative_weight_filtration(const NilpotentOperator<S>& n, const Filtration<S>& w) {
  const std::size_t d = n.dim();
  if (w.ambient() != d) throw DimensionMismatch("relative_weight_filtration: N and W sizes differ");
  auto wsup = w.support();
  if (wsup)
    for (int k = wsup->first; k <= wsup->second; ++k)
      if (!w.at(k).contains(image(n.N, w.at(k))))
        throw PreconditionError("N does not preserve W_" + std::to_string(k));

  RelativeWeightFiltration<S> out{w, n.N, w};
  if (!wsup || n.order <= 1) return out;  // N = 0 → M = W
  auto [wlo, whi] = *wsup;
  if (wlo == whi) {
    out.M = weight_filtration(n, wlo).W;
    return out;
  }

  // Bottom-up over W: extend M from W_{k−1} to W_k by lifting the primitive
  // pieces of W(N̄) on Gr^W_k to vectors whose N-string lands in the right step.
  auto pw = powers_of(n.N);
  const int span = static_cast<int>(d) + 2;
  const int LO = wlo - span, HI = whi + span;
  std::map<int, Subspace<S>> prev;  // M on W_{k−1}
  for (int j = LO; j <= HI; ++j) prev[j] = Subspace<S>(d);
  for (int k = wlo; k <= whi; ++k) {
    const Subspace<S> wk = w.at(k), wk1 = w.at(k - 1);
    auto mq_map = weight_between(pw, wk, wk1, k);
    auto mq = [&](int j) {
      if (j > mq_map.rbegin()->first) return wk;
      if (j < mq_map.begin()->first) return wk1;
      return mq_map.at(j);
    };
    auto prev_at = [&](int j) {
      if (j < LO) return Subspace<S>(d);
      if (j > HI) return wk1;
      return prev.at(j);
    };
    std::map<int, std::vector<Vec<S>>> added;  // threshold → vectors entering M from that index on
    for (int r = 0; r <= static_cast<int>(d); ++r) {
      const auto& nr1 = pw[std::min<std::size_t>(static_cast<std::size_t>(r + 1), pw.size() - 1)];
      Subspace<S> good = intersect(mq(k + r), preimage(nr1, prev_at(k - r - 2)));
      Subspace<S> running = mq(k + r - 1);
      std::vector<Vec<S>> lifts;
      for (const auto& v : good.basis())
        if (!running.contains(v)) {
          lifts.push_back(v);
          running = sum(running, Subspace<S>::span(d, {v}));
        }
      for (int i = 0; i <= r; ++i)
        for (const auto& x : lifts) added[k + r - 2 * i].push_back(pw[static_cast<std::size_t>(i)].apply(x));
    }
    std::map<int, Subspace<S>> next;
    std::vector<Vec<S>> acc;
    for (int j = LO; j <= HI; ++j) {
      auto it = added.find(j);
      if (it != added.end()) acc.insert(acc.end(), it->second.begin(), it->second.end());
      next[j] = sum(prev_at(j), Subspace<S>::span(d, acc));
    }
    if (!(next.at(HI) == wk))
      throw NonExistence("relative weight filtration does not exist: lifts from Gr^W_" + std::to_string(k) +
                         " do not span W_" + std::to_string(k));
    prev = std::move(next);
  }
  out.M = tight(Filtration<S>::from_map(d, Direction::increasing, prev), wlo);
  auto rep = verify_relative(out.M, n.N, w);
  if (!rep.ok()) throw NonExistence("relative weight filtration does not exist: " + rep.describe());
  return out;
}

template <class S>
NilpotentOperator<S> induced_on_exterior_power(const NilpotentOperator<S>& n, std::size_t k) {
  const std::size_t d = n.dim();
  if (k > d) throw PreconditionError("exterior power degree exceeds the dimension");
  auto subsets = k_subsets(d, k);
  Matrix<S> out(subsets.size(), subsets.size());
  for (std::size_t col = 0; col < subsets.size(); ++col) {
    std::vector<Vec<S>> us;
    for (auto s : subsets[col]) {
      Vec<S> e(d, ScalarTraits<S>::zero());
      e[s] = ScalarTraits<S>::one();
      us.push_back(std::move(e));
    }
    for (std::size_t slot = 0; slot < k; ++slot) {
      auto vs = us;
      vs[slot] = n.N.column(subsets[col][slot]);
      Vec<S> w = wedge(vs);
      for (std::size_t r = 0; r < subsets.size(); ++r) out(r, col) += w[r];
    }
  }
  return NilpotentOperator<S>::make(std::move(out));
}

#define MHX_INSTANTIATE(S)                                                                                       \
  template struct NilpotentOperator<S>;                                                                          \
  template FiltrationReport verify_weight(const Filtration<S>&, const Matrix<S>&, int);                         \
  template WeightFiltrationResult<S> weight_filtration(const NilpotentOperator<S>&, int);                       \
  template FiltrationReport verify_relative(const Filtration<S>&, const Matrix<S>&, const Filtration<S>&);      \
  template RelativeWeightFiltration<S> relative_weight_filtration(const NilpotentOperator<S>&,                  \
                                                                  const Filtration<S>&);                        \
  template NilpotentOperator<S> induced_on_exterior_power(const NilpotentOperator<S>&, std::size_t);

MHX_INSTANTIATE(GaussianRational)
MHX_INSTANTIATE(Complex)

}  // namespace mhx
