#include "uce/steinberg.hpp"

namespace uce {

void RelationReport::record(bool holds, const std::string& what) {
  ++checked;
  if (holds) return;
  ++violations;
  if (messages.size() < limit) messages.push_back(what);
}

void RelationReport::merge(const RelationReport& other) {
  checked += other.checked;
  violations += other.violations;
  for (const auto& m : other.messages)
    if (messages.size() < limit) messages.push_back(m);
}

std::string RelationReport::summary() const {
  std::string s = std::to_string(checked - violations) + "/" + std::to_string(checked) + " hold";
  if (!messages.empty()) s += "; first: " + messages.front();
  return s;
}

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

template <ExactScalar S>
SparseVector<S> combine(const SparseVector<S>& x, const S& a, const SparseVector<S>& y) {
  LinearCombination<S> acc;
  acc.add(x);
  acc.add(a, y);
  return std::move(acc).build();
}

}  // namespace

template <ExactScalar S>
SteinbergRealization<S>::SteinbergRealization(GeneralLinear<S> gl, SubAlgebra<S> sl, UniversalExtension<S> uce)
    : gl_(std::move(gl)), sl_(std::move(sl)), uce_(std::move(uce)) {
  const std::size_t s = size(), d = coeff().dim(), t = total().dim();
  const auto& field = total().field();
  std::vector<SparseVector<S>> pv, hv, qv;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      for (std::size_t k = 0; k < d; ++k) {
        (i < j ? pv : qv).push_back(v(i, j, coeff().basis(k)));
        for (std::size_t k2 = 0; k2 < d; ++k2) hv.push_back(h(i, j, coeff().basis(k), coeff().basis(k2)));
      }
    }
  p_ = span(t, field, pv);
  h_ = span(t, field, hv);
  q_ = span(t, field, qv);
  std::vector<SparseVector<S>> all = p_.basis();
  all.insert(all.end(), h_.basis().begin(), h_.basis().end());
  all.insert(all.end(), q_.basis().begin(), q_.basis().end());
  direct_sum_ = all.size() == t && span(t, field, all).dim() == t;
}

template <ExactScalar S>
SparseVector<S> SteinbergRealization<S>::e(std::size_t i, std::size_t j, const SparseVector<S>& a) const {
  return sl_.to_sub(gl_.E(i, j, a));
}

template <ExactScalar S>
std::size_t SteinbergRealization<S>::canonical_k(std::size_t i, std::size_t j) const {
  std::size_t k = 0;
  while (k == i || k == j) ++k;
  return k;
}

template <ExactScalar S>
SparseVector<S> SteinbergRealization<S>::v_via(std::size_t i, std::size_t j, std::size_t k,
                                               const SparseVector<S>& a) const {
  if (i == j || k == i || k == j || k >= size()) throw SuperAlgebraError("v_ij needs distinct i, j, k");
  return uce_.class_of(e(i, k, coeff().unit()), e(k, j, a));
}

template <ExactScalar S>
SparseVector<S> SteinbergRealization<S>::v(std::size_t i, std::size_t j, const SparseVector<S>& a) const {
  return v_via(i, j, canonical_k(i, j), a);
}

template <ExactScalar S>
SparseVector<S> SteinbergRealization<S>::h(std::size_t i, std::size_t j, const SparseVector<S>& a,
                                           const SparseVector<S>& b) const {
  return total().bracket(v(i, j, a), v(j, i, b));
}

template <ExactScalar S>
SteinbergRealization<S> steinberg_realize(std::size_t m, std::size_t n, const CoeffAlgebra<S>& a,
                                          const LeibnizOptions& opts, bool strict) {
  if (m + n < 3) throw SuperAlgebraError("the Steinberg relations need m+n >= 3");
  characteristic_guard(m, n, a.field());
  GeneralLinear<S> gl(m, n, a);
  auto sl = build_sl(gl);
  auto u = uce_leibniz(sl.algebra, opts);
  SteinbergRealization<S> st(std::move(gl), std::move(sl), std::move(u));
  if (strict && !st.direct_sum())
    throw SuperAlgebraError("total is not P ⊕ H ⊕ Q: dims " + std::to_string(st.P().dim()) + " + " +
                            std::to_string(st.H().dim()) + " + " + std::to_string(st.Q().dim()) + " vs " +
                            std::to_string(st.total().dim()));
  return st;
}

template <ExactScalar S>
RelationReport verify_steinberg_relations(const SteinbergRealization<S>& st) {
  RelationReport r;
  const std::size_t s = st.size(), d = st.coeff().dim();
  const auto& A = st.coeff();
  const auto& L = st.total();
  const S one = A.one();
  const S k1 = make_scalar<S>(2, A.field()), k2 = make_scalar<S>(-3, A.field());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      for (std::size_t x = 0; x < d; ++x) {
        const auto a = A.basis(x);
        const auto va = st.v(i, j, a);
        const std::string at = "(" + idx(i) + idx(j) + ", " + A.labels()[x] + ")";
        r.record(st.psi().apply(va) == st.e(i, j, a), "psi(v" + at + ") != E" + at);
        for (std::size_t k = 0; k < s; ++k)
          if (k != i && k != j)
            r.record(st.v_via(i, j, k, a) == va, "v" + at + " depends on the auxiliary index " + idx(k));
        for (std::size_t y = 0; y < d; ++y) {
          const auto b = A.basis(y);
          r.record(st.v(i, j, combine(a.scaled(k1), k2, b)) == combine(va.scaled(k1), k2, st.v(i, j, b)),
                   "linearity fails for v" + at + ", " + A.labels()[y]);
        }
      }
    }
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t l = 0; l < s; ++l) {
          if (k == l || (i == l && j == k)) continue;
          const int sg = tau(i, j, st.m(), st.n()) * tau(k, l, st.m(), st.n());
          for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) {
              const auto a = A.basis(x), b = A.basis(y);
              const auto lhs = L.bracket(st.v(i, j, a), st.v(k, l, b));
              const std::string what = "[v" + idx(i) + idx(j) + "(" + A.labels()[x] + "), v" + idx(k) + idx(l) + "(" +
                                       A.labels()[y] + ")]";
              if (i != l && j != k) {
                r.record(lhs.empty(), "commuting " + what + " != 0");
              } else if (j == k) {
                r.record(lhs == st.v(i, l, A.multiply(a, b)), "composition " + what + " != v" + idx(i) + idx(l) + "(ab)");
              } else {
                const S c = sg ? one : S(-one);
                r.record(lhs == st.v(k, j, A.multiply(b, a)).scaled(c), "reversed composition " + what + " mismatch");
              }
            }
        }
    }
  return r;
}

template <ExactScalar S>
RelationReport h_identities(const SteinbergRealization<S>& st) {
  RelationReport r;
  const std::size_t s = st.size(), d = st.coeff().dim();
  const auto& A = st.coeff();
  const S one = A.one();
  const auto sgn = [&](int t) { return t ? S(-one) : one; };
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) {
        if (i == j || j == k || i == k) continue;
        const S c = sgn(tau(i, k, st.m(), st.n()));
        for (std::size_t x = 0; x < d; ++x)
          for (std::size_t y = 0; y < d; ++y)
            for (std::size_t z = 0; z < d; ++z) {
              const auto a = A.basis(x), b = A.basis(y), cc = A.basis(z);
              const auto lhs = st.h(i, j, A.multiply(a, b), cc);
              const auto rhs = combine(st.h(i, k, a, A.multiply(b, cc)), c, st.h(k, j, b, A.multiply(cc, a)));
              r.record(lhs == rhs, "H_ij(ab,c) expansion at (" + idx(i) + idx(j) + idx(k) + "; " + A.labels()[x] + ", " +
                                       A.labels()[y] + ", " + A.labels()[z] + ")");
            }
      }
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      const S c = sgn(tau(i, j, st.m(), st.n()));
      for (std::size_t x = 0; x < d; ++x) {
        const auto a = A.basis(x);
        r.record(st.h(i, j, A.unit(), a) == st.h(j, i, A.unit(), a).scaled(S(-c)),
                 "H_ij(1,a) antisymmetry at (" + idx(i) + idx(j) + "; " + A.labels()[x] + ")");
      }
    }
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      const auto a = A.basis(x), b = A.basis(y);
      const auto hi = [&](std::size_t i) {
        return combine(st.h(0, i, a, b), S(-one), st.h(0, i, A.unit(), A.multiply(b, a)));
      };
      const auto h1 = hi(1);
      for (std::size_t i = 2; i < s; ++i)
        r.record(hi(i) == h1, "h(" + A.labels()[x] + ", " + A.labels()[y] + ") differs at i = " + idx(i));
    }
  return r;
}

template <ExactScalar S>
PHQ<S> phq_decompose(const SteinbergRealization<S>& st, const SparseVector<S>& x) {
  const auto& field = st.total().field();
  std::vector<SparseVector<S>> cols = st.P().basis();
  cols.insert(cols.end(), st.H().basis().begin(), st.H().basis().end());
  cols.insert(cols.end(), st.Q().basis().begin(), st.Q().basis().end());
  const ExactMatrix<S> m(st.total().dim(), field, cols);
  auto c = solve(m, x);
  if (!c) throw SuperAlgebraError("element not in P + H + Q");
  const std::size_t np = st.P().dim(), nh = st.H().dim();
  LinearCombination<S> p, h, q;
  for (const auto& [k, a] : *c) {
    if (k < np)
      p.add(a, cols[k]);
    else if (k < np + nh)
      h.add(a, cols[k]);
    else
      q.add(a, cols[k]);
  }
  return PHQ<S>{std::move(p).build(), std::move(h).build(), std::move(q).build()};
}

template <ExactScalar S>
Theta<S> build_theta(const SteinbergRealization<S>& st) {
  const auto& A = st.coeff();
  const auto& sl = st.sl();
  const std::size_t N = sl.algebra.dim(), d = A.dim();
  Theta<S> th;
  th.target = quotient(d * d, image(hochschild_boundary(A, 2)));
  th.on_pairs = ExactMatrix<S>(d * d, N * N, A.field());
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y)
      th.on_pairs.set_column(x * N + y, st.gl().str2(sl.inclusion.column(x), sl.inclusion.column(y)));
  th.well_defined = true;
  for (const auto& b : st.uce().boundaries.basis())
    if (!th.target.projector.apply(th.on_pairs.apply(b)).empty()) {
      th.well_defined = false;
      th.witness = "str_2 of a d_3 boundary with leading pair " + std::to_string(b.leading()) + " is not in Im d_2";
      break;
    }
  const auto& reps = st.uce().classes.representatives;
  th.map = ExactMatrix<S>(th.target.dim, reps.size(), A.field());
  for (std::size_t r = 0; r < reps.size(); ++r)
    th.map.set_column(r, th.target.projector.apply(th.on_pairs.column(reps[r])));
  return th;
}

template <ExactScalar S>
SparseVector<S> theta(const SteinbergRealization<S>& st, const Theta<S>& th, const SparseVector<S>& x,
                      const SparseVector<S>& y) {
  return th.target.projector.apply(st.gl().str2(st.sl().inclusion.apply(x), st.sl().inclusion.apply(y)));
}

template <ExactScalar S>
DiagonalReport diagonal_diagnostic(const SteinbergRealization<S>& st) {
  DiagonalReport rep;
  if (st.size() != 3) return rep;
  rep.applicable = true;
  const auto& A = st.coeff();
  const auto& L = st.total();
  const auto& field = L.field();
  const std::size_t d = A.dim();
  LinearCombination<S> xacc;
  xacc.add(st.v(0, 1, A.unit()));
  xacc.add(st.v(1, 0, A.unit()));
  const auto X = std::move(xacc).build();
  std::vector<SparseVector<S>> gens;
  for (const auto& [i, j] : {std::pair{0, 2}, {2, 0}, {1, 2}, {2, 1}})
    for (std::size_t k = 0; k < d; ++k) gens.push_back(st.v(i, j, A.basis(k)));
  const auto M = span(L.dim(), field, gens);
  rep.module_dim = M.dim();
  std::vector<SparseVector<S>> dcols;
  rep.invariant = true;
  for (const auto& b : M.basis()) {
    const auto img = L.bracket(X, b);
    if (!M.contains(img)) {
      rep.invariant = false;
      return rep;
    }
    dcols.push_back(M.coordinates(img));
  }
  const ExactMatrix<S> D(M.dim(), field, std::move(dcols));
  const auto id = ExactMatrix<S>::identity(M.dim(), field);
  rep.involution = D.compose(D) == id;
  const auto shifted = [&](const S& c) {
    std::vector<SparseVector<S>> cols;
    for (std::size_t k = 0; k < M.dim(); ++k) cols.push_back(combine(D.column(k), c, id.column(k)));
    return ExactMatrix<S>(M.dim(), field, std::move(cols));
  };
  rep.plus_dim = kernel(shifted(S(-L.one()))).dim();
  rep.minus_dim = kernel(shifted(L.one())).dim();
  return rep;
}

#define UCE_INSTANTIATE_STEINBERG(S)                                                                          \
  template class SteinbergRealization<S>;                                                                     \
  template SteinbergRealization<S> steinberg_realize<S>(std::size_t, std::size_t, const CoeffAlgebra<S>&,     \
                                                        const LeibnizOptions&, bool);                         \
  template RelationReport verify_steinberg_relations<S>(const SteinbergRealization<S>&);                      \
  template RelationReport h_identities<S>(const SteinbergRealization<S>&);                                    \
  template PHQ<S> phq_decompose<S>(const SteinbergRealization<S>&, const SparseVector<S>&);                   \
  template Theta<S> build_theta<S>(const SteinbergRealization<S>&);                                           \
  template SparseVector<S> theta<S>(const SteinbergRealization<S>&, const Theta<S>&, const SparseVector<S>&,  \
                                    const SparseVector<S>&);                                                  \
  template DiagonalReport diagonal_diagnostic<S>(const SteinbergRealization<S>&);

UCE_INSTANTIATE_STEINBERG(Rational)
UCE_INSTANTIATE_STEINBERG(ModP)

}  // namespace uce
