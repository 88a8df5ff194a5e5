#include "uce/cocycles.hpp"

#include <random>

namespace uce {

template <ExactScalar S>
SparseVector<S> Cocycle2<S>::apply(const SparseVector<S>& x, const SparseVector<S>& y) const {
  LinearCombination<S> acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) acc.add(S(a * b), at(i, j));
  return std::move(acc).build();
}

template <ExactScalar S>
std::optional<IdentityViolation> cocycle_violation(const SuperAlgebra<S>& l, const Cocycle2<S>& c) {
  const std::size_t n = l.dim();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        LinearCombination<S> acc;
        for (const auto& [k, a] : l.bracket(x, y)) acc.add(a, c.at(k, z));
        for (const auto& [k, a] : l.bracket(y, z)) acc.add(S(-a), c.at(x, k));
        const S s = l.sign(x, y);
        for (const auto& [k, a] : l.bracket(x, z)) acc.add(S(s * a), c.at(y, k));
        if (!std::move(acc).build().empty()) return IdentityViolation{x, y, z};
      }
  return std::nullopt;
}

template <ExactScalar S>
CocycleSpace<S> cocycle_space(const SuperAlgebra<S>& l, Subspace<S> d3_image) {
  const std::size_t n = l.dim();
  auto q = quotient(n * n, d3_image);
  std::vector<std::uint32_t> even;
  for (std::size_t c = 0; c < q.dim; ++c) {
    const auto p = q.representatives[c];
    if ((l.parity(p / n) + l.parity(p % n)) % 2 == 0) even.push_back(static_cast<std::uint32_t>(c));
  }
  return CocycleSpace<S>{std::move(d3_image), std::move(q), std::move(even)};
}

template <ExactScalar S>
CocycleSpace<S> cocycle_space(const SuperAlgebra<S>& l, const LeibnizOptions& opts) {
  return cocycle_space(l, leibniz_d3_image(l, opts));
}

template <ExactScalar S>
Cocycle2<S> sample_cocycle(const SuperAlgebra<S>& l, const CocycleSpace<S>& space, std::size_t target_dim,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // rows of M: one small integer combination of even quotient coordinates per target coordinate
  std::vector<std::vector<S>> m(target_dim, std::vector<S>(space.classes.dim, S()));
  for (std::size_t t = 0; t < target_dim; ++t)
    for (const auto c : space.even_coordinates)
      m[t][c] = make_scalar<S>(static_cast<std::int64_t>(rng() % 7) - 3, l.field());
  const std::size_t n = l.dim();
  Cocycle2<S> out{n, target_dim, std::vector<SparseVector<S>>(n * n)};
  for (std::size_t p = 0; p < n * n; ++p) {
    const auto& cls = space.classes.projector.column(p);
    LinearCombination<S> acc;
    for (std::size_t t = 0; t < target_dim; ++t) {
      S v = make_scalar<S>(0, l.field());
      for (const auto& [c, a] : cls) v += a * m[t][c];
      acc.add(static_cast<std::uint32_t>(t), v);
    }
    out.values[p] = std::move(acc).build();
  }
  return out;
}

template <ExactScalar S>
Cocycle2<S> sample_cocycle(const SuperAlgebra<S>& l, std::size_t target_dim, std::uint64_t seed,
                           const LeibnizOptions& opts) {
  return sample_cocycle(l, cocycle_space(l, opts), target_dim, seed);
}

template <ExactScalar S>
Cocycle2<S> coboundary(const SuperAlgebra<S>& l, const ExactMatrix<S>& f) {
  if (f.cols() != l.dim()) throw ShapeError("coboundary: map does not start at the algebra");
  const std::size_t n = l.dim();
  Cocycle2<S> out{n, f.rows(), std::vector<SparseVector<S>>(n * n)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out.values[x * n + y] = f.apply(l.bracket(x, y));
  return out;
}

template <ExactScalar S>
Cocycle2<S> zero_cocycle(const SuperAlgebra<S>& l, std::size_t target_dim) {
  return Cocycle2<S>{l.dim(), target_dim, std::vector<SparseVector<S>>(l.dim() * l.dim())};
}

template <ExactScalar S>
CentralExtension<S> cocycle_extension(const SuperAlgebra<S>& l, const Cocycle2<S>& c) {
  if (c.source_dim != l.dim()) throw ShapeError("cocycle does not match the algebra");
  if (auto v = cocycle_violation(l, c))
    throw SuperAlgebraError("cocycle condition fails on (" + l.labels()[v->i] + ", " + l.labels()[v->j] + ", " +
                            l.labels()[v->k] + ")");
  const std::size_t n = l.dim(), t = c.target_dim, total = n + t;
  std::vector<std::string> labels = l.labels();
  std::vector<std::uint8_t> parity = l.parities();
  std::vector<Weight> weights;  // the centre carries no weight, so none are recorded
  for (std::size_t k = 0; k < t; ++k) {
    labels.push_back("z" + std::to_string(k + 1));
    parity.push_back(0);
  }
  const auto shift = static_cast<std::uint32_t>(n);
  std::vector<SparseVector<S>> brackets(total * total);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      LinearCombination<S> acc;
      acc.add(l.bracket(x, y));
      acc.add(l.one(), c.at(x, y).remapped([shift](std::uint32_t k) { return k + shift; }));
      brackets[x * total + y] = std::move(acc).build();
    }
  SuperAlgebra<S> ext(l.name() + "+c", l.field(), std::move(labels), std::move(parity), std::move(brackets),
                      std::move(weights));
  ExactMatrix<S> proj(n, total, l.field());
  std::vector<SparseVector<S>> kbasis;
  for (std::size_t x = 0; x < n; ++x) proj.set_column(x, l.basis(x));
  for (std::size_t k = 0; k < t; ++k) kbasis.push_back(SparseVector<S>::unit(static_cast<std::uint32_t>(n + k), l.one()));
  return CentralExtension<S>{std::move(ext), l, std::move(proj), span(total, l.field(), kbasis)};
}

namespace {

// Column u of the returned matrix lists the coefficient of b_u in [b_a, b_b]
// at row a * T + b: the linear map κ ↦ (κ([b_a, b_b]))_{a,b}.
template <ExactScalar S>
ExactMatrix<S> bracket_system(const SuperAlgebra<S>& u) {
  const std::size_t t = u.dim();
  std::vector<std::vector<typename SparseVector<S>::Entry>> cols(t);
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = 0; b < t; ++b)
      for (const auto& [k, c] : u.bracket(a, b)) cols[k].emplace_back(static_cast<std::uint32_t>(a * t + b), c);
  std::vector<SparseVector<S>> out;
  out.reserve(t);
  for (auto& c : cols) out.push_back(SparseVector<S>::from_sorted(std::move(c)));
  return ExactMatrix<S>(t * t, u.field(), std::move(out));
}

}  // namespace

template <ExactScalar S>
LiftSolver<S>::LiftSolver(const CentralExtension<S>& u) : u_(u), solver_(bracket_system(u.total)) {
  homogeneous_dim_ = u.total.dim() - solver_.rank();
}

template <ExactScalar S>
LiftResult<S> LiftSolver<S>::solve(const CentralExtension<S>& w) {
  LiftResult<S> out;
  out.homogeneous_dim = homogeneous_dim_;
  const auto& U = u_.total;
  const auto& W = w.total;
  const std::size_t t = U.dim(), base = u_.base.dim();
  if (w.base.dim() != base || w.proj.rows() != base) {
    out.failure = "extensions have different bases";
    return out;
  }
  // section s of proj_W
  LinearSolver<S> pw(w.proj);
  std::vector<SparseVector<S>> section(base);
  for (std::size_t i = 0; i < base; ++i) {
    auto x = pw.solve(u_.base.basis(i));
    if (!x) {
      out.failure = "proj_W is not surjective";
      return out;
    }
    section[i] = std::move(*x);
  }
  const ExactMatrix<S> s(W.dim(), u_.base.field(), section);
  const ExactMatrix<S> sp = s.compose(u_.proj);  // U.total -> W.total
  // right-hand sides, one per kernel coordinate of W
  const std::size_t kw = w.kernel.dim();
  std::vector<LinearCombination<S>> rhs(kw);
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = 0; b < t; ++b) {
      LinearCombination<S> delta;
      delta.add(W.bracket(sp.column(a), sp.column(b)));
      delta.add(S(-U.one()), sp.apply(U.bracket(a, b)));
      const auto d = std::move(delta).build();
      if (d.empty()) continue;
      if (!w.kernel.contains(d)) {
        out.failure = "defect leaves ker proj_W";
        return out;
      }
      for (const auto& [j, c] : w.kernel.coordinates(d)) rhs[j].add(static_cast<std::uint32_t>(a * t + b), c);
    }
  std::vector<SparseVector<S>> kappa(kw);
  for (std::size_t j = 0; j < kw; ++j) {
    auto sol = solver_.solve(std::move(rhs[j]).build());
    if (!sol) {
      out.failure = "no lift: kernel coordinate " + std::to_string(j + 1) + " is inconsistent";
      return out;
    }
    kappa[j] = std::move(*sol);
  }
  std::vector<SparseVector<S>> cols(t);
  for (std::size_t a = 0; a < t; ++a) {
    LinearCombination<S> acc;
    acc.add(sp.column(a));
    for (std::size_t j = 0; j < kw; ++j) acc.add(kappa[j].coeff(static_cast<std::uint32_t>(a)), w.kernel.basis()[j]);
    cols[a] = std::move(acc).build();
  }
  ExactMatrix<S> rho(W.dim(), u_.base.field(), std::move(cols));
  bool commutes = true;
  for (std::size_t a = 0; a < t && commutes; ++a) commutes = w.proj.apply(rho.column(a)) == u_.proj.column(a);
  out.verified = commutes && is_homomorphism(rho, U, W);
  if (!out.verified) out.failure = "lift failed verification";
  out.rho = std::move(rho);
  return out;
}

template <ExactScalar S>
LiftResult<S> find_lift(const CentralExtension<S>& u, const CentralExtension<S>& w) {
  LiftSolver<S> solver(u);
  return solver.solve(w);
}

#define UCE_INSTANTIATE_COCYCLES(S)                                                                            \
  template struct Cocycle2<S>;                                                                                 \
  template std::optional<IdentityViolation> cocycle_violation<S>(const SuperAlgebra<S>&, const Cocycle2<S>&);  \
  template CocycleSpace<S> cocycle_space<S>(const SuperAlgebra<S>&, Subspace<S>);                              \
  template CocycleSpace<S> cocycle_space<S>(const SuperAlgebra<S>&, const LeibnizOptions&);                    \
  template Cocycle2<S> sample_cocycle<S>(const SuperAlgebra<S>&, const CocycleSpace<S>&, std::size_t,          \
                                         std::uint64_t);                                                       \
  template Cocycle2<S> sample_cocycle<S>(const SuperAlgebra<S>&, std::size_t, std::uint64_t,                   \
                                         const LeibnizOptions&);                                               \
  template Cocycle2<S> coboundary<S>(const SuperAlgebra<S>&, const ExactMatrix<S>&);                           \
  template Cocycle2<S> zero_cocycle<S>(const SuperAlgebra<S>&, std::size_t);                                   \
  template CentralExtension<S> cocycle_extension<S>(const SuperAlgebra<S>&, const Cocycle2<S>&);               \
  template class LiftSolver<S>;                                                                                \
  template LiftResult<S> find_lift<S>(const CentralExtension<S>&, const CentralExtension<S>&);

UCE_INSTANTIATE_COCYCLES(Rational)
UCE_INSTANTIATE_COCYCLES(ModP)

}  // namespace uce
