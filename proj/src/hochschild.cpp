#include "uce/hochschild.hpp"

#include "uce/tensor.hpp"

namespace uce {

namespace {

using Digits = std::vector<std::uint32_t>;

// Tensor a_0⊗…⊗a_k of coordinate vectors, in the lexicographic basis.
template <ExactScalar S>
SparseVector<S> tensor(const std::vector<SparseVector<S>>& factors, std::size_t base, const S& one) {
  const TensorShape shape(base, factors.size());
  std::vector<typename SparseVector<S>::Entry> acc;
  Digits digits(factors.size());
  auto rec = [&](auto&& self, std::size_t pos, const S& c) -> void {
    if (pos == factors.size()) {
      acc.emplace_back(shape.index(digits), c);
      return;
    }
    for (const auto& [k, x] : factors[pos]) {
      digits[pos] = k;
      self(self, pos + 1, S(c * x));
    }
  };
  rec(rec, 0, one);
  return SparseVector<S>(std::move(acc));
}

template <ExactScalar S>
ExactMatrix<S> boundary_matrix(const CoeffAlgebra<S>& a, std::size_t n, bool classical) {
  if (n < 1 || n > 3) throw ComplexError("Hochschild boundary degree must be in 1..3");
  const std::size_t d = a.dim();
  const TensorShape src(d, n + 1);
  const S one = a.one();
  ExactMatrix<S> m(TensorShape(d, n).size(), src.size(), a.field());
  for (std::size_t col = 0; col < src.size(); ++col) {
    const Digits t = src.digits(col);
    LinearCombination<S> acc;
    auto term = [&](S sign, std::vector<SparseVector<S>> factors) { acc.add(sign, tensor(factors, d, one)); };
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<SparseVector<S>> f;
      for (std::size_t k = 0; k < i; ++k) f.push_back(a.basis(t[k]));
      f.push_back(a.product(t[i], t[i + 1]));
      for (std::size_t k = i + 2; k <= n; ++k) f.push_back(a.basis(t[k]));
      term(i % 2 == 0 ? one : S(-one), std::move(f));
    }
    std::vector<SparseVector<S>> f;
    if (classical) {
      f.push_back(a.product(t[n], t[0]));
      for (std::size_t k = 1; k < n; ++k) f.push_back(a.basis(t[k]));
      term(n % 2 == 0 ? one : S(-one), std::move(f));
    } else {
      for (std::size_t k = 1; k < n; ++k) f.push_back(a.basis(t[k]));
      f.push_back(a.product(t[n], t[0]));
      term(S(-one), std::move(f));
    }
    m.set_column(col, std::move(acc).build());
  }
  return m;
}

// Cyclic-difference relations t − (−1)^n σ(t), σ(a0⊗…⊗an) = a1⊗…⊗an⊗a0.
template <ExactScalar S>
Subspace<S> cyclic_relations(const CoeffAlgebra<S>& a, std::size_t n) {
  const TensorShape shape(a.dim(), n + 1);
  Echelon<S> e(shape.size(), a.field());
  if (n == 0) return e.subspace();
  const S one = a.one();
  const S sign = n % 2 == 0 ? one : S(-one);
  for (std::size_t idx = 0; idx < shape.size(); ++idx) {
    Digits t = shape.digits(idx);
    Digits r(t.begin() + 1, t.end());
    r.push_back(t[0]);
    LinearCombination<S> acc;
    acc.add(static_cast<std::uint32_t>(idx), one);
    acc.add(shape.index(r), S(-sign));
    e.insert(std::move(acc).build());
  }
  return e.subspace();
}

// Matrix of a map between quotients induced by m; throws unless m(rel_src) ⊆ rel_dst.
template <ExactScalar S>
ExactMatrix<S> induced(const ExactMatrix<S>& m, const Subspace<S>& rel_src, const Quotient<S>& q_src,
                       const Subspace<S>& rel_dst, const Quotient<S>& q_dst, const char* what) {
  for (const auto& r : rel_src.basis())
    if (!rel_dst.contains(m.apply(r))) throw ComplexError(std::string(what) + " does not descend to the quotient");
  ExactMatrix<S> out(q_dst.dim, q_src.dim, m.field());
  for (std::size_t c = 0; c < q_src.dim; ++c)
    out.set_column(c, q_dst.projector.apply(m.column(q_src.representatives[c])));
  return out;
}

}  // namespace

template <ExactScalar S>
SparseVector<S> HomologyResult<S>::class_of(const SparseVector<S>& cycle) const {
  if (!cycles.contains(cycle)) throw ComplexError("class_of: vector is not a cycle");
  return class_projector.apply(cycle);
}

template <ExactScalar S>
HomologyResult<S> make_homology(std::size_t degree, Subspace<S> cycles, Subspace<S> boundaries) {
  if (!cycles.contains(boundaries)) throw ComplexError("boundaries are not contained in the cycles");
  HomologyResult<S> h;
  h.degree = degree;
  const std::size_t n = cycles.ambient_dim();
  const FieldConfig field = cycles.field();
  const Quotient<S> q = quotient(n, boundaries);
  // image of the cycles in ambient/boundaries, in canonical form
  const Subspace<S> v = map_subspace(q.projector, cycles);
  h.dim = v.dim();
  if (h.dim + boundaries.dim() != cycles.dim()) throw ComplexError("homology dimension count is inconsistent");
  // on v, coordinates are the entries at the pivots of its reduced basis
  ExactMatrix<S> select(h.dim, q.dim, field);
  const S one = make_scalar<S>(1, field);
  for (std::size_t r = 0; r < h.dim; ++r)
    select.set_column(v.pivots()[r], SparseVector<S>::unit(static_cast<std::uint32_t>(r), one));
  h.class_projector = select.compose(q.projector);
  // representatives: for each reduced row, a cycle mapping onto it
  if (h.dim > 0) {
    LinearSolver<S> solver(q.projector.compose(cycles.inclusion()));
    for (const auto& row : v.basis()) {
      auto x = solver.solve(row);
      if (!x) throw ComplexError("homology representative not found");
      h.representatives.push_back(cycles.inclusion().apply(*x));
    }
  }
  h.cycles = std::move(cycles);
  h.boundaries = std::move(boundaries);
  return h;
}

template <ExactScalar S>
nlohmann::ordered_json to_json(const HomologyResult<S>& h) {
  nlohmann::ordered_json doc;
  doc["degree"] = h.degree;
  doc["dim"] = h.dim;
  doc["cycle_dim"] = h.cycles.dim();
  doc["boundary_dim"] = h.boundaries.dim();
  auto basis = nlohmann::ordered_json::array();
  for (const auto& r : h.representatives) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& x : to_dense(r, h.cycles.ambient_dim())) row.push_back(to_string(x));
    basis.push_back(std::move(row));
  }
  doc["basis"] = std::move(basis);
  return doc;
}

template <ExactScalar S>
ChainComplex<S>::ChainComplex(FieldConfig field, std::vector<std::size_t> dims, std::vector<ExactMatrix<S>> boundaries)
    : field_(field), dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
  if (dims_.empty() || boundaries_.size() + 1 != dims_.size())
    throw ComplexError("chain complex needs one boundary per positive degree");
  for (std::size_t n = 1; n <= top(); ++n) {
    const auto& d = boundary(n);
    if (d.rows() != dims_[n - 1] || d.cols() != dims_[n]) throw ComplexError("boundary shape mismatch");
  }
  for (std::size_t n = 1; n < top(); ++n)
    if (!boundary(n).compose(boundary(n + 1)).is_zero_matrix())
      throw ComplexError("d_" + std::to_string(n) + " ∘ d_" + std::to_string(n + 1) + " != 0");
}

template <ExactScalar S>
HomologyResult<S> ChainComplex<S>::homology(std::size_t n) const {
  if (n >= top()) throw ComplexError("homology degree must be below the top of the complex");
  Subspace<S> cycles = n == 0 ? Subspace<S>::full(dims_[0], field_) : kernel(boundary(n));
  return make_homology<S>(n, std::move(cycles), image(boundary(n + 1)));
}

template <ExactScalar S>
ExactMatrix<S> hochschild_boundary(const CoeffAlgebra<S>& a, std::size_t n) {
  return boundary_matrix(a, n, false);
}

template <ExactScalar S>
ExactMatrix<S> classical_hochschild_boundary(const CoeffAlgebra<S>& a, std::size_t n) {
  return boundary_matrix(a, n, true);
}

template <ExactScalar S>
ChainComplex<S> hochschild_complex(const CoeffAlgebra<S>& a) {
  std::vector<std::size_t> dims;
  std::vector<ExactMatrix<S>> ds;
  for (std::size_t k = 0; k <= 3; ++k) dims.push_back(TensorShape(a.dim(), k + 1).size());
  for (std::size_t n = 1; n <= 3; ++n) ds.push_back(hochschild_boundary(a, n));
  return ChainComplex<S>(a.field(), std::move(dims), std::move(ds));
}

template <ExactScalar S>
HomologyResult<S> hochschild_homology(const CoeffAlgebra<S>& a, std::size_t n) {
  if (n > 2) throw ComplexError("Hochschild homology is available in degrees 0..2");
  return hochschild_complex(a).homology(n);
}

template <ExactScalar S>
CyclicComplex<S> cyclic_complex(const CoeffAlgebra<S>& a, std::size_t top) {
  if (top < 1 || top > 3) throw ComplexError("cyclic complex top degree must be in 1..3");
  std::vector<Subspace<S>> rel;
  std::vector<Quotient<S>> q;
  for (std::size_t n = 0; n <= top; ++n) {
    rel.push_back(cyclic_relations(a, n));
    q.push_back(quotient(TensorShape(a.dim(), n + 1).size(), rel.back()));
  }
  std::vector<std::size_t> dims;
  std::vector<ExactMatrix<S>> ds;
  for (std::size_t n = 0; n <= top; ++n) dims.push_back(q[n].dim);
  for (std::size_t n = 1; n <= top; ++n)
    ds.push_back(induced(hochschild_boundary(a, n), rel[n], q[n], rel[n - 1], q[n - 1], "cyclic boundary"));
  ChainComplex<S> cx(a.field(), std::move(dims), std::move(ds));
  return CyclicComplex<S>{std::move(rel), std::move(q), std::move(cx)};
}

template <ExactScalar S>
HomologyResult<S> cyclic_homology(const CoeffAlgebra<S>& a, std::size_t n) {
  if (n > 1) throw ComplexError("cyclic homology is available in degrees 0..1");
  return cyclic_complex(a, 2).complex.homology(n);
}

template <ExactScalar S>
bool cyclic_boundaries_agree(const CoeffAlgebra<S>& a) {
  const auto q1 = quotient(TensorShape(a.dim(), 2).size(), cyclic_relations(a, 1));
  return q1.projector.compose(hochschild_boundary(a, 2)) == q1.projector.compose(classical_hochschild_boundary(a, 2));
}

template <ExactScalar S>
std::size_t hc1_via_exact_sequence(const CoeffAlgebra<S>& a) {
  const auto cyc = cyclic_complex(a, 2);
  const auto& d1 = cyc.complex.boundary(1);
  const auto im2 = image(cyc.complex.boundary(2));
  const auto q = quotient(cyc.complex.dim(1), im2);
  // d̄_1 descends because d̄_1 d̄_2 = 0
  ExactMatrix<S> bar(d1.rows(), q.dim, a.field());
  for (std::size_t c = 0; c < q.dim; ++c) bar.set_column(c, d1.column(q.representatives[c]));
  return kernel(bar).dim();
}

template <ExactScalar S>
ExactMatrix<S> hh_to_hc_projection(const CoeffAlgebra<S>& a, const HomologyResult<S>& hh1, const CyclicComplex<S>& cyc,
                                   const HomologyResult<S>& hc1) {
  ExactMatrix<S> p(hc1.dim, hh1.dim, a.field());
  const auto& q1 = cyc.quotients.at(1);
  for (std::size_t c = 0; c < hh1.dim; ++c) p.set_column(c, hc1.class_of(q1.projector.apply(hh1.representatives[c])));
  // independence of the representative: boundaries of HH_1 land in boundaries of HC_1
  for (const auto& b : hh1.boundaries.basis())
    if (!hc1.class_of(q1.projector.apply(b)).empty()) throw ComplexError("p does not descend to homology");
  if (image(p).dim() != hc1.dim) throw ComplexError("p : HH_1 -> HC_1 is not surjective");
  return p;
}

template <ExactScalar S>
ExactMatrix<S> hh_to_hc_projection(const CoeffAlgebra<S>& a) {
  const auto cyc = cyclic_complex(a, 2);
  return hh_to_hc_projection(a, hochschild_homology(a, 1), cyc, cyc.complex.homology(1));
}

template <ExactScalar S>
ExactMatrix<S> connes_B(const CoeffAlgebra<S>& a, std::size_t n) {
  if (n > 1) throw ComplexError("Connes operator is available for n = 0, 1");
  const std::size_t d = a.dim();
  const TensorShape src(d, n + 1);
  const TensorShape dst(d, n + 2);
  const S one = a.one();
  // the unit is a linear combination of basis vectors in general
  const SparseVector<S>& unit = a.unit();
  ExactMatrix<S> b(dst.size(), src.size(), a.field());
  for (std::size_t col = 0; col < src.size(); ++col) {
    const Digits t = src.digits(col);
    LinearCombination<S> acc;
    for (std::size_t i = 0; i <= n; ++i) {
      std::vector<SparseVector<S>> rot;
      for (std::size_t k = 0; k <= n; ++k) rot.push_back(a.basis(t[(i + k) % (n + 1)]));
      std::vector<SparseVector<S>> front{unit};
      front.insert(front.end(), rot.begin(), rot.end());
      std::vector<SparseVector<S>> back = rot;
      back.push_back(unit);
      acc.add((n * i) % 2 == 0 ? one : S(-one), tensor(front, d, one));
      acc.add((n * (i + 1)) % 2 == 0 ? one : S(-one), tensor(back, d, one));
    }
    b.set_column(col, std::move(acc).build());
  }
  // B d_n + d_{n+1} B = 0 (d_0 = 0)
  const auto dB = hochschild_boundary(a, n + 1).compose(b);
  if (n == 0) {
    if (!dB.is_zero_matrix()) throw ComplexError("d_1 B != 0");
  } else {
    const auto Bd = connes_B(a, 0).compose(hochschild_boundary(a, 1));
    if (!(Bd + dB).is_zero_matrix()) throw ComplexError("B d_1 + d_2 B != 0");
  }
  return b;
}

template <ExactScalar S>
InducedB<S> induced_B_image(const CoeffAlgebra<S>& a, const HomologyResult<S>& hh1) {
  const auto b0 = connes_B(a, 0);
  const auto comm = commutator_subspace(a);
  // classes of B applied to the commutator span must vanish
  for (const auto& c : comm.basis())
    if (!hh1.class_of(b0.apply(c)).empty()) throw ComplexError("induced B does not descend to HC_0");
  const auto q0 = quotient(a.dim(), comm);
  InducedB<S> out;
  out.map = ExactMatrix<S>(hh1.dim, q0.dim, a.field());
  for (std::size_t c = 0; c < q0.dim; ++c) out.map.set_column(c, hh1.class_of(b0.column(q0.representatives[c])));
  out.image = image(out.map);
  out.image_dim = out.image.dim();
  return out;
}

template <ExactScalar S>
InducedB<S> induced_B_image(const CoeffAlgebra<S>& a) {
  return induced_B_image(a, hochschild_homology(a, 1));
}

#define UCE_INSTANTIATE_HOCHSCHILD(S)                                                                        \
  template struct HomologyResult<S>;                                                                         \
  template class ChainComplex<S>;                                                                            \
  template HomologyResult<S> make_homology<S>(std::size_t, Subspace<S>, Subspace<S>);                        \
  template nlohmann::ordered_json to_json<S>(const HomologyResult<S>&);                                      \
  template ExactMatrix<S> hochschild_boundary<S>(const CoeffAlgebra<S>&, std::size_t);                       \
  template ExactMatrix<S> classical_hochschild_boundary<S>(const CoeffAlgebra<S>&, std::size_t);             \
  template ChainComplex<S> hochschild_complex<S>(const CoeffAlgebra<S>&);                                    \
  template HomologyResult<S> hochschild_homology<S>(const CoeffAlgebra<S>&, std::size_t);                    \
  template CyclicComplex<S> cyclic_complex<S>(const CoeffAlgebra<S>&, std::size_t);                          \
  template HomologyResult<S> cyclic_homology<S>(const CoeffAlgebra<S>&, std::size_t);                        \
  template bool cyclic_boundaries_agree<S>(const CoeffAlgebra<S>&);                                          \
  template std::size_t hc1_via_exact_sequence<S>(const CoeffAlgebra<S>&);                                    \
  template ExactMatrix<S> hh_to_hc_projection<S>(const CoeffAlgebra<S>&);                                    \
  template ExactMatrix<S> hh_to_hc_projection<S>(const CoeffAlgebra<S>&, const HomologyResult<S>&,           \
                                                 const CyclicComplex<S>&, const HomologyResult<S>&);         \
  template ExactMatrix<S> connes_B<S>(const CoeffAlgebra<S>&, std::size_t);                                  \
  template InducedB<S> induced_B_image<S>(const CoeffAlgebra<S>&);                                           \
  template InducedB<S> induced_B_image<S>(const CoeffAlgebra<S>&, const HomologyResult<S>&);

UCE_INSTANTIATE_HOCHSCHILD(Rational)
UCE_INSTANTIATE_HOCHSCHILD(ModP)

}  // namespace uce
