#include "uce/superalgebra.hpp"

#include "uce/tensor.hpp"

#include <deque>

namespace uce {

template <ExactScalar S>
SuperAlgebra<S>::SuperAlgebra(std::string name, FieldConfig field, std::vector<std::string> labels,
                              std::vector<std::uint8_t> parity, std::vector<SparseVector<S>> brackets,
                              std::vector<Weight> weights)
    : name_(std::move(name)), field_(field), labels_(std::move(labels)), parity_(std::move(parity)),
      brackets_(std::move(brackets)), weights_(std::move(weights)) {
  const std::size_t d = labels_.size();
  if (parity_.size() != d) throw SuperAlgebraError("parity vector length differs from dim");
  if (brackets_.size() != d * d) throw SuperAlgebraError("bracket table must have dim^2 entries");
  if (!weights_.empty() && weights_.size() != d) throw SuperAlgebraError("weight list length differs from dim");
  for (const auto p : parity_)
    if (p > 1) throw SuperAlgebraError("parity must be 0 or 1");
  for (const auto& b : brackets_) {
    if (!b.empty() && b.max_index() >= d) throw SuperAlgebraError("bracket coordinate outside the algebra");
    for (const auto& e : b)
      if (!in_domain(e.second, field_)) throw SuperAlgebraError("bracket scalar outside " + field_.name());
  }
}

template <ExactScalar S>
SparseVector<S> SuperAlgebra<S>::bracket(const SparseVector<S>& x, const SparseVector<S>& y) const {
  LinearCombination<S> acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) acc.add(S(a * b), bracket(i, j));
  return std::move(acc).build();
}

template <ExactScalar S>
SparseVector<S> SuperAlgebra<S>::bracket_basis_left(std::size_t i, const SparseVector<S>& y) const {
  LinearCombination<S> acc;
  for (const auto& [j, b] : y) acc.add(b, bracket(i, j));
  return std::move(acc).build();
}

template <ExactScalar S>
SparseVector<S> SuperAlgebra<S>::bracket_basis_right(const SparseVector<S>& x, std::size_t j) const {
  LinearCombination<S> acc;
  for (const auto& [i, a] : x) acc.add(a, bracket(i, j));
  return std::move(acc).build();
}

template <ExactScalar S>
int SuperAlgebra<S>::parity_of(const SparseVector<S>& v) const {
  if (v.empty()) throw SuperAlgebraError("zero vector has no parity");
  const int p = parity_[v.leading()];
  for (const auto& e : v)
    if (parity_[e.first] != p) throw SuperAlgebraError("vector is not homogeneous");
  return p;
}

template <ExactScalar S>
std::string SuperAlgebra<S>::format(const SparseVector<S>& v) const {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, x] : v) {
    if (!first) out += " + ";
    first = false;
    const std::string c = to_string(x);
    out += c == "1" ? labels_.at(k) : c + "*" + labels_.at(k);
  }
  return out;
}

namespace {

template <ExactScalar S>
void check_pairs_into(const SuperAlgebra<S>& l, std::size_t limit, IdentityReport& r) {
  const std::size_t d = l.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& b = l.bracket(i, j);
      const int p = (l.parity(i) + l.parity(j)) % 2;
      for (const auto& e : b)
        if (l.parity(e.first) != p) {
          if (r.grading.size() < limit) r.grading.push_back({i, j, 0});
          ++r.grading_count;
          break;
        }
      if (j < i) continue;
      SparseVector<S> s = b;
      s.axpy(l.sign(i, j), l.bracket(j, i));
      if (!s.empty()) {
        if (r.lie.size() < limit) r.lie.push_back({i, j, 0});
        ++r.lie_count;
      }
    }
}

}  // namespace

template <ExactScalar S>
IdentityReport check_pairs(const SuperAlgebra<S>& l, std::size_t limit) {
  IdentityReport r;
  check_pairs_into(l, limit, r);
  return r;
}

template <ExactScalar S>
IdentityReport check_identities(const SuperAlgebra<S>& l, std::size_t limit) {
  IdentityReport r;
  check_pairs_into(l, limit, r);
  const std::size_t d = l.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& ij = l.bracket(i, j);
      const S s = l.sign(i, j);
      for (std::size_t k = 0; k < d; ++k) {
        // [a,[b,c]] − [[a,b],c] − (−1)^{|a||b|}[b,[a,c]]
        LinearCombination<S> acc;
        for (const auto& [t, x] : l.bracket(j, k)) acc.add(x, l.bracket(i, t));
        for (const auto& [t, x] : ij) acc.add(S(-x), l.bracket(t, k));
        for (const auto& [t, x] : l.bracket(i, k)) acc.add(S(-(s * x)), l.bracket(j, t));
        if (!std::move(acc).build().empty()) {
          if (r.leibniz.size() < limit) r.leibniz.push_back({i, j, k});
          ++r.leibniz_count;
        }
      }
    }
  return r;
}

int tau(std::size_t i, std::size_t j, std::size_t m, std::size_t n) {
  if (i >= m + n || j >= m + n) throw std::out_of_range("tau: index out of range");
  return (i < m) == (j < m) ? 0 : 1;
}

bool tau_identity_holds(std::size_t m, std::size_t n) {
  const std::size_t s = m + n;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (tau(i, j, m, n) != tau(j, i, m, n)) return false;
      for (std::size_t k = 0; k < s; ++k)
        if ((tau(i, j, m, n) + tau(j, k, m, n)) % 2 != tau(i, k, m, n)) return false;
    }
  return true;
}

std::string characteristic_guard(std::size_t m, std::size_t n, const FieldConfig& field) {
  validate(field);
  const bool bad = (m + n == 3 && field.characteristic == 3) || (m + n == 4 && field.characteristic == 2);
  if (!bad) {
    // validate() only lets characteristic 2 or 3 through with the override flag
    if (field.characteristic == 2 || field.characteristic == 3)
      return "hypothesis violated: characteristic " + std::to_string(field.characteristic);
    return {};
  }
  const std::string what = "m+n = " + std::to_string(m + n) + " in characteristic " +
                           std::to_string(field.characteristic);
  if (!field.override_guard) throw FieldError("refused: " + what + " (pass the override flag to run anyway)");
  return "hypothesis violated: " + what;
}

template <ExactScalar S>
GeneralLinear<S>::GeneralLinear(std::size_t m, std::size_t n, CoeffAlgebra<S> coeff)
    : m_(m), n_(n), coeff_(std::move(coeff)) {
  if (m + n < 2) throw SuperAlgebraError("gl(m,n,A) needs m+n >= 2");
  const std::size_t s = size();
  const std::size_t d = coeff_.dim();
  const std::size_t dim = s * s * d;
  std::vector<std::string> labels(dim);
  std::vector<std::uint8_t> parity(dim);
  std::vector<Weight> weights(dim, Weight(s, 0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const auto idx = index(i, j, k);
        labels[idx] = "E" + std::to_string(i + 1) + std::to_string(j + 1) + "(" + coeff_.labels()[k] + ")";
        parity[idx] = static_cast<std::uint8_t>(tau(i, j, m, n));
        weights[idx][i] += 1;
        weights[idx][j] -= 1;
      }
  std::vector<SparseVector<S>> brackets(dim * dim);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t k = 0; k < s; ++k)
          for (std::size_t l = 0; l < s; ++l)
            for (std::size_t b = 0; b < d; ++b) {
              LinearCombination<S> acc;
              if (j == k) acc.add(coeff_.one(), E(i, l, coeff_.product(a, b)));
              if (l == i) {
                const S sg = (tau(i, j, m, n) && tau(k, l, m, n)) ? coeff_.one() : S(-coeff_.one());
                acc.add(sg, E(k, j, coeff_.product(b, a)));
              }
              brackets[static_cast<std::size_t>(index(i, j, a)) * dim + index(k, l, b)] = std::move(acc).build();
            }
  const std::string name = "gl(" + std::to_string(m) + "," + std::to_string(n) + "," + coeff_.name() + ")";
  algebra_ = SuperAlgebra<S>(name, coeff_.field(), std::move(labels), std::move(parity), std::move(brackets),
                             std::move(weights));
}

template <ExactScalar S>
SparseVector<S> GeneralLinear<S>::E(std::size_t i, std::size_t j, const SparseVector<S>& a) const {
  return a.remapped([&](std::uint32_t k) { return index(i, j, k); });
}

template <ExactScalar S>
SparseVector<S> GeneralLinear<S>::entry(const SparseVector<S>& x, std::size_t i, std::size_t j) const {
  const std::size_t d = coeff_.dim();
  std::vector<typename SparseVector<S>::Entry> out;
  for (const auto& [idx, c] : x)
    if (idx / d == i * size() + j) out.emplace_back(static_cast<std::uint32_t>(idx % d), c);
  return SparseVector<S>::from_sorted(std::move(out));
}

template <ExactScalar S>
SparseVector<S> GeneralLinear<S>::supertrace(const SparseVector<S>& x) const {
  SparseVector<S> out;
  for (std::size_t i = 0; i < size(); ++i) out.axpy(i < m_ ? coeff_.one() : S(-coeff_.one()), entry(x, i, i));
  return out;
}

template <ExactScalar S>
SparseVector<S> GeneralLinear<S>::str2(const SparseVector<S>& x, const SparseVector<S>& y) const {
  const std::size_t d = coeff_.dim();
  const std::size_t s = size();
  LinearCombination<S> acc;
  for (const auto& [p, a] : x) {
    const std::size_t cell = p / d;
    const std::size_t i = cell / s;
    const std::size_t j = cell % s;
    const S sign = i < m_ ? coeff_.one() : S(-coeff_.one());
    for (const auto& [q, b] : y) {
      if (q / d != j * s + i) continue;
      acc.add(static_cast<std::uint32_t>((p % d) * d + q % d), S(sign * a * b));
    }
  }
  return std::move(acc).build();
}

template <ExactScalar S>
SubAlgebra<S> restrict_to(const SuperAlgebra<S>& l, Subspace<S> sub, std::string name) {
  const std::size_t d = sub.dim();
  std::vector<std::string> labels;
  std::vector<std::uint8_t> parity;
  std::vector<Weight> weights;
  for (const auto& row : sub.basis()) {
    labels.push_back(l.format(row));
    parity.push_back(static_cast<std::uint8_t>(l.parity_of(row)));
    if (l.has_weights()) {
      const Weight& w = l.weights()[row.leading()];
      for (const auto& e : row)
        if (l.weights()[e.first] != w) throw SuperAlgebraError("subspace basis is not weight-homogeneous");
      weights.push_back(w);
    }
  }
  std::vector<SparseVector<S>> brackets(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) {
      const auto b = l.bracket(sub.basis()[r], sub.basis()[s]);
      if (!sub.contains(b)) throw SuperAlgebraError("subspace is not closed under the bracket");
      brackets[r * d + s] = sub.coordinates(b);
    }
  SuperAlgebra<S> alg(std::move(name), l.field(), std::move(labels), std::move(parity), std::move(brackets),
                      std::move(weights));
  ExactMatrix<S> inc = sub.inclusion();
  return SubAlgebra<S>{std::move(sub), std::move(alg), std::move(inc)};
}

template <ExactScalar S>
SubAlgebra<S> derived_subalgebra(const SuperAlgebra<S>& l, std::string name) {
  Echelon<S> e(l.dim(), l.field());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = 0; j < l.dim(); ++j) e.insert(l.bracket(i, j));
  return restrict_to(l, e.subspace(), std::move(name));
}

template <ExactScalar S>
SubAlgebra<S> build_sl(const GeneralLinear<S>& gl) {
  return derived_subalgebra(gl.algebra(), "sl(" + std::to_string(gl.m()) + "," + std::to_string(gl.n()) + "," +
                                              gl.coeff().name() + ")");
}

template <ExactScalar S>
SupertraceComparison compare_supertrace(const GeneralLinear<S>& gl, const SubAlgebra<S>& sl) {
  const auto& l = gl.algebra();
  const auto comm = commutator_subspace(gl.coeff());
  const auto q = quotient(gl.coeff().dim(), comm);
  ExactMatrix<S> str(gl.coeff().dim(), l.dim(), l.field());
  ExactMatrix<S> str_mod(q.dim, l.dim(), l.field());
  for (std::size_t c = 0; c < l.dim(); ++c) {
    auto t = gl.supertrace(l.basis(c));
    str_mod.set_column(c, q.projector.apply(t));
    str.set_column(c, std::move(t));
  }
  return {kernel(str_mod) == sl.sub, kernel(str) == sl.sub};
}

template <ExactScalar S>
bool is_perfect(const SuperAlgebra<S>& l) {
  Echelon<S> e(l.dim(), l.field());
  for (std::size_t i = 0; i < l.dim() && e.rank() < l.dim(); ++i)
    for (std::size_t j = 0; j < l.dim() && e.rank() < l.dim(); ++j) e.insert(l.bracket(i, j));
  return e.rank() == l.dim();
}

template <ExactScalar S>
Subspace<S> ideal_closure(const SuperAlgebra<S>& l, const Subspace<S>& seed) {
  if (seed.ambient_dim() != l.dim()) throw ShapeError("ideal_closure: seed lives in another space");
  Echelon<S> e(l.dim(), l.field());
  std::deque<SparseVector<S>> todo;
  for (const auto& v : seed.basis())
    if (e.insert(v)) todo.push_back(v);
  while (!todo.empty()) {
    const SparseVector<S> v = std::move(todo.front());
    todo.pop_front();
    for (std::size_t i = 0; i < l.dim(); ++i) {
      auto left = l.bracket_basis_left(i, v);
      if (e.insert(left)) todo.push_back(std::move(left));
      auto right = l.bracket_basis_right(v, i);
      if (e.insert(right)) todo.push_back(std::move(right));
    }
  }
  return e.subspace();
}

template <ExactScalar S>
Subspace<S> squares_span(const SuperAlgebra<S>& l) {
  Echelon<S> e(l.dim(), l.field());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i; j < l.dim(); ++j) {
      SparseVector<S> s = l.bracket(i, j);
      s.axpy(l.sign(i, j), l.bracket(j, i));
      e.insert(s);
    }
  return e.subspace();
}

template <ExactScalar S>
QuotientAlgebra<S> quotient_algebra(const SuperAlgebra<S>& l, const Subspace<S>& ideal, std::string name) {
  for (const auto& u : ideal.basis()) {
    l.parity_of(u);
    for (std::size_t i = 0; i < l.dim(); ++i)
      if (!ideal.contains(l.bracket_basis_left(i, u)) || !ideal.contains(l.bracket_basis_right(u, i)))
        throw SuperAlgebraError("subspace is not a two-sided ideal");
  }
  const auto q = quotient(l.dim(), ideal);
  const std::size_t d = q.dim;
  std::vector<std::string> labels;
  std::vector<std::uint8_t> parity;
  std::vector<Weight> weights;
  for (const auto c : q.representatives) {
    labels.push_back(l.labels()[c]);
    parity.push_back(static_cast<std::uint8_t>(l.parity(c)));
    if (l.has_weights()) weights.push_back(l.weights()[c]);
  }
  std::vector<SparseVector<S>> brackets(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s)
      brackets[r * d + s] = q.projector.apply(l.bracket(q.representatives[r], q.representatives[s]));
  SuperAlgebra<S> alg(std::move(name), l.field(), std::move(labels), std::move(parity), std::move(brackets),
                      std::move(weights));
  return QuotientAlgebra<S>{std::move(alg), q.projector, ideal, q.representatives};
}

template <ExactScalar S>
QuotientAlgebra<S> slie_quotient(const SuperAlgebra<S>& l, std::string name) {
  auto out = quotient_algebra(l, ideal_closure(l, squares_span(l)), std::move(name));
  // a quotient of a Leibniz superalgebra is Leibniz, so antisymmetry suffices
  if (!check_pairs(out.algebra).is_lie()) throw SuperAlgebraError("SLie quotient is not a Lie superalgebra");
  return out;
}

template <ExactScalar S>
bool is_homomorphism(const ExactMatrix<S>& f, const SuperAlgebra<S>& src, const SuperAlgebra<S>& dst) {
  if (f.cols() != src.dim() || f.rows() != dst.dim()) throw ShapeError("is_homomorphism: shape mismatch");
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j)
      if (!(f.apply(src.bracket(i, j)) == dst.bracket(f.column(i), f.column(j)))) return false;
  return true;
}

template <ExactScalar S>
nlohmann::ordered_json to_json(const SuperAlgebra<S>& l) {
  nlohmann::ordered_json doc;
  doc["name"] = l.name();
  doc["char"] = l.field().characteristic;
  doc["dim"] = l.dim();
  doc["labels"] = l.labels();
  doc["parity"] = l.parities();
  auto br = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = 0; j < l.dim(); ++j) {
      const auto& b = l.bracket(i, j);
      if (b.empty()) continue;
      auto terms = nlohmann::ordered_json::array();
      for (const auto& [k, x] : b) terms.push_back({k, to_string(x)});
      br.push_back({i, j, std::move(terms)});
    }
  doc["bracket"] = std::move(br);
  return doc;
}

#define UCE_INSTANTIATE_SUPER(S)                                                                            \
  template class SuperAlgebra<S>;                                                                           \
  template class GeneralLinear<S>;                                                                          \
  template IdentityReport check_identities<S>(const SuperAlgebra<S>&, std::size_t);                         \
  template IdentityReport check_pairs<S>(const SuperAlgebra<S>&, std::size_t);                              \
  template SubAlgebra<S> derived_subalgebra<S>(const SuperAlgebra<S>&, std::string);                        \
  template SubAlgebra<S> restrict_to<S>(const SuperAlgebra<S>&, Subspace<S>, std::string);                  \
  template SubAlgebra<S> build_sl<S>(const GeneralLinear<S>&);                                              \
  template SupertraceComparison compare_supertrace<S>(const GeneralLinear<S>&, const SubAlgebra<S>&);       \
  template bool is_perfect<S>(const SuperAlgebra<S>&);                                                      \
  template Subspace<S> ideal_closure<S>(const SuperAlgebra<S>&, const Subspace<S>&);                        \
  template Subspace<S> squares_span<S>(const SuperAlgebra<S>&);                                             \
  template QuotientAlgebra<S> quotient_algebra<S>(const SuperAlgebra<S>&, const Subspace<S>&, std::string); \
  template QuotientAlgebra<S> slie_quotient<S>(const SuperAlgebra<S>&, std::string);                        \
  template bool is_homomorphism<S>(const ExactMatrix<S>&, const SuperAlgebra<S>&, const SuperAlgebra<S>&);  \
  template nlohmann::ordered_json to_json<S>(const SuperAlgebra<S>&);

UCE_INSTANTIATE_SUPER(Rational)
UCE_INSTANTIATE_SUPER(ModP)

}  // namespace uce
