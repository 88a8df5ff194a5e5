#pragma once

#include "uce/coeff_algebra.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace uce {

class SuperAlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Additive grading label (e.g. a torus weight); empty when ungraded.
using Weight = std::vector<int>;

/// Z_2-graded algebra with a bilinear bracket given by structure constants:
/// bracket(i, j) is the coordinate vector of [b_i, b_j].
///
/// An optional additive weight per basis vector records a finer grading
/// that the bracket respects; it only speeds up eliminations.
template <ExactScalar S>
class SuperAlgebra {
 public:
  SuperAlgebra() = default;
  SuperAlgebra(std::string name, FieldConfig field, std::vector<std::string> labels, std::vector<std::uint8_t> parity,
               std::vector<SparseVector<S>> brackets, std::vector<Weight> weights = {});

  const std::string& name() const { return name_; }
  const FieldConfig& field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  int parity(std::size_t i) const { return parity_[i]; }
  const std::vector<std::uint8_t>& parities() const { return parity_; }
  const SparseVector<S>& bracket(std::size_t i, std::size_t j) const { return brackets_[i * dim() + j]; }
  const std::vector<Weight>& weights() const { return weights_; }
  bool has_weights() const { return !weights_.empty(); }

  SparseVector<S> bracket(const SparseVector<S>& x, const SparseVector<S>& y) const;
  /// [b_i, y]
  SparseVector<S> bracket_basis_left(std::size_t i, const SparseVector<S>& y) const;
  /// [x, b_j]
  SparseVector<S> bracket_basis_right(const SparseVector<S>& x, std::size_t j) const;

  S one() const { return make_scalar<S>(1, field_); }
  /// (-1)^{|b_i||b_j|}
  S sign(std::size_t i, std::size_t j) const { return (parity_[i] & parity_[j]) ? S(-one()) : one(); }
  SparseVector<S> basis(std::size_t i) const { return SparseVector<S>::unit(static_cast<std::uint32_t>(i), one()); }

  /// Parity of a homogeneous vector; throws for mixed or zero vectors.
  int parity_of(const SparseVector<S>& v) const;

  std::string format(const SparseVector<S>& v) const;

 private:
  std::string name_;
  FieldConfig field_;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> parity_;
  std::vector<SparseVector<S>> brackets_;
  std::vector<Weight> weights_;
};

struct IdentityViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
};

/// Exhaustive basis checks. `leibniz` lists triples violating
/// [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]; `lie` lists pairs violating
/// [a,b] + (-1)^{|a||b|}[b,a] = 0; `grading` lists pairs whose bracket leaves
/// the parity-(|a|+|b|) component. At most `limit` entries per list are kept.
struct IdentityReport {
  std::vector<IdentityViolation> leibniz;
  std::vector<IdentityViolation> lie;
  std::vector<IdentityViolation> grading;
  std::size_t leibniz_count = 0;
  std::size_t lie_count = 0;
  std::size_t grading_count = 0;

  bool is_leibniz() const { return leibniz_count == 0 && grading_count == 0; }
  bool is_lie() const { return is_leibniz() && lie_count == 0; }
};

template <ExactScalar S>
IdentityReport check_identities(const SuperAlgebra<S>& l, std::size_t limit = 16);

/// Only the pair checks (antisymmetry and grading); cheap.
template <ExactScalar S>
IdentityReport check_pairs(const SuperAlgebra<S>& l, std::size_t limit = 16);

/// τ_ij: 0 when i, j lie in the same diagonal block, 1 otherwise. Indices are
/// 0-based: 0..m-1 is the first block, m..m+n-1 the second.
int tau(std::size_t i, std::size_t j, std::size_t m, std::size_t n);

/// Checks (-1)^{τ_ij + τ_jk} = (-1)^{τ_ik} and τ_ij = τ_ji for all index triples.
bool tau_identity_holds(std::size_t m, std::size_t n);

/// Refuses m+n = 3 in characteristic 3 and m+n = 4 in characteristic 2
/// unless the field carries the override flag. Returns a banner text when the
/// override was used (including characteristic 2 or 3 at other sizes),
/// otherwise an empty string.
std::string characteristic_guard(std::size_t m, std::size_t n, const FieldConfig& field);

/// gl(m,n,A): basis E_ij(b_k) indexed ((i*(m+n)+j)*dim A + k), parity τ_ij,
/// weight e_i − e_j, and the supercommutator
///   [E_ij(a), E_kl(b)] = δ_jk E_il(ab) − (-1)^{τ_ij τ_kl} δ_li E_kj(ba).
template <ExactScalar S>
class GeneralLinear {
 public:
  GeneralLinear(std::size_t m, std::size_t n, CoeffAlgebra<S> coeff);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return m_ + n_; }
  const CoeffAlgebra<S>& coeff() const { return coeff_; }
  const SuperAlgebra<S>& algebra() const { return algebra_; }

  std::uint32_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return static_cast<std::uint32_t>((i * size() + j) * coeff_.dim() + k);
  }
  /// E_ij(a) for a coordinate vector a of the coefficient algebra.
  SparseVector<S> E(std::size_t i, std::size_t j, const SparseVector<S>& a) const;
  /// The (i, j) entry of X as an element of A.
  SparseVector<S> entry(const SparseVector<S>& x, std::size_t i, std::size_t j) const;
  /// str X = Σ_{i<m} X_ii − Σ_{i>=m} X_ii
  SparseVector<S> supertrace(const SparseVector<S>& x) const;
  /// str_2(X⊗Y) in A⊗A (lexicographic pair basis): Σ_ij ±X_ij⊗Y_ji with
  /// sign + for i < m and − for i >= m.
  SparseVector<S> str2(const SparseVector<S>& x, const SparseVector<S>& y) const;

 private:
  std::size_t m_;
  std::size_t n_;
  CoeffAlgebra<S> coeff_;
  SuperAlgebra<S> algebra_;
};

/// A subalgebra (or any bracket-closed subspace) on the canonical basis of
/// its reduced echelon form.
template <ExactScalar S>
struct SubAlgebra {
  Subspace<S> sub;
  SuperAlgebra<S> algebra;
  ExactMatrix<S> inclusion;  // sub coordinates -> ambient coordinates

  SparseVector<S> to_sub(const SparseVector<S>& v) const { return sub.coordinates(v); }
};

/// [L, L] with the restricted bracket.
template <ExactScalar S>
SubAlgebra<S> derived_subalgebra(const SuperAlgebra<S>& l, std::string name);

template <ExactScalar S>
SubAlgebra<S> restrict_to(const SuperAlgebra<S>& l, Subspace<S> sub, std::string name);

/// sl(m,n,A) = gl(m,n,A)^{(1)}.
template <ExactScalar S>
SubAlgebra<S> build_sl(const GeneralLinear<S>& gl);

/// Supertrace characterizations compared with the derived subalgebra.
struct SupertraceComparison {
  bool equals_commutator_condition = false;  // [gl,gl] = {X : str X ∈ [A,A]}
  bool equals_zero_condition = false;        // [gl,gl] = {X : str X = 0}
};

template <ExactScalar S>
SupertraceComparison compare_supertrace(const GeneralLinear<S>& gl, const SubAlgebra<S>& sl);

template <ExactScalar S>
bool is_perfect(const SuperAlgebra<S>& l);

/// Smallest subspace containing `seed` and closed under bracketing with every
/// basis vector on both sides.
template <ExactScalar S>
Subspace<S> ideal_closure(const SuperAlgebra<S>& l, const Subspace<S>& seed);

/// span{[b_i,b_j] + (-1)^{|b_i||b_j|}[b_j,b_i]}
template <ExactScalar S>
Subspace<S> squares_span(const SuperAlgebra<S>& l);

template <ExactScalar S>
struct QuotientAlgebra {
  SuperAlgebra<S> algebra;
  ExactMatrix<S> projection;  // L -> quotient coordinates
  Subspace<S> ideal;
  std::vector<std::uint32_t> representatives;
};

/// L / I for a two-sided graded ideal I (closure is asserted).
template <ExactScalar S>
QuotientAlgebra<S> quotient_algebra(const SuperAlgebra<S>& l, const Subspace<S>& ideal, std::string name);

/// L_SLie = L / ideal generated by the squares; the result is checked to be Lie.
template <ExactScalar S>
QuotientAlgebra<S> slie_quotient(const SuperAlgebra<S>& l, std::string name);

/// True when f([b_i,b_j]) = [f b_i, f b_j] for all basis pairs.
template <ExactScalar S>
bool is_homomorphism(const ExactMatrix<S>& f, const SuperAlgebra<S>& src, const SuperAlgebra<S>& dst);

/// {name, char, dim, labels, parity, bracket: [[i, j, [[k, "c"], ...]], ...]}
template <ExactScalar S>
nlohmann::ordered_json to_json(const SuperAlgebra<S>& l);

}  // namespace uce
