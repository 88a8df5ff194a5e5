#pragma once

#include "uce/coeff_algebra.hpp"

#include <json.hpp>

#include <stdexcept>
#include <vector>

namespace uce {

/// Raised when a boundary fails d∘d = 0, a map fails to descend to a
/// quotient, or a degree is outside the supported range.
class ComplexError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Homology of a chain complex at one degree. Classes are coordinates on a
/// canonical complement of the boundaries inside the cycles.
template <ExactScalar S>
struct HomologyResult {
  std::size_t degree = 0;
  std::size_t dim = 0;
  Subspace<S> cycles;
  Subspace<S> boundaries;
  /// ambient -> class coordinates; exact on cycles, meaningless elsewhere.
  ExactMatrix<S> class_projector;
  /// one cycle per class coordinate
  std::vector<SparseVector<S>> representatives;

  SparseVector<S> class_of(const SparseVector<S>& cycle) const;
};

/// Homology from precomputed cycles and boundaries (boundaries ⊆ cycles is checked).
template <ExactScalar S>
HomologyResult<S> make_homology(std::size_t degree, Subspace<S> cycles, Subspace<S> boundaries);

template <ExactScalar S>
nlohmann::ordered_json to_json(const HomologyResult<S>& h);

/// dims[k] is the dimension in degree k; boundary(n) maps degree n to n-1
/// for 1 <= n <= top(). d_n ∘ d_{n+1} = 0 is checked on construction.
template <ExactScalar S>
class ChainComplex {
 public:
  ChainComplex(FieldConfig field, std::vector<std::size_t> dims, std::vector<ExactMatrix<S>> boundaries);

  std::size_t top() const { return dims_.size() - 1; }
  std::size_t dim(std::size_t degree) const { return dims_.at(degree); }
  const ExactMatrix<S>& boundary(std::size_t n) const { return boundaries_.at(n - 1); }
  const FieldConfig& field() const { return field_; }

  /// ker d_n / im d_{n+1}, with d_0 = 0. Needs n < top().
  HomologyResult<S> homology(std::size_t n) const;

 private:
  FieldConfig field_;
  std::vector<std::size_t> dims_;
  std::vector<ExactMatrix<S>> boundaries_;
};

/// Modified Hochschild boundary
///   d_n(a0⊗…⊗an) = Σ_{i<n} (-1)^i a0⊗…⊗a_i a_{i+1}⊗…⊗an − a1⊗…⊗a_{n-1}⊗a_n a0
/// as a matrix A^{⊗(n+1)} -> A^{⊗n} in the lexicographic tensor basis, 1 <= n <= 3.
template <ExactScalar S>
ExactMatrix<S> hochschild_boundary(const CoeffAlgebra<S>& a, std::size_t n);

/// The classical boundary, whose last summand is (-1)^n a_n a0⊗a1⊗…⊗a_{n-1}.
template <ExactScalar S>
ExactMatrix<S> classical_hochschild_boundary(const CoeffAlgebra<S>& a, std::size_t n);

/// Degrees 0..3 with the modified boundaries d_1..d_3.
template <ExactScalar S>
ChainComplex<S> hochschild_complex(const CoeffAlgebra<S>& a);

/// HH_n for 0 <= n <= 2.
template <ExactScalar S>
HomologyResult<S> hochschild_homology(const CoeffAlgebra<S>& a, std::size_t n);

/// C_n = A^{⊗(n+1)} / span{a0⊗…⊗an − (-1)^n a1⊗…⊗an⊗a0} for n = 0..top,
/// with the boundaries induced by the modified Hochschild boundary.
template <ExactScalar S>
struct CyclicComplex {
  std::vector<Subspace<S>> relations;  // inside A^{⊗(n+1)}
  std::vector<Quotient<S>> quotients;  // A^{⊗(n+1)} -> C_n
  ChainComplex<S> complex;             // on quotient coordinates
};

/// Builds C_0..C_top (top <= 3). Descent of every boundary is asserted.
template <ExactScalar S>
CyclicComplex<S> cyclic_complex(const CoeffAlgebra<S>& a, std::size_t top = 2);

/// HC_n for n in {0, 1}.
template <ExactScalar S>
HomologyResult<S> cyclic_homology(const CoeffAlgebra<S>& a, std::size_t n);

/// True when the classical boundary induces the same map C_2 -> C_1 as the
/// modified one.
template <ExactScalar S>
bool cyclic_boundaries_agree(const CoeffAlgebra<S>& a);

/// dim ker(d̄_1 : C_1/Im d̄_2 -> A); equals dim HC_1 by exactness.
template <ExactScalar S>
std::size_t hc1_via_exact_sequence(const CoeffAlgebra<S>& a);

/// p : HH_1 -> HC_1 in class coordinates, induced by A⊗A -> C_1.
/// Surjectivity is asserted.
template <ExactScalar S>
ExactMatrix<S> hh_to_hc_projection(const CoeffAlgebra<S>& a);

template <ExactScalar S>
ExactMatrix<S> hh_to_hc_projection(const CoeffAlgebra<S>& a, const HomologyResult<S>& hh1,
                                   const CyclicComplex<S>& cyc, const HomologyResult<S>& hc1);

/// Connes operator A^{⊗(n+1)} -> A^{⊗(n+2)} for n in {0, 1}:
///   B(a0⊗…⊗an) = Σ_i (-1)^{ni} 1⊗a_i⊗…⊗a_{i-1} + (-1)^{n(i+1)} a_i⊗…⊗a_{i-1}⊗1.
/// B d_n + d_{n+1} B = 0 is asserted.
template <ExactScalar S>
ExactMatrix<S> connes_B(const CoeffAlgebra<S>& a, std::size_t n);

/// The map HC_0 = A/[A,A] -> HH_1 induced by B at n = 0, and its image.
template <ExactScalar S>
struct InducedB {
  ExactMatrix<S> map;  // HC_0 quotient coordinates -> HH_1 class coordinates
  Subspace<S> image;   // inside HH_1 class coordinates
  std::size_t image_dim = 0;
};

template <ExactScalar S>
InducedB<S> induced_B_image(const CoeffAlgebra<S>& a);

template <ExactScalar S>
InducedB<S> induced_B_image(const CoeffAlgebra<S>& a, const HomologyResult<S>& hh1);

}  // namespace uce
