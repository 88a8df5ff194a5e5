#pragma once

#include "uce/leibniz_homology.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace uce {

/// Bilinear map c : L × L -> K^target_dim; values[i * dim + j] = c(b_i, b_j).
template <ExactScalar S>
struct Cocycle2 {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<SparseVector<S>> values;

  const SparseVector<S>& at(std::size_t i, std::size_t j) const { return values[i * source_dim + j]; }
  /// c(x, y) for coordinate vectors
  SparseVector<S> apply(const SparseVector<S>& x, const SparseVector<S>& y) const;
};

/// Exhaustive check of c([x,y],z) = c(x,[y,z]) − (-1)^{|x||y|} c(y,[x,z]).
/// Returns the first violating triple, if any.
template <ExactScalar S>
std::optional<IdentityViolation> cocycle_violation(const SuperAlgebra<S>& l, const Cocycle2<S>& c);

/// Solution space of the cocycle condition, which is c ∘ d_3 = 0: every
/// cocycle factors as M ∘ (L⊗L -> (L⊗L)/im d_3). Only even classes are
/// sampled, so the appended centre is even.
template <ExactScalar S>
struct CocycleSpace {
  Subspace<S> d3_image;
  Quotient<S> classes;
  std::vector<std::uint32_t> even_coordinates;  // quotient coordinates of even parity
};

template <ExactScalar S>
CocycleSpace<S> cocycle_space(const SuperAlgebra<S>& l, Subspace<S> d3_image);

template <ExactScalar S>
CocycleSpace<S> cocycle_space(const SuperAlgebra<S>& l, const LeibnizOptions& opts = {});

/// Pseudorandom even cocycle with small integer coefficients; the same seed
/// gives the same cocycle. target_dim = 0 gives the zero cocycle.
template <ExactScalar S>
Cocycle2<S> sample_cocycle(const SuperAlgebra<S>& l, const CocycleSpace<S>& space, std::size_t target_dim,
                           std::uint64_t seed);

template <ExactScalar S>
Cocycle2<S> sample_cocycle(const SuperAlgebra<S>& l, std::size_t target_dim, std::uint64_t seed,
                           const LeibnizOptions& opts = {});

/// c(x, y) = f([x, y]) for a linear f : L -> K^target_dim.
template <ExactScalar S>
Cocycle2<S> coboundary(const SuperAlgebra<S>& l, const ExactMatrix<S>& f);

template <ExactScalar S>
Cocycle2<S> zero_cocycle(const SuperAlgebra<S>& l, std::size_t target_dim);

/// L ⊕ K^target_dim with [(x,u),(y,v)] = ([x,y], c(x,y)). Throws
/// SuperAlgebraError when c violates the cocycle condition.
template <ExactScalar S>
CentralExtension<S> cocycle_extension(const SuperAlgebra<S>& l, const Cocycle2<S>& c);

template <ExactScalar S>
struct LiftResult {
  std::optional<ExactMatrix<S>> rho;  // U.total -> W.total
  std::size_t homogeneous_dim = 0;    // dimension of the solution space of the homogeneous system
  bool verified = false;              // rho is a homomorphism with proj_W ∘ rho = proj_U
  std::string failure;

  bool ok() const { return rho.has_value() && homogeneous_dim == 0 && verified; }
};

/// Solves for ρ : U.total -> W.total with proj_W∘ρ = proj_U and
/// ρ([x,y]) = [ρx, ρy]. Writing ρ = s∘proj_U + κ with s a fixed section of
/// proj_W and κ valued in ker proj_W, the conditions become linear in κ:
///   κ([u,u']) = [s proj u, s proj u'] − s(proj [u,u']).
/// The matrix of u ↦ [u,u'] data is factored once and reused across targets.
template <ExactScalar S>
class LiftSolver {
 public:
  explicit LiftSolver(const CentralExtension<S>& u);

  std::size_t homogeneous_dim() const { return homogeneous_dim_; }
  LiftResult<S> solve(const CentralExtension<S>& w);

 private:
  const CentralExtension<S>& u_;
  std::size_t homogeneous_dim_ = 0;
  LinearSolver<S> solver_;
};

template <ExactScalar S>
LiftResult<S> find_lift(const CentralExtension<S>& u, const CentralExtension<S>& w);

}  // namespace uce
