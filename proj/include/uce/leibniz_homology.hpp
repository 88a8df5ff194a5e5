#pragma once

#include "uce/hochschild.hpp"
#include "uce/superalgebra.hpp"

#include <optional>
#include <stdexcept>

namespace uce {

class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxCols = 64000;

/// Column cap for d_3 on L^{⊗3}: UCE_LAB_MAX_COLS when set, else kDefaultMaxCols.
std::size_t default_max_cols();

struct LeibnizOptions {
  /// Largest (dim L)^3 accepted; 0 disables the cap.
  std::size_t max_cols = kDefaultMaxCols;
};

/// Leibniz boundary, left convention (matching [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]):
///   d_2(x⊗y) = [x,y]
///   d_3(x⊗y⊗z) = [x,y]⊗z − x⊗[y,z] + (-1)^{|x||y|} y⊗[x,z]
/// Full matrices for n in {2, 3}; n = 3 asserts d_2∘d_3 = 0 and honors the cap.
template <ExactScalar S>
ExactMatrix<S> leibniz_boundary_super(const SuperAlgebra<S>& l, std::size_t n, const LeibnizOptions& opts = {});

/// d_3 applied to one basis triple, in the lexicographic pair basis.
template <ExactScalar S>
SparseVector<S> leibniz_d3(const SuperAlgebra<S>& l, std::size_t x, std::size_t y, std::size_t z);

/// Im d_3 inside L⊗L, streamed triple by triple. Columns are grouped by weight
/// when the algebra carries weights; a weight block stops once its rank
/// reaches dim ker d_2 on that block. d_2 of every column is checked to vanish.
template <ExactScalar S>
Subspace<S> leibniz_d3_image(const SuperAlgebra<S>& l, const LeibnizOptions& opts = {});

/// HL_2 = ker d_2 / im d_3.
template <ExactScalar S>
HomologyResult<S> leibniz_h2(const SuperAlgebra<S>& l, const LeibnizOptions& opts = {});

template <ExactScalar S>
HomologyResult<S> leibniz_h2(const SuperAlgebra<S>& l, const Subspace<S>& d3_image);

template <ExactScalar S>
struct CentralExtension {
  SuperAlgebra<S> total;
  SuperAlgebra<S> base;
  ExactMatrix<S> proj;  // total -> base
  Subspace<S> kernel;   // inside total
};

/// Surjectivity, kernel, homomorphism and centrality of an extension.
struct ExtensionCheck {
  bool surjective = false;
  bool homomorphism = false;
  bool central = false;
  bool ok() const { return surjective && homomorphism && central; }
};

template <ExactScalar S>
ExtensionCheck check_extension(const CentralExtension<S>& e);

/// [K, total] = [total, K] = 0 on basis pairs.
template <ExactScalar S>
bool is_central(const SuperAlgebra<S>& total, const Subspace<S>& k);

/// Universal central extension (L⊗L)/im d_3 with [ū, ū'] = class of d_2(u)⊗d_2(u').
/// The total basis consists of classes of the pairs b_x⊗b_y that are not
/// pivots of im d_3.
template <ExactScalar S>
struct UniversalExtension {
  CentralExtension<S> ext;
  Subspace<S> boundaries;  // im d_3 in L⊗L
  Quotient<S> classes;     // L⊗L -> total coordinates

  /// Class of x⊗y for base vectors x, y.
  SparseVector<S> class_of(const SparseVector<S>& x, const SparseVector<S>& y) const;
};

/// Throws SuperAlgebraError when L is not perfect.
template <ExactScalar S>
UniversalExtension<S> uce_leibniz(const SuperAlgebra<S>& l, const LeibnizOptions& opts = {});

template <ExactScalar S>
UniversalExtension<S> uce_leibniz(const SuperAlgebra<S>& l, Subspace<S> d3_image);

/// Second homology in the Lie category, on the super-alternating square
/// Λ²L = L⊗L / span{x⊗y + (-1)^{|x||y|} y⊗x}.
template <ExactScalar S>
struct LieH2 {
  HomologyResult<S> homology;  // in Λ² coordinates
  Quotient<S> wedge;           // L⊗L -> Λ²
  ExactMatrix<S> d2;           // Λ² -> L
};

/// Im d_3 on Λ³ is the image of the Leibniz d_3 under L⊗L -> Λ²; the supplied
/// (or computed) Leibniz image is projected. d_2∘d_3 = 0 is asserted.
template <ExactScalar S>
LieH2<S> lie_h2(const SuperAlgebra<S>& l, const LeibnizOptions& opts = {});

template <ExactScalar S>
LieH2<S> lie_h2(const SuperAlgebra<S>& l, const Subspace<S>& leibniz_d3_image);

/// Rank of the canonical map HL_2 -> H_2 induced by L⊗L -> Λ².
template <ExactScalar S>
std::size_t hl2_to_h2_rank(const HomologyResult<S>& hl2, const LieH2<S>& h2);

}  // namespace uce
