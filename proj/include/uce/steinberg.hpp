#pragma once

#include "uce/leibniz_homology.hpp"

#include <string>
#include <vector>

namespace uce {

/// stl(m,n,A) realized as the universal central extension of sl(m,n,A),
/// with generators v_ij(a) = class of E_ik(1)⊗E_kj(a) for the smallest k
/// outside {i, j}. Indices are 0-based; labels print them 1-based.
template <ExactScalar S>
class SteinbergRealization {
 public:
  SteinbergRealization(GeneralLinear<S> gl, SubAlgebra<S> sl, UniversalExtension<S> uce);

  std::size_t m() const { return gl_.m(); }
  std::size_t n() const { return gl_.n(); }
  std::size_t size() const { return gl_.size(); }
  const CoeffAlgebra<S>& coeff() const { return gl_.coeff(); }
  const GeneralLinear<S>& gl() const { return gl_; }
  const SubAlgebra<S>& sl() const { return sl_; }
  const UniversalExtension<S>& uce() const { return uce_; }
  const CentralExtension<S>& extension() const { return uce_.ext; }
  const SuperAlgebra<S>& total() const { return uce_.ext.total; }
  /// ψ : stl -> sl in sl coordinates
  const ExactMatrix<S>& psi() const { return uce_.ext.proj; }
  const Subspace<S>& ker_psi() const { return uce_.ext.kernel; }

  /// E_ij(a) in sl coordinates (i != j)
  SparseVector<S> e(std::size_t i, std::size_t j, const SparseVector<S>& a) const;
  /// v_ij(a) with the canonical auxiliary index
  SparseVector<S> v(std::size_t i, std::size_t j, const SparseVector<S>& a) const;
  /// class of E_ik(1)⊗E_kj(a) for an explicit k
  SparseVector<S> v_via(std::size_t i, std::size_t j, std::size_t k, const SparseVector<S>& a) const;
  /// H_ij(a,b) = [v_ij(a), v_ji(b)]
  SparseVector<S> h(std::size_t i, std::size_t j, const SparseVector<S>& a, const SparseVector<S>& b) const;
  std::size_t canonical_k(std::size_t i, std::size_t j) const;

  const Subspace<S>& P() const { return p_; }
  const Subspace<S>& H() const { return h_; }
  const Subspace<S>& Q() const { return q_; }
  /// total = P ⊕ H ⊕ Q
  bool direct_sum() const { return direct_sum_; }

 private:
  GeneralLinear<S> gl_;
  SubAlgebra<S> sl_;
  UniversalExtension<S> uce_;
  Subspace<S> p_, h_, q_;
  bool direct_sum_ = false;
};

/// Builds gl, sl and the extension; throws SuperAlgebraError for m+n < 3 or,
/// when strict, if total ≠ P ⊕ H ⊕ Q; FieldError when the characteristic guard refuses.
template <ExactScalar S>
SteinbergRealization<S> steinberg_realize(std::size_t m, std::size_t n, const CoeffAlgebra<S>& a,
                                          const LeibnizOptions& opts = {}, bool strict = true);

/// Violations found by an exhaustive sweep; at most `limit` messages are kept.
struct RelationReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> messages;
  std::size_t limit = 20;

  bool ok() const { return violations == 0; }
  void record(bool holds, const std::string& what);
  void merge(const RelationReport& other);
  std::string summary() const;
};

/// Linearity of v_ij, [v_ij(a), v_kl(b)] = 0 for i != l, j != k,
/// [v_ij(a), v_jl(b)] = v_il(ab) for i != l, the reversed case
/// [v_ij(a), v_ki(b)] = −(-1)^{τ_ij τ_ki} v_kj(ba) for j != k, the independence of
/// the auxiliary index and ψ(v_ij(a)) = E_ij(a).
template <ExactScalar S>
RelationReport verify_steinberg_relations(const SteinbergRealization<S>& st);

/// H_ij(ab,c) = H_ik(a,bc) + (-1)^{τ_ik} H_kj(b,ca) over distinct i,j,k;
/// H_ij(1,a) = −(-1)^{τ_ij} H_ji(1,a); h(a,b) = H_1i(a,b) − H_1i(1,ba) is
/// independent of i != 1.
template <ExactScalar S>
RelationReport h_identities(const SteinbergRealization<S>& st);

template <ExactScalar S>
struct PHQ {
  SparseVector<S> p, h, q;
};

/// Unique x = p + h + q with p ∈ P, h ∈ H, q ∈ Q.
template <ExactScalar S>
PHQ<S> phq_decompose(const SteinbergRealization<S>& st, const SparseVector<S>& x);

/// θ on stl = [stl, stl]: a total basis vector, the class of x⊗y, goes to the
/// class of str_2(ιx⊗ιy) in A⊗A/Im d_2, where ι is sl -> gl.
template <ExactScalar S>
struct Theta {
  Quotient<S> target;        // A⊗A -> A⊗A / Im d_2
  ExactMatrix<S> on_pairs;   // (sl⊗sl) -> A⊗A, str_2 on basis pairs
  ExactMatrix<S> map;        // total -> target coordinates
  bool well_defined = false; // on_pairs maps im d_3 into Im d_2
  std::string witness;       // first offending boundary when not well defined
};

template <ExactScalar S>
Theta<S> build_theta(const SteinbergRealization<S>& st);

/// θ of the class of x⊗y, for sl vectors x, y.
template <ExactScalar S>
SparseVector<S> theta(const SteinbergRealization<S>& st, const Theta<S>& th, const SparseVector<S>& x,
                      const SparseVector<S>& y);

/// ad(v_12(1) + v_21(1)) on M = v_13(A) ⊕ v_31(A) ⊕ v_23(A) ⊕ v_32(A), m+n = 3.
struct DiagonalReport {
  bool applicable = false;
  bool invariant = false;      // D maps M into M
  bool involution = false;     // D^2 = I on M
  std::size_t module_dim = 0;
  std::size_t plus_dim = 0;    // dim ker(D − I)
  std::size_t minus_dim = 0;   // dim ker(D + I)

  bool ok() const {
    return applicable && invariant && involution && plus_dim > 0 && minus_dim > 0 &&
           plus_dim + minus_dim == module_dim;
  }
};

template <ExactScalar S>
DiagonalReport diagonal_diagnostic(const SteinbergRealization<S>& st);

}  // namespace uce
