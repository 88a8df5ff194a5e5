#pragma once

#include "uce/sparse.hpp"

#include <optional>
#include <queue>
#include <vector>

namespace uce {

template <ExactScalar S>
class Subspace;

/// Incremental Gaussian elimination with the leftmost-pivot rule.
///
/// Rows are kept in (unreduced) echelon form: every row has a unit pivot and
/// only entries to the right of it. `reduce` cascades through the rows in
/// increasing column order, so its output is supported on non-pivot columns
/// and depends only on the span, not on insertion order.
///
/// Not safe for concurrent use: reduction reuses an internal dense scratch.
template <ExactScalar S>
class Echelon {
 public:
  Echelon(std::size_t ambient_dim, FieldConfig field);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const FieldConfig& field() const { return field_; }

  SparseVector<S> reduce(const SparseVector<S>& v);
  bool contains(const SparseVector<S>& v) { return reduce(v).empty(); }

  /// Adds v to the span. Returns false when v was already in it.
  bool insert(const SparseVector<S>& v);

  /// Rows in insertion order (unit pivot first, echelon but not reduced).
  const std::vector<SparseVector<S>>& rows() const { return rows_; }

  /// Canonical reduced-echelon form of the span.
  Subspace<S> subspace() const;

 private:
  std::size_t ambient_;
  FieldConfig field_;
  std::vector<std::int32_t> row_of_pivot_;
  std::vector<SparseVector<S>> rows_;

  std::vector<S> dense_;
  std::vector<char> queued_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap_;
};

/// Subspace of K^n held as its unique reduced row-echelon basis, so equal
/// subspaces compare equal member by member.
template <ExactScalar S>
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace.
  Subspace(std::size_t ambient_dim, FieldConfig field);
  static Subspace full(std::size_t ambient_dim, FieldConfig field);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const FieldConfig& field() const { return field_; }
  const std::vector<SparseVector<S>>& basis() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  bool is_pivot(std::uint32_t c) const { return pivot_row_.at(c) >= 0; }

  /// v minus its component along this subspace; supported on non-pivot columns.
  SparseVector<S> reduce(const SparseVector<S>& v) const;
  bool contains(const SparseVector<S>& v) const { return reduce(v).empty(); }
  bool contains(const Subspace& other) const;

  /// Coordinates of v in the reduced basis. Throws if v is not in the subspace.
  SparseVector<S> coordinates(const SparseVector<S>& v) const;

  /// ambient x dim matrix whose columns are the basis vectors.
  ExactMatrix<S> inclusion() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  friend class Echelon<S>;
  Subspace(std::size_t ambient_dim, FieldConfig field, std::vector<SparseVector<S>> rref_rows);

  std::size_t ambient_ = 0;
  FieldConfig field_;
  std::vector<SparseVector<S>> rows_;
  std::vector<std::uint32_t> pivots_;
  std::vector<std::int32_t> pivot_row_;
};

template <ExactScalar S>
Subspace<S> span(std::size_t ambient_dim, const FieldConfig& field, const std::vector<SparseVector<S>>& vectors);

template <ExactScalar S>
struct RankKernelImage {
  std::size_t rank = 0;
  Subspace<S> kernel;  // inside K^cols
  Subspace<S> image;   // inside K^rows
};

template <ExactScalar S>
RankKernelImage<S> rank_kernel_image(const ExactMatrix<S>& m);

/// Column space only; cheaper than rank_kernel_image for very wide matrices.
template <ExactScalar S>
Subspace<S> image(const ExactMatrix<S>& m);

template <ExactScalar S>
Subspace<S> kernel(const ExactMatrix<S>& m);

/// ambient / sub. Quotient coordinates are the non-pivot columns of `sub`
/// in increasing order; `projector` maps ambient coordinates onto them.
template <ExactScalar S>
struct Quotient {
  std::size_t dim = 0;
  ExactMatrix<S> projector;
  std::vector<std::uint32_t> representatives;  // ambient index of each quotient coordinate

  /// Canonical lift of a quotient vector (supported on the representatives).
  SparseVector<S> lift(const SparseVector<S>& q) const {
    return q.remapped([this](std::uint32_t k) { return representatives.at(k); });
  }
};

template <ExactScalar S>
Quotient<S> quotient(std::size_t ambient_dim, const Subspace<S>& sub);

template <ExactScalar S>
struct SubspaceOps {
  Subspace<S> sum;
  Subspace<S> intersection;
  bool contains = false;  // b is contained in a
};

template <ExactScalar S>
SubspaceOps<S> subspace_ops(const Subspace<S>& a, const Subspace<S>& b);

/// Image of a subspace under a linear map.
template <ExactScalar S>
Subspace<S> map_subspace(const ExactMatrix<S>& m, const Subspace<S>& sub);

/// Pre-factored solver for M x = v. Uses the augmented elimination of
/// [M e_j | e_j], so the returned solution is a fixed function of (M, v).
template <ExactScalar S>
class LinearSolver {
 public:
  explicit LinearSolver(const ExactMatrix<S>& m);

  std::size_t rank() const { return rank_; }
  std::optional<SparseVector<S>> solve(const SparseVector<S>& v);
  Subspace<S> kernel() const;
  Subspace<S> image() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t rank_ = 0;
  Echelon<S> echelon_;
};

template <ExactScalar S>
std::optional<SparseVector<S>> solve(const ExactMatrix<S>& m, const SparseVector<S>& v);

/// Dense helper: vector with entries 0..n-1 taken from a sparse one.
template <ExactScalar S>
std::vector<S> to_dense(const SparseVector<S>& v, std::size_t n);

}  // namespace uce
