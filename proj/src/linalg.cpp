#include "uce/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace uce {

template <ExactScalar S>
Echelon<S>::Echelon(std::size_t ambient_dim, FieldConfig field)
    : ambient_(ambient_dim), field_(field), row_of_pivot_(ambient_dim, -1), dense_(ambient_dim),
      queued_(ambient_dim, 0) {}

template <ExactScalar S>
SparseVector<S> Echelon<S>::reduce(const SparseVector<S>& v) {
  using Entry = typename SparseVector<S>::Entry;
  for (const auto& [k, x] : v) {
    if (k >= ambient_) throw ShapeError("vector index exceeds ambient dimension");
    dense_[k] += x;
    if (!queued_[k]) {
      queued_[k] = 1;
      heap_.push(k);
    }
  }
  std::vector<Entry> out;
  while (!heap_.empty()) {
    const std::uint32_t c = heap_.top();
    heap_.pop();
    queued_[c] = 0;
    S val = dense_[c];
    dense_[c] = S{};
    if (is_zero(val)) continue;
    const std::int32_t r = row_of_pivot_[c];
    if (r < 0) {
      out.emplace_back(c, std::move(val));
      continue;
    }
    const auto& row = rows_[static_cast<std::size_t>(r)].entries();
    // row[0] is the unit pivot at column c; everything else lies to its right
    for (auto it = row.begin() + 1; it != row.end(); ++it) {
      dense_[it->first] -= val * it->second;
      if (!queued_[it->first]) {
        queued_[it->first] = 1;
        heap_.push(it->first);
      }
    }
  }
  return SparseVector<S>::from_sorted(std::move(out));
}

template <ExactScalar S>
bool Echelon<S>::insert(const SparseVector<S>& v) {
  SparseVector<S> w = reduce(v);
  if (w.empty()) return false;
  const std::uint32_t lead = w.leading();
  const S inv = make_scalar<S>(1, field_) / w.entries().front().second;
  row_of_pivot_[lead] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(w.scaled(inv));
  return true;
}

template <ExactScalar S>
Subspace<S> Echelon<S>::subspace() const {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return rows_[a].leading() > rows_[b].leading(); });

  std::vector<SparseVector<S>> reduced(rows_.size());
  // back-substitution from the rightmost pivot: rows already processed are
  // fully reduced, so one pass per row suffices
  for (const std::size_t r : order) {
    const auto& row = rows_[r];
    const std::uint32_t p = row.leading();
    LinearCombination<S> acc;
    acc.add(row);
    for (const auto& [k, x] : row) {
      if (k == p) continue;
      const std::int32_t q = row_of_pivot_[k];
      if (q >= 0) acc.add(-x, reduced[static_cast<std::size_t>(q)]);
    }
    reduced[r] = std::move(acc).build();
  }
  std::vector<SparseVector<S>> sorted;
  sorted.reserve(rows_.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) sorted.push_back(std::move(reduced[*it]));
  return Subspace<S>(ambient_, field_, std::move(sorted));
}

template <ExactScalar S>
Subspace<S>::Subspace(std::size_t ambient_dim, FieldConfig field)
    : ambient_(ambient_dim), field_(field), pivot_row_(ambient_dim, -1) {}

template <ExactScalar S>
Subspace<S>::Subspace(std::size_t ambient_dim, FieldConfig field, std::vector<SparseVector<S>> rref_rows)
    : ambient_(ambient_dim), field_(field), rows_(std::move(rref_rows)), pivot_row_(ambient_dim, -1) {
  pivots_.reserve(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    pivots_.push_back(rows_[r].leading());
    pivot_row_[rows_[r].leading()] = static_cast<std::int32_t>(r);
  }
}

template <ExactScalar S>
Subspace<S> Subspace<S>::full(std::size_t ambient_dim, FieldConfig field) {
  std::vector<SparseVector<S>> rows;
  rows.reserve(ambient_dim);
  const S one = make_scalar<S>(1, field);
  for (std::size_t i = 0; i < ambient_dim; ++i) rows.push_back(SparseVector<S>::unit(static_cast<std::uint32_t>(i), one));
  return Subspace(ambient_dim, field, std::move(rows));
}

template <ExactScalar S>
SparseVector<S> Subspace<S>::reduce(const SparseVector<S>& v) const {
  if (!v.empty() && v.max_index() >= ambient_) throw ShapeError("vector index exceeds ambient dimension");
  LinearCombination<S> acc;
  acc.add(v);
  for (const auto& [k, x] : v) {
    const std::int32_t r = pivot_row_[k];
    if (r >= 0) acc.add(-x, rows_[static_cast<std::size_t>(r)]);
  }
  return std::move(acc).build();
}

template <ExactScalar S>
bool Subspace<S>::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw ShapeError("subspaces live in different ambient spaces");
  return std::all_of(other.rows_.begin(), other.rows_.end(), [this](const auto& r) { return contains(r); });
}

template <ExactScalar S>
SparseVector<S> Subspace<S>::coordinates(const SparseVector<S>& v) const {
  if (!contains(v)) throw ShapeError("vector does not lie in the subspace");
  std::vector<typename SparseVector<S>::Entry> out;
  for (const auto& [k, x] : v) {
    const std::int32_t r = pivot_row_[k];
    if (r >= 0) out.emplace_back(static_cast<std::uint32_t>(r), x);
  }
  return SparseVector<S>::from_sorted(std::move(out));
}

template <ExactScalar S>
ExactMatrix<S> Subspace<S>::inclusion() const {
  return ExactMatrix<S>(ambient_, field_, rows_);
}

template <ExactScalar S>
Subspace<S> span(std::size_t ambient_dim, const FieldConfig& field, const std::vector<SparseVector<S>>& vectors) {
  Echelon<S> e(ambient_dim, field);
  for (const auto& v : vectors) e.insert(v);
  return e.subspace();
}

template <ExactScalar S>
LinearSolver<S>::LinearSolver(const ExactMatrix<S>& m)
    : rows_(m.rows()), cols_(m.cols()), echelon_(m.rows() + m.cols(), m.field()) {
  const S one = make_scalar<S>(1, m.field());
  for (std::size_t j = 0; j < cols_; ++j) {
    auto entries = m.column(j).entries();
    entries.emplace_back(static_cast<std::uint32_t>(rows_ + j), one);
    echelon_.insert(SparseVector<S>::from_sorted(std::move(entries)));
  }
  for (const auto& r : echelon_.rows())
    if (r.leading() < rows_) ++rank_;
}

template <ExactScalar S>
std::optional<SparseVector<S>> LinearSolver<S>::solve(const SparseVector<S>& v) {
  if (!v.empty() && v.max_index() >= rows_) throw ShapeError("right-hand side longer than matrix rows");
  SparseVector<S> r = echelon_.reduce(v);
  if (!r.empty() && r.leading() < rows_) return std::nullopt;
  const auto shift = static_cast<std::uint32_t>(rows_);
  return -r.remapped([shift](std::uint32_t k) { return k - shift; });
}

template <ExactScalar S>
Subspace<S> LinearSolver<S>::kernel() const {
  Echelon<S> e(cols_, echelon_.field());
  const auto shift = static_cast<std::uint32_t>(rows_);
  for (const auto& r : echelon_.rows())
    if (r.leading() >= rows_) e.insert(r.remapped([shift](std::uint32_t k) { return k - shift; }));
  return e.subspace();
}

template <ExactScalar S>
Subspace<S> LinearSolver<S>::image() const {
  Echelon<S> e(rows_, echelon_.field());
  for (const auto& r : echelon_.rows()) {
    if (r.leading() >= rows_) continue;
    std::vector<typename SparseVector<S>::Entry> head;
    for (const auto& entry : r)
      if (entry.first < rows_) head.push_back(entry);
    e.insert(SparseVector<S>::from_sorted(std::move(head)));
  }
  return e.subspace();
}

template <ExactScalar S>
RankKernelImage<S> rank_kernel_image(const ExactMatrix<S>& m) {
  LinearSolver<S> solver(m);
  RankKernelImage<S> out{solver.rank(), solver.kernel(), solver.image()};
  if (out.rank + out.kernel.dim() != m.cols()) throw std::logic_error("rank-nullity violated");
  return out;
}

template <ExactScalar S>
Subspace<S> image(const ExactMatrix<S>& m) {
  Echelon<S> e(m.rows(), m.field());
  for (const auto& c : m.columns()) e.insert(c);
  return e.subspace();
}

template <ExactScalar S>
Subspace<S> kernel(const ExactMatrix<S>& m) {
  return LinearSolver<S>(m).kernel();
}

template <ExactScalar S>
Quotient<S> quotient(std::size_t ambient_dim, const Subspace<S>& sub) {
  if (sub.ambient_dim() != ambient_dim) throw ShapeError("quotient: subspace lives in another ambient space");
  Quotient<S> q;
  std::vector<std::int64_t> position(ambient_dim, -1);
  for (std::uint32_t c = 0; c < ambient_dim; ++c) {
    if (sub.is_pivot(c)) continue;
    position[c] = static_cast<std::int64_t>(q.representatives.size());
    q.representatives.push_back(c);
  }
  q.dim = q.representatives.size();
  q.projector = ExactMatrix<S>(q.dim, ambient_dim, sub.field());
  const S one = make_scalar<S>(1, sub.field());
  std::size_t r = 0;
  for (std::uint32_t c = 0; c < ambient_dim; ++c) {
    if (!sub.is_pivot(c)) {
      q.projector.set_column(c, SparseVector<S>::unit(static_cast<std::uint32_t>(position[c]), one));
      continue;
    }
    const auto& row = sub.basis()[r++];
    std::vector<typename SparseVector<S>::Entry> col;
    for (auto it = row.begin() + 1; it != row.end(); ++it)
      col.emplace_back(static_cast<std::uint32_t>(position[it->first]), -it->second);
    q.projector.set_column(c, SparseVector<S>::from_sorted(std::move(col)));
  }
  return q;
}

template <ExactScalar S>
SubspaceOps<S> subspace_ops(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ShapeError("subspace_ops: ambient dimensions differ");
  const std::size_t n = a.ambient_dim();
  const auto shift = static_cast<std::uint32_t>(n);

  std::vector<SparseVector<S>> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());

  // Zassenhaus: rows (x | x) for x in a, (y | 0) for y in b; rows whose left
  // half vanishes carry the intersection in their right half
  Echelon<S> z(2 * n, a.field());
  for (const auto& x : a.basis()) {
    auto entries = x.entries();
    for (const auto& e : x) entries.emplace_back(e.first + shift, e.second);
    z.insert(SparseVector<S>::from_sorted(std::move(entries)));
  }
  for (const auto& y : b.basis()) z.insert(y);
  std::vector<SparseVector<S>> meet;
  for (const auto& r : z.rows())
    if (r.leading() >= n) meet.push_back(r.remapped([shift](std::uint32_t k) { return k - shift; }));

  SubspaceOps<S> out{span(n, a.field(), all), span(n, a.field(), meet), a.contains(b)};
  return out;
}

template <ExactScalar S>
Subspace<S> map_subspace(const ExactMatrix<S>& m, const Subspace<S>& sub) {
  if (sub.ambient_dim() != m.cols()) throw ShapeError("map_subspace: shape mismatch");
  Echelon<S> e(m.rows(), m.field());
  for (const auto& r : sub.basis()) e.insert(m.apply(r));
  return e.subspace();
}

template <ExactScalar S>
std::optional<SparseVector<S>> solve(const ExactMatrix<S>& m, const SparseVector<S>& v) {
  LinearSolver<S> solver(m);
  return solver.solve(v);
}

template <ExactScalar S>
std::vector<S> to_dense(const SparseVector<S>& v, std::size_t n) {
  std::vector<S> out(n);
  for (const auto& [k, x] : v) out.at(k) = x;
  return out;
}

#define UCE_INSTANTIATE_LINALG(S)                                                                           \
  template class Echelon<S>;                                                                                \
  template class Subspace<S>;                                                                               \
  template class LinearSolver<S>;                                                                           \
  template Subspace<S> span<S>(std::size_t, const FieldConfig&, const std::vector<SparseVector<S>>&);      \
  template RankKernelImage<S> rank_kernel_image<S>(const ExactMatrix<S>&);                                  \
  template Subspace<S> image<S>(const ExactMatrix<S>&);                                                     \
  template Subspace<S> kernel<S>(const ExactMatrix<S>&);                                                    \
  template Quotient<S> quotient<S>(std::size_t, const Subspace<S>&);                                        \
  template SubspaceOps<S> subspace_ops<S>(const Subspace<S>&, const Subspace<S>&);                          \
  template Subspace<S> map_subspace<S>(const ExactMatrix<S>&, const Subspace<S>&);                          \
  template std::optional<SparseVector<S>> solve<S>(const ExactMatrix<S>&, const SparseVector<S>&);          \
  template std::vector<S> to_dense<S>(const SparseVector<S>&, std::size_t);

UCE_INSTANTIATE_LINALG(Rational)
UCE_INSTANTIATE_LINALG(ModP)

}  // namespace uce
