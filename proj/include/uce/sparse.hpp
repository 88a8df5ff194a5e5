#pragma once

#include "uce/field.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uce {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse coordinate vector: entries sorted by index, no stored zeros.
template <ExactScalar S>
class SparseVector {
 public:
  using Index = std::uint32_t;
  using Entry = std::pair<Index, S>;

  SparseVector() = default;

  /// Accepts entries in any order; duplicates are summed and zeros dropped.
  explicit SparseVector(std::vector<Entry> entries) : entries_(std::move(entries)) { canonicalize(); }

  static SparseVector unit(Index i, const S& one) {
    SparseVector v;
    v.entries_.emplace_back(i, one);
    return v;
  }

  /// Builds from already sorted, zero-free entries.
  static SparseVector from_sorted(std::vector<Entry> entries) {
    SparseVector v;
    v.entries_ = std::move(entries);
    return v;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  Index leading() const { return entries_.front().first; }
  Index max_index() const { return entries_.back().first; }

  S coeff(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) return it->second;
    return S{};
  }

  SparseVector& operator+=(const SparseVector& o) { return axpy(one_like(o), o); }
  SparseVector& operator-=(const SparseVector& o) { return axpy(-one_like(o), o); }

  /// this += a * x
  SparseVector& axpy(const S& a, const SparseVector& x) {
    if (is_zero(a) || x.empty()) return *this;
    std::vector<Entry> out;
    out.reserve(entries_.size() + x.entries_.size());
    auto i = entries_.begin();
    auto j = x.entries_.begin();
    while (i != entries_.end() || j != x.entries_.end()) {
      if (j == x.entries_.end() || (i != entries_.end() && i->first < j->first)) {
        out.push_back(std::move(*i++));
      } else if (i == entries_.end() || j->first < i->first) {
        out.emplace_back(j->first, a * j->second);
        ++j;
      } else {
        S s = i->second + a * j->second;
        if (!is_zero(s)) out.emplace_back(i->first, std::move(s));
        ++i;
        ++j;
      }
    }
    entries_ = std::move(out);
    return *this;
  }

  SparseVector scaled(const S& a) const {
    if (is_zero(a)) return {};
    SparseVector r;
    r.entries_.reserve(entries_.size());
    for (const auto& [k, x] : entries_) r.entries_.emplace_back(k, a * x);
    return r;
  }

  SparseVector operator-() const {
    SparseVector r;
    r.entries_.reserve(entries_.size());
    for (const auto& [k, x] : entries_) r.entries_.emplace_back(k, -x);
    return r;
  }

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

  /// Re-indexes every entry through `map` (entries mapped to the same slot are summed).
  template <class F>
  SparseVector remapped(F&& map) const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [k, x] : entries_) out.emplace_back(map(k), x);
    return SparseVector(std::move(out));
  }

 private:
  // 1 in the same domain as the entries of o (ModP needs the modulus).
  static S one_like(const SparseVector& o) {
    if (o.empty()) return S{};
    const S& x = o.entries_.front().second;
    return x / x;
  }

  void canonicalize() {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (auto& e : entries_) {
      if (!out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
      } else {
        if (!out.empty() && is_zero(out.back().second)) out.pop_back();
        out.push_back(std::move(e));
      }
    }
    if (!out.empty() && is_zero(out.back().second)) out.pop_back();
    entries_ = std::move(out);
  }

  std::vector<Entry> entries_;
};

/// Collects scaled terms and produces a canonical SparseVector once.
template <ExactScalar S>
class LinearCombination {
 public:
  using Index = typename SparseVector<S>::Index;

  void add(Index i, const S& x) {
    if (!is_zero(x)) terms_.emplace_back(i, x);
  }
  void add(const S& a, const SparseVector<S>& v) {
    if (is_zero(a)) return;
    for (const auto& [k, x] : v) terms_.emplace_back(k, a * x);
  }
  void add(const SparseVector<S>& v) {
    for (const auto& e : v) terms_.push_back(e);
  }
  SparseVector<S> build() && { return SparseVector<S>(std::move(terms_)); }

 private:
  std::vector<typename SparseVector<S>::Entry> terms_;
};

/// Sparse matrix over an exact field, stored by columns: column j is the
/// image of the j-th source basis vector.
template <ExactScalar S>
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols, FieldConfig field)
      : rows_(rows), field_(field), columns_(cols) {}
  ExactMatrix(std::size_t rows, FieldConfig field, std::vector<SparseVector<S>> columns)
      : rows_(rows), field_(field), columns_(std::move(columns)) {
    for (const auto& c : columns_) check_column(c);
  }

  static ExactMatrix identity(std::size_t n, FieldConfig field) {
    ExactMatrix m(n, n, field);
    const S one = make_scalar<S>(1, field);
    for (std::size_t i = 0; i < n; ++i)
      m.columns_[i] = SparseVector<S>::unit(static_cast<std::uint32_t>(i), one);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const FieldConfig& field() const { return field_; }
  const SparseVector<S>& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<SparseVector<S>>& columns() const { return columns_; }

  void set_column(std::size_t j, SparseVector<S> c) {
    check_column(c);
    columns_.at(j) = std::move(c);
  }

  S entry(std::size_t i, std::size_t j) const { return columns_.at(j).coeff(static_cast<std::uint32_t>(i)); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.nnz();
    return n;
  }

  bool is_zero_matrix() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
  }

  /// M * v
  SparseVector<S> apply(const SparseVector<S>& v) const {
    LinearCombination<S> acc;
    for (const auto& [j, x] : v) {
      if (j >= columns_.size()) throw ShapeError("vector index exceeds matrix columns");
      acc.add(x, columns_[j]);
    }
    return std::move(acc).build();
  }

  /// this * other
  ExactMatrix compose(const ExactMatrix& other) const {
    if (other.rows_ != cols()) throw ShapeError("incompatible shapes in matrix product");
    ExactMatrix r(rows_, other.cols(), field_);
    for (std::size_t j = 0; j < other.cols(); ++j) r.columns_[j] = apply(other.columns_[j]);
    return r;
  }

  ExactMatrix transposed() const {
    std::vector<std::vector<typename SparseVector<S>::Entry>> rows(rows_);
    for (std::size_t j = 0; j < columns_.size(); ++j)
      for (const auto& [i, x] : columns_[j]) rows[i].emplace_back(static_cast<std::uint32_t>(j), x);
    ExactMatrix t(cols(), rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i) t.columns_[i] = SparseVector<S>::from_sorted(std::move(rows[i]));
    return t;
  }

  ExactMatrix operator+(const ExactMatrix& o) const {
    if (o.rows_ != rows_ || o.cols() != cols()) throw ShapeError("matrix sum shape mismatch");
    ExactMatrix r = *this;
    for (std::size_t j = 0; j < cols(); ++j) r.columns_[j] += o.columns_[j];
    return r;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

 private:
  void check_column(const SparseVector<S>& c) const {
    if (!c.empty() && c.max_index() >= rows_) throw ShapeError("column entry outside matrix rows");
    for (const auto& e : c)
      if (!in_domain(e.second, field_)) throw FieldError("matrix entry outside the scalar domain " + field_.name());
  }

  std::size_t rows_ = 0;
  FieldConfig field_;
  std::vector<SparseVector<S>> columns_;
};

}  // namespace uce
