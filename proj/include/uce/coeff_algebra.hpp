#pragma once

#include "uce/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uce {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-dimensional associative unital algebra given by structure
/// constants: product(i, j) is the coordinate vector of b_i * b_j.
///
/// The constructor only checks shapes; associativity and the unit law are
/// checked by validate(). Elements are plain coordinate vectors.
template <ExactScalar S>
class CoeffAlgebra {
 public:
  using Scalar = S;

  CoeffAlgebra(std::string name, FieldConfig field, std::vector<std::string> labels, SparseVector<S> unit,
               std::vector<SparseVector<S>> products);

  const std::string& name() const { return name_; }
  const FieldConfig& field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVector<S>& unit() const { return unit_; }
  const SparseVector<S>& product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }

  SparseVector<S> basis(std::size_t i) const {
    return SparseVector<S>::unit(static_cast<std::uint32_t>(i), one());
  }
  S one() const { return make_scalar<S>(1, field_); }
  SparseVector<S> multiply(const SparseVector<S>& a, const SparseVector<S>& b) const;
  bool is_commutative() const;

  /// Human-readable linear combination of basis labels.
  std::string format(const SparseVector<S>& a) const;

 private:
  std::string name_;
  FieldConfig field_;
  std::vector<std::string> labels_;
  SparseVector<S> unit_;
  std::vector<SparseVector<S>> products_;
};

struct AlgebraViolation {
  enum class Kind { associativity, left_unit, right_unit };
  Kind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  std::string describe() const;
};

/// Every associativity triple and unit-law failure, in lexicographic order.
template <ExactScalar S>
std::vector<AlgebraViolation> validate(const CoeffAlgebra<S>& a);

/// Parsed family expression, e.g. "direct_sum(full_matrix(2),dual_numbers)".
struct FamilySpec {
  std::string family;
  std::vector<int> params;
  std::vector<FamilySpec> parts;
  std::string path;  // custom_file only

  std::string to_string() const;
};

FamilySpec parse_family(std::string_view text);

/// Builds and validates a family member; throws AlgebraError on bad
/// parameters or a custom file that fails validation.
template <ExactScalar S>
CoeffAlgebra<S> build_family(const FamilySpec& spec, const FieldConfig& field);

template <ExactScalar S>
CoeffAlgebra<S> build_family(std::string_view spec, const FieldConfig& field) {
  return build_family<S>(parse_family(spec), field);
}

/// span{b_i b_j - b_j b_i}
template <ExactScalar S>
Subspace<S> commutator_subspace(const CoeffAlgebra<S>& a);

/// Ω¹ of a commutative algebra as A⊗A modulo a⊗bc - ab⊗c - ac⊗b; the symbol
/// b_i⊗b_j stands for b_i db_j.
template <ExactScalar S>
struct KahlerDifferentials {
  std::size_t dim = 0;
  Subspace<S> relations;                          // inside A⊗A
  std::vector<SparseVector<S>> representatives;   // canonical complement basis
};

template <ExactScalar S>
KahlerDifferentials<S> kahler_differentials(const CoeffAlgebra<S>& a);

/// JSON document {name, char, dim, labels, unit, mul}, scalars as "p/q" strings.
template <ExactScalar S>
nlohmann::ordered_json to_json(const CoeffAlgebra<S>& a);

/// Reads the JSON form without validating. Rational documents may be read
/// over F_p (reduction mod p); any other characteristic mismatch is an error.
template <ExactScalar S>
CoeffAlgebra<S> algebra_from_json(const nlohmann::json& doc, const FieldConfig& field);

template <ExactScalar S>
CoeffAlgebra<S> load_algebra(const std::filesystem::path& path, const FieldConfig& field);

/// Structure constants of A in the new basis c_i = sum_k P(k, i) b_k.
/// P must be invertible.
template <ExactScalar S>
CoeffAlgebra<S> change_basis(const CoeffAlgebra<S>& a, const ExactMatrix<S>& p, std::string name);

/// Reproducible random algebra of dimension <= max_dim: a small family or
/// matrix-unit subalgebra, scrambled by a unimodular change of basis.
template <ExactScalar S>
CoeffAlgebra<S> random_algebra(const FieldConfig& field, std::uint64_t seed, std::size_t max_dim);

CoeffAlgebra<ModP> reduce_mod(const CoeffAlgebra<Rational>& a, std::uint32_t p);

}  // namespace uce
