#include "uce/coeff_algebra.hpp"

#include "uce/tensor.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <utility>

namespace uce {

using nlohmann::json;
using nlohmann::ordered_json;

template <ExactScalar S>
CoeffAlgebra<S>::CoeffAlgebra(std::string name, FieldConfig field, std::vector<std::string> labels,
                              SparseVector<S> unit, std::vector<SparseVector<S>> products)
    : name_(std::move(name)), field_(field), labels_(std::move(labels)), unit_(std::move(unit)),
      products_(std::move(products)) {
  const std::size_t d = labels_.size();
  if (d == 0) throw AlgebraError("algebra must have positive dimension");
  if (products_.size() != d * d) throw AlgebraError("multiplication table must have dim^2 entries");
  auto check = [&](const SparseVector<S>& v) {
    if (!v.empty() && v.max_index() >= d) throw AlgebraError("coordinate vector longer than dim");
    for (const auto& e : v)
      if (!in_domain(e.second, field_)) throw AlgebraError("scalar outside " + field_.name());
  };
  check(unit_);
  for (const auto& p : products_) check(p);
}

template <ExactScalar S>
SparseVector<S> CoeffAlgebra<S>::multiply(const SparseVector<S>& a, const SparseVector<S>& b) const {
  LinearCombination<S> acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) acc.add(S(x * y), product(i, j));
  return std::move(acc).build();
}

template <ExactScalar S>
bool CoeffAlgebra<S>::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (!(product(i, j) == product(j, i))) return false;
  return true;
}

template <ExactScalar S>
std::string CoeffAlgebra<S>::format(const SparseVector<S>& a) const {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, x] : a) {
    std::string c = to_string(x);
    if (!first) out += " + ";
    first = false;
    if (c == "1")
      out += labels_.at(k);
    else
      out += c + "*" + labels_.at(k);
  }
  return out;
}

std::string AlgebraViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::associativity:
      os << "associativity fails on basis triple (" << i << ", " << j << ", " << k << ")";
      break;
    case Kind::left_unit:
      os << "1 * b_" << i << " != b_" << i;
      break;
    case Kind::right_unit:
      os << "b_" << i << " * 1 != b_" << i;
      break;
  }
  return os.str();
}

template <ExactScalar S>
std::vector<AlgebraViolation> validate(const CoeffAlgebra<S>& a) {
  std::vector<AlgebraViolation> out;
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const auto lhs = a.multiply(a.product(i, j), a.basis(k));
        const auto rhs = a.multiply(a.basis(i), a.product(j, k));
        if (!(lhs == rhs)) out.push_back({AlgebraViolation::Kind::associativity, i, j, k});
      }
  for (std::size_t i = 0; i < d; ++i) {
    if (!(a.multiply(a.unit(), a.basis(i)) == a.basis(i))) out.push_back({AlgebraViolation::Kind::left_unit, i});
    if (!(a.multiply(a.basis(i), a.unit()) == a.basis(i))) out.push_back({AlgebraViolation::Kind::right_unit, i});
  }
  return out;
}

// ---------------------------------------------------------------- families

std::string FamilySpec::to_string() const {
  if (family == "custom_file") return "custom_file(" + path + ")";
  if (params.empty() && parts.empty()) return family;
  std::string out = family + "(";
  bool first = true;
  for (const int p : params) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(p);
  }
  for (const auto& s : parts) {
    if (!first) out += ",";
    first = false;
    out += s.to_string();
  }
  return out + ")";
}

namespace {

class FamilyParser {
 public:
  explicit FamilyParser(std::string_view text) : text_(text) {}

  FamilySpec parse() {
    FamilySpec s = spec();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("cannot parse family '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  FamilySpec spec() {
    skip_space();
    FamilySpec s;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    s.family = std::string(text_.substr(start, pos_ - start));
    if (s.family.empty()) fail("expected a family name");
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') return s;
    ++pos_;
    if (s.family == "custom_file") {
      int depth = 1;
      const std::size_t p0 = pos_;
      while (pos_ < text_.size()) {
        if (text_[pos_] == '(') ++depth;
        if (text_[pos_] == ')' && --depth == 0) break;
        ++pos_;
      }
      if (pos_ >= text_.size()) fail("unbalanced parentheses");
      s.path = std::string(text_.substr(p0, pos_ - p0));
      ++pos_;
      return s;
    }
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
        const std::size_t p0 = pos_;
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        s.params.push_back(std::stoi(std::string(text_.substr(p0, pos_ - p0))));
      } else {
        s.parts.push_back(spec());
      }
      skip_space();
      if (pos_ >= text_.size()) fail("unbalanced parentheses");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      fail("unexpected character");
    }
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

template <ExactScalar S>
SparseVector<S> unit_vec(std::size_t i, const FieldConfig& f) {
  return SparseVector<S>::unit(static_cast<std::uint32_t>(i), make_scalar<S>(1, f));
}

std::string power_label(const std::string& var, std::size_t e) {
  if (e == 0) return "1";
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

template <ExactScalar S>
CoeffAlgebra<S> monomial_algebra(std::string name, const FieldConfig& f, std::size_t k, const std::string& var,
                                 bool cyclic) {
  std::vector<std::string> labels;
  for (std::size_t e = 0; e < k; ++e) labels.push_back(power_label(var, e));
  std::vector<SparseVector<S>> mul(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (cyclic)
        mul[i * k + j] = unit_vec<S>((i + j) % k, f);
      else if (i + j < k)
        mul[i * k + j] = unit_vec<S>(i + j, f);
    }
  return CoeffAlgebra<S>(std::move(name), f, std::move(labels), unit_vec<S>(0, f), std::move(mul));
}

/// Subalgebra of M_k(K) spanned by the matrix units E_ij for the listed
/// positions (0-based); the list must contain the diagonal and be closed
/// under multiplication.
template <ExactScalar S>
CoeffAlgebra<S> matrix_unit_algebra(std::string name, const FieldConfig& f, std::size_t k,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& units) {
  const std::size_t d = units.size();
  auto find = [&](std::size_t i, std::size_t j) -> std::int64_t {
    for (std::size_t t = 0; t < d; ++t)
      if (units[t] == std::make_pair(i, j)) return static_cast<std::int64_t>(t);
    return -1;
  };
  std::vector<std::string> labels;
  for (const auto& [i, j] : units) labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<SparseVector<S>> mul(d * d);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t) {
      if (units[s].second != units[t].first) continue;
      const auto target = find(units[s].first, units[t].second);
      if (target < 0) throw AlgebraError("matrix-unit set is not closed under multiplication");
      mul[s * d + t] = unit_vec<S>(static_cast<std::size_t>(target), f);
    }
  LinearCombination<S> unit;
  for (std::size_t i = 0; i < k; ++i) {
    const auto t = find(i, i);
    if (t < 0) throw AlgebraError("matrix-unit set must contain the diagonal");
    unit.add(static_cast<std::uint32_t>(t), make_scalar<S>(1, f));
  }
  return CoeffAlgebra<S>(std::move(name), f, std::move(labels), std::move(unit).build(), std::move(mul));
}

template <ExactScalar S>
CoeffAlgebra<S> direct_sum(std::string name, const FieldConfig& f, const std::vector<CoeffAlgebra<S>>& parts) {
  std::size_t d = 0;
  for (const auto& p : parts) d += p.dim();
  std::vector<std::string> labels;
  std::vector<SparseVector<S>> mul(d * d);
  LinearCombination<S> unit;
  std::size_t offset = 0;
  for (std::size_t s = 0; s < parts.size(); ++s) {
    const auto& p = parts[s];
    const auto shift = static_cast<std::uint32_t>(offset);
    auto moved = [shift](std::uint32_t k) { return k + shift; };
    for (const auto& l : p.labels()) labels.push_back(l + "@" + std::to_string(s));
    for (std::size_t i = 0; i < p.dim(); ++i)
      for (std::size_t j = 0; j < p.dim(); ++j) mul[(offset + i) * d + offset + j] = p.product(i, j).remapped(moved);
    unit.add(p.unit().remapped(moved));
    offset += p.dim();
  }
  return CoeffAlgebra<S>(std::move(name), f, std::move(labels), std::move(unit).build(), std::move(mul));
}

template <ExactScalar S>
CoeffAlgebra<S> build_unchecked(const FamilySpec& spec, const FieldConfig& f) {
  const std::string name = spec.to_string();
  auto need_params = [&](std::size_t n) {
    if (spec.params.size() != n || !spec.parts.empty())
      throw AlgebraError(spec.family + " expects " + std::to_string(n) + " integer parameter(s)");
  };
  auto positive = [&](int k) {
    if (k < 1) throw AlgebraError(spec.family + " needs a positive parameter");
    return static_cast<std::size_t>(k);
  };
  if (spec.family == "ground_field") {
    need_params(0);
    return monomial_algebra<S>(name, f, 1, "x", false);
  }
  if (spec.family == "dual_numbers") {
    need_params(0);
    return monomial_algebra<S>(name, f, 2, "e", false);
  }
  if (spec.family == "truncated_poly") {
    need_params(1);
    return monomial_algebra<S>(name, f, positive(spec.params[0]), "x", false);
  }
  if (spec.family == "cyclic_group_algebra") {
    need_params(1);
    return monomial_algebra<S>(name, f, positive(spec.params[0]), "g", true);
  }
  if (spec.family == "full_matrix") {
    need_params(1);
    const std::size_t k = positive(spec.params[0]);
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) units.emplace_back(i, j);
    return matrix_unit_algebra<S>(name, f, k, units);
  }
  if (spec.family == "direct_sum") {
    if (spec.parts.empty() || !spec.params.empty()) throw AlgebraError("direct_sum expects one or more algebra specs");
    std::vector<CoeffAlgebra<S>> parts;
    for (const auto& p : spec.parts) parts.push_back(build_family<S>(p, f));
    return direct_sum<S>(name, f, parts);
  }
  if (spec.family == "custom_file") {
    if (spec.path.empty()) throw AlgebraError("custom_file needs a path");
    return load_algebra<S>(spec.path, f);
  }
  throw AlgebraError("unknown algebra family '" + spec.family + "'");
}

}  // namespace

FamilySpec parse_family(std::string_view text) { return FamilyParser(text).parse(); }

template <ExactScalar S>
CoeffAlgebra<S> build_family(const FamilySpec& spec, const FieldConfig& field) {
  try {
    validate(field);
  } catch (const FieldError& e) {
    throw AlgebraError(e.what());
  }
  CoeffAlgebra<S> a = build_unchecked<S>(spec, field);
  const auto violations = validate(a);
  if (!violations.empty())
    throw AlgebraError("algebra " + a.name() + " fails validation: " + violations.front().describe() + " (" +
                       std::to_string(violations.size()) + " violation(s))");
  return a;
}

template <ExactScalar S>
Subspace<S> commutator_subspace(const CoeffAlgebra<S>& a) {
  std::vector<SparseVector<S>> gens;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) gens.push_back(a.product(i, j) - a.product(j, i));
  return span(a.dim(), a.field(), gens);
}

template <ExactScalar S>
KahlerDifferentials<S> kahler_differentials(const CoeffAlgebra<S>& a) {
  if (!a.is_commutative()) throw AlgebraError("Kähler differentials need a commutative algebra");
  const std::size_t d = a.dim();
  const TensorShape pairs(d, 2);
  auto sym = [&](std::uint32_t x, std::uint32_t y) { return pairs.index(std::array{x, y}); };
  Echelon<S> rel(pairs.size(), a.field());
  // a⊗d(bc) - ab⊗dc - ac⊗db over basis triples
  for (std::uint32_t x = 0; x < d; ++x)
    for (std::uint32_t y = 0; y < d; ++y)
      for (std::uint32_t z = 0; z < d; ++z) {
        LinearCombination<S> r;
        for (const auto& [k, c] : a.product(y, z)) r.add(sym(x, k), c);
        for (const auto& [k, c] : a.product(x, y)) r.add(sym(k, z), -c);
        for (const auto& [k, c] : a.product(x, z)) r.add(sym(k, y), -c);
        rel.insert(std::move(r).build());
      }
  KahlerDifferentials<S> out;
  out.relations = rel.subspace();
  out.dim = pairs.size() - out.relations.dim();
  const auto q = quotient(pairs.size(), out.relations);
  for (const auto c : q.representatives) out.representatives.push_back(SparseVector<S>::unit(c, a.one()));
  return out;
}

// -------------------------------------------------------------------- JSON

template <ExactScalar S>
ordered_json to_json(const CoeffAlgebra<S>& a) {
  const std::size_t d = a.dim();
  auto dense = [&](const SparseVector<S>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& x : to_dense(v, d)) arr.push_back(to_string(x));
    return arr;
  };
  ordered_json doc;
  doc["name"] = a.name();
  doc["char"] = a.field().characteristic;
  doc["dim"] = d;
  doc["labels"] = a.labels();
  doc["unit"] = dense(a.unit());
  ordered_json mul = ordered_json::array();
  for (std::size_t i = 0; i < d; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < d; ++j) row.push_back(dense(a.product(i, j)));
    mul.push_back(std::move(row));
  }
  doc["mul"] = std::move(mul);
  return doc;
}

template <ExactScalar S>
CoeffAlgebra<S> algebra_from_json(const json& doc, const FieldConfig& field) {
  try {
    const auto ch = doc.at("char").get<std::uint32_t>();
    if (ch != field.characteristic && ch != 0)
      throw AlgebraError("algebra document has characteristic " + std::to_string(ch) + " but " + field.name() +
                         " was requested");
    const auto d = doc.at("dim").get<std::size_t>();
    auto labels = doc.at("labels").get<std::vector<std::string>>();
    if (labels.size() != d) throw AlgebraError("labels length differs from dim");
    auto vec = [&](const json& arr) {
      if (!arr.is_array() || arr.size() != d) throw AlgebraError("coordinate vector of wrong length");
      std::vector<typename SparseVector<S>::Entry> e;
      for (std::size_t k = 0; k < d; ++k) e.emplace_back(static_cast<std::uint32_t>(k), parse_scalar<S>(arr[k].get<std::string>(), field));
      return SparseVector<S>(std::move(e));
    };
    const auto& mul = doc.at("mul");
    if (!mul.is_array() || mul.size() != d) throw AlgebraError("mul must be a dim x dim x dim array");
    std::vector<SparseVector<S>> products;
    for (std::size_t i = 0; i < d; ++i) {
      if (!mul[i].is_array() || mul[i].size() != d) throw AlgebraError("mul must be a dim x dim x dim array");
      for (std::size_t j = 0; j < d; ++j) products.push_back(vec(mul[i][j]));
    }
    return CoeffAlgebra<S>(doc.at("name").get<std::string>(), field, std::move(labels), vec(doc.at("unit")),
                           std::move(products));
  } catch (const json::exception& e) {
    throw AlgebraError(std::string("malformed algebra document: ") + e.what());
  } catch (const FieldError& e) {
    throw AlgebraError(std::string("bad scalar in algebra document: ") + e.what());
  }
}

template <ExactScalar S>
CoeffAlgebra<S> load_algebra(const std::filesystem::path& path, const FieldConfig& field) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("cannot open algebra file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw AlgebraError("cannot parse " + path.string() + ": " + e.what());
  }
  return algebra_from_json<S>(doc, field);
}

// ------------------------------------------------------- bases and samples

template <ExactScalar S>
CoeffAlgebra<S> change_basis(const CoeffAlgebra<S>& a, const ExactMatrix<S>& p, std::string name) {
  const std::size_t d = a.dim();
  if (p.rows() != d || p.cols() != d) throw AlgebraError("change of basis must be dim x dim");
  LinearSolver<S> solver(p);
  if (solver.rank() != d) throw AlgebraError("change of basis is singular");
  auto in_new = [&](const SparseVector<S>& v) { return *solver.solve(v); };
  std::vector<SparseVector<S>> mul(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mul[i * d + j] = in_new(a.multiply(p.column(i), p.column(j)));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("c" + std::to_string(i + 1));
  return CoeffAlgebra<S>(std::move(name), a.field(), std::move(labels), in_new(a.unit()), std::move(mul));
}

template <ExactScalar S>
CoeffAlgebra<S> random_algebra(const FieldConfig& field, std::uint64_t seed, std::size_t max_dim) {
  std::mt19937_64 rng(seed);
  struct Candidate {
    std::size_t dim;
    std::function<CoeffAlgebra<S>()> make;
  };
  using Units = std::vector<std::pair<std::size_t, std::size_t>>;
  auto fam = [&](const char* text) { return [text, &field] { return build_family<S>(text, field); }; };
  const std::vector<Candidate> pool = {
      {1, fam("ground_field")},
      {2, fam("dual_numbers")},
      {2, fam("cyclic_group_algebra(2)")},
      {2, fam("direct_sum(ground_field,ground_field)")},
      {3, fam("truncated_poly(3)")},
      {3, fam("cyclic_group_algebra(3)")},
      {3, fam("direct_sum(ground_field,dual_numbers)")},
      {3, [&field] { return matrix_unit_algebra<S>("upper_triangular(2)", field, 2, Units{{0, 0}, {0, 1}, {1, 1}}); }},
      {4, fam("truncated_poly(4)")},
      {4, fam("full_matrix(2)")},
      {4, fam("cyclic_group_algebra(4)")},
      {4, fam("direct_sum(dual_numbers,dual_numbers)")},
      {4, [&field] {
         return matrix_unit_algebra<S>("matrix_units(3)", field, 3, Units{{0, 0}, {0, 1}, {1, 1}, {2, 2}});
       }},
  };
  std::vector<const Candidate*> fits;
  for (const auto& c : pool)
    if (c.dim <= max_dim) fits.push_back(&c);
  if (fits.empty()) throw AlgebraError("random_algebra needs max_dim >= 1");
  const CoeffAlgebra<S> base = fits[rng() % fits.size()]->make();
  const std::size_t d = base.dim();

  // unimodular P = L * U with small random off-diagonal entries
  auto small = [&] { return make_scalar<S>(static_cast<std::int64_t>(rng() % 5) - 2, field); };
  ExactMatrix<S> lower = ExactMatrix<S>::identity(d, field);
  ExactMatrix<S> upper = ExactMatrix<S>::identity(d, field);
  for (std::size_t j = 0; j < d; ++j) {
    LinearCombination<S> l;
    LinearCombination<S> u;
    l.add(static_cast<std::uint32_t>(j), base.one());
    u.add(static_cast<std::uint32_t>(j), base.one());
    for (std::size_t i = j + 1; i < d; ++i) l.add(static_cast<std::uint32_t>(i), small());
    for (std::size_t i = 0; i < j; ++i) u.add(static_cast<std::uint32_t>(i), small());
    lower.set_column(j, std::move(l).build());
    upper.set_column(j, std::move(u).build());
  }
  auto scrambled = change_basis(base, lower.compose(upper), "random[" + std::to_string(seed) + "]:" + base.name());
  if (!validate(scrambled).empty()) throw std::logic_error("change of basis broke the algebra axioms");
  return scrambled;
}

CoeffAlgebra<ModP> reduce_mod(const CoeffAlgebra<Rational>& a, std::uint32_t p) {
  FieldConfig f = FieldConfig::prime(p, a.field().override_guard);
  auto red = [p](const SparseVector<Rational>& v) {
    std::vector<SparseVector<ModP>::Entry> e;
    for (const auto& [k, x] : v) e.emplace_back(k, reduce_mod(x, p));
    return SparseVector<ModP>(std::move(e));
  };
  std::vector<SparseVector<ModP>> mul;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) mul.push_back(red(a.product(i, j)));
  return CoeffAlgebra<ModP>(a.name(), f, a.labels(), red(a.unit()), std::move(mul));
}

#define UCE_INSTANTIATE_ALGEBRA(S)                                                                         \
  template class CoeffAlgebra<S>;                                                                          \
  template std::vector<AlgebraViolation> validate<S>(const CoeffAlgebra<S>&);                              \
  template CoeffAlgebra<S> build_family<S>(const FamilySpec&, const FieldConfig&);                         \
  template Subspace<S> commutator_subspace<S>(const CoeffAlgebra<S>&);                                     \
  template KahlerDifferentials<S> kahler_differentials<S>(const CoeffAlgebra<S>&);                         \
  template ordered_json to_json<S>(const CoeffAlgebra<S>&);                                                \
  template CoeffAlgebra<S> algebra_from_json<S>(const json&, const FieldConfig&);                          \
  template CoeffAlgebra<S> load_algebra<S>(const std::filesystem::path&, const FieldConfig&);              \
  template CoeffAlgebra<S> change_basis<S>(const CoeffAlgebra<S>&, const ExactMatrix<S>&, std::string);    \
  template CoeffAlgebra<S> random_algebra<S>(const FieldConfig&, std::uint64_t, std::size_t);

UCE_INSTANTIATE_ALGEBRA(Rational)
UCE_INSTANTIATE_ALGEBRA(ModP)

}  // namespace uce
