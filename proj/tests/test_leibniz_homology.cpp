#include "uce/leibniz_homology.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace uce;

namespace {

const FieldConfig kQ = FieldConfig::rationals();

SuperAlgebra<Rational> abelian(std::size_t d, std::uint8_t parity) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("x" + std::to_string(i));
  return SuperAlgebra<Rational>("ab", kQ, labels, std::vector<std::uint8_t>(d, parity),
                                std::vector<SparseVector<Rational>>(d * d));
}

SparseVector<Rational> unit(std::uint32_t i) { return SparseVector<Rational>::unit(i, Rational(1)); }

// e, f with [e,f] = f and every other bracket zero: left Leibniz, not Lie
SuperAlgebra<Rational> left_leibniz_pair() {
  std::vector<SparseVector<Rational>> br(4);
  br[0 * 2 + 1] = unit(1);
  return SuperAlgebra<Rational>("LL2", kQ, {"e", "f"}, {0, 0}, br);
}

SubAlgebra<Rational> sl(std::size_t m, std::size_t n, const char* spec) {
  return build_sl(GeneralLinear<Rational>(m, n, build_family<Rational>(spec, kQ)));
}

// x⊗y in the pair basis
SparseVector<Rational> pair(std::size_t dim, const SparseVector<Rational>& x, const SparseVector<Rational>& y) {
  LinearCombination<Rational> acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) acc.add(static_cast<std::uint32_t>(i * dim + j), a * b);
  return std::move(acc).build();
}

}  // namespace

TEST_CASE("abelian algebras") {
  const auto l = abelian(3, 0);
  CHECK(leibniz_boundary_super(l, 2).is_zero_matrix());
  CHECK(leibniz_boundary_super(l, 3).is_zero_matrix());
  CHECK(leibniz_h2(l).dim == 9);
  CHECK(lie_h2(l).homology.dim == 3);
  // odd generators: the super-alternating square is symmetric
  CHECK(lie_h2(abelian(2, 1)).homology.dim == 3);
  CHECK_THROWS_AS(uce_leibniz(l), SuperAlgebraError);
}

TEST_CASE("purely even d_3") {
  const auto l = sl(2, 0, "dual_numbers").algebra;
  const std::size_t n = l.dim();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        LinearCombination<Rational> expect;
        expect.add(pair(n, l.bracket(x, y), l.basis(z)));
        expect.add(Rational(-1), pair(n, l.basis(x), l.bracket(y, z)));
        expect.add(pair(n, l.basis(y), l.bracket(x, z)));
        CHECK(leibniz_d3(l, x, y, z) == std::move(expect).build());
      }
}

TEST_CASE("the left convention is the one with d_2 d_3 = 0 on non-Lie algebras") {
  const auto l = left_leibniz_pair();
  CHECK(check_identities(l).is_leibniz());
  CHECK_FALSE(check_identities(l).is_lie());
  CHECK_NOTHROW(leibniz_boundary_super(l, 3));
  // [x,y]⊗z − [x,z]⊗y − x⊗[y,z] at (e, e, f)
  LinearCombination<Rational> right;
  right.add(pair(2, l.bracket(0, 0), unit(1)));
  right.add(Rational(-1), pair(2, l.bracket(0, 1), unit(0)));
  right.add(Rational(-1), pair(2, unit(0), l.bracket(0, 1)));
  const auto col = std::move(right).build();
  CHECK_FALSE(leibniz_boundary_super(l, 2).apply(col).empty());
  CHECK(leibniz_boundary_super(l, 2).apply(leibniz_d3(l, 0, 0, 1)).empty());
}

TEST_CASE("d_2 d_3 = 0 on sl(2,1,Q)") {
  const auto l = sl(2, 1, "ground_field").algebra;
  const auto d2 = leibniz_boundary_super(l, 2);
  const auto d3 = leibniz_boundary_super(l, 3);
  CHECK(d3.cols() == 512);
  CHECK(d2.compose(d3).is_zero_matrix());
}

TEST_CASE("weight blocks do not change the d_3 image") {
  for (const char* spec : {"ground_field", "dual_numbers"}) {
    const auto l = sl(2, 1, spec).algebra;
    REQUIRE(l.has_weights());
    std::vector<SparseVector<Rational>> br;
    for (std::size_t i = 0; i < l.dim(); ++i)
      for (std::size_t j = 0; j < l.dim(); ++j) br.push_back(l.bracket(i, j));
    const SuperAlgebra<Rational> plain("plain", kQ, l.labels(), l.parities(), br);
    const auto full = image(leibniz_boundary_super(l, 3));
    CHECK(leibniz_d3_image(l) == full);
    CHECK(leibniz_d3_image(plain) == full);
  }
}

TEST_CASE("HL_2 and the universal central extension") {
  const auto k = sl(2, 1, "ground_field").algebra;
  CHECK(leibniz_h2(k).dim == 0);
  const auto uk = uce_leibniz(k);
  CHECK(uk.ext.kernel.dim() == 0);
  CHECK(uk.ext.total.dim() == k.dim());

  const auto d = sl(2, 1, "dual_numbers").algebra;
  CHECK(leibniz_h2(d).dim == 1);
  const auto u = uce_leibniz(d);
  CHECK(u.ext.kernel.dim() == 1);
  CHECK(u.ext.total.dim() == 17);
  CHECK(check_extension(u.ext).ok());
  CHECK(is_perfect(u.ext.total));
  CHECK(check_identities(u.ext.total).is_leibniz());
  // the bracket on classes is the class of d_2 u ⊗ d_2 u'
  for (std::size_t r = 0; r < u.ext.total.dim(); ++r)
    for (std::size_t s = 0; s < u.ext.total.dim(); ++s)
      CHECK(u.ext.total.bracket(r, s) == u.class_of(u.ext.proj.column(r), u.ext.proj.column(s)));
}

TEST_CASE("Lie H_2 and the map from HL_2") {
  const auto d = sl(2, 1, "dual_numbers").algebra;
  const auto img = leibniz_d3_image(d);
  const auto h2 = lie_h2(d, img);
  const auto hl2 = leibniz_h2(d, img);
  CHECK(h2.homology.dim == 0);
  CHECK(hl2_to_h2_rank(hl2, h2) == h2.homology.dim);

  const auto k = sl(2, 2, "ground_field").algebra;
  const auto kimg = leibniz_d3_image(k);
  const auto kh2 = lie_h2(k, kimg);
  CHECK(kh2.homology.dim == 2);
  CHECK(hl2_to_h2_rank(leibniz_h2(k, kimg), kh2) == 2);
  CHECK_THROWS_AS(lie_h2(left_leibniz_pair()), SuperAlgebraError);
}

TEST_CASE("column cap") {
  const auto d = sl(2, 1, "dual_numbers").algebra;
  CHECK_THROWS_AS(leibniz_d3_image(d, LeibnizOptions{100}), ResourceCapError);
  CHECK_THROWS_AS(leibniz_boundary_super(d, 3, LeibnizOptions{4095}), ResourceCapError);
  CHECK_NOTHROW(leibniz_d3_image(d, LeibnizOptions{4096}));
  ::setenv("UCE_LAB_MAX_COLS", "123", 1);
  CHECK(default_max_cols() == 123);
  ::unsetenv("UCE_LAB_MAX_COLS");
  CHECK(default_max_cols() == kDefaultMaxCols);
}
