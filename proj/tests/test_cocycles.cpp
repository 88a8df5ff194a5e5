#include "uce/cocycles.hpp"

#include <doctest.h>

#include <random>

using namespace uce;

namespace {

const FieldConfig kQ = FieldConfig::rationals();

SuperAlgebra<Rational> sl(std::size_t m, std::size_t n, const char* spec) {
  return build_sl(GeneralLinear<Rational>(m, n, build_family<Rational>(spec, kQ))).algebra;
}

}  // namespace

TEST_CASE("zero and coboundary cocycles") {
  const auto l = sl(2, 1, "ground_field");
  const auto z = zero_cocycle(l, 0);
  CHECK(z.target_dim == 0);
  CHECK(z.values.size() == l.dim() * l.dim());
  CHECK(std::all_of(z.values.begin(), z.values.end(), [](const auto& v) { return v.empty(); }));
  CHECK(sample_cocycle(l, 0, 3).values == z.values);

  std::mt19937_64 rng(4);
  ExactMatrix<Rational> f(2, l.dim(), kQ);
  for (std::size_t j = 0; j < l.dim(); ++j) {
    SparseVector<Rational> col;
    col.axpy(Rational(static_cast<long>(rng() % 5) - 2), SparseVector<Rational>::unit(0, Rational(1)));
    col.axpy(Rational(static_cast<long>(rng() % 5) - 2), SparseVector<Rational>::unit(1, Rational(1)));
    f.set_column(j, col);
  }
  const auto c = coboundary(l, f);
  CHECK_FALSE(cocycle_violation(l, c).has_value());
  CHECK(c.apply(l.basis(0), l.basis(1)) == f.apply(l.bracket(0, 1)));
}

TEST_CASE("sampling is deterministic and yields cocycles") {
  const auto l = sl(2, 1, "dual_numbers");
  const auto space = cocycle_space(l);
  CHECK(space.classes.dim == space.d3_image.ambient_dim() - space.d3_image.dim());
  CHECK_FALSE(space.even_coordinates.empty());
  const auto a = sample_cocycle(l, space, 2, 17);
  const auto b = sample_cocycle(l, space, 2, 17);
  const auto c = sample_cocycle(l, space, 2, 18);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK_FALSE(cocycle_violation(l, a).has_value());
  CHECK_FALSE(cocycle_violation(l, c).has_value());
  // a cocycle kills the boundaries
  for (const auto& v : space.d3_image.basis()) {
    SparseVector<Rational> acc;
    for (const auto& [k, x] : v) acc.axpy(x, a.values[k]);
    CHECK(acc.empty());
  }
}

TEST_CASE("extensions from cocycles") {
  const auto l = sl(2, 1, "ground_field");
  const auto c = sample_cocycle(l, 2, 9);
  const auto e = cocycle_extension(l, c);
  CHECK(e.total.dim() == l.dim() + 2);
  CHECK(e.kernel.dim() == 2);
  CHECK(check_extension(e).ok());
  CHECK(check_identities(e.total).is_leibniz());
  CHECK(e.total.labels().back() == "z2");

  auto bad = zero_cocycle(l, 1);
  bad.values[0 * l.dim() + 1] = SparseVector<Rational>::unit(0, Rational(1));
  REQUIRE(cocycle_violation(l, bad).has_value());
  CHECK_THROWS_AS(cocycle_extension(l, bad), SuperAlgebraError);
}

TEST_CASE("lifts out of the universal extension") {
  const auto l = sl(2, 1, "dual_numbers");
  const auto u = uce_leibniz(l).ext;
  LiftSolver<Rational> solver(u);
  CHECK(solver.homogeneous_dim() == 0);

  SUBCASE("identity") {
    const auto r = solver.solve(u);
    REQUIRE(r.ok());
    CHECK(*r.rho == ExactMatrix<Rational>::identity(u.total.dim(), kQ));
  }
  SUBCASE("split extension") {
    const auto w = cocycle_extension(l, zero_cocycle(l, 1));
    const auto r = solver.solve(w);
    REQUIRE(r.ok());
    for (std::size_t j = 0; j < u.total.dim(); ++j) CHECK(r.rho->column(j) == u.proj.column(j));
  }
  SUBCASE("sampled extensions") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto w = cocycle_extension(l, sample_cocycle(l, 1 + seed % 2, seed));
      const auto r = find_lift(u, w);
      CHECK_MESSAGE(r.ok(), r.failure);
      CHECK(r.verified);
      CHECK(w.proj.compose(*r.rho) == u.proj);
    }
  }
}

TEST_CASE("a non-perfect source has no unique lift") {
  const auto l = sl(2, 1, "ground_field");
  const auto split = cocycle_extension(l, zero_cocycle(l, 1));
  LiftSolver<Rational> solver(split);
  CHECK(solver.homogeneous_dim() == 1);
  const auto r = solver.solve(split);
  CHECK_FALSE(r.ok());
}
