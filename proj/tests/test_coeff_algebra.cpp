#include "uce/coeff_algebra.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace uce;

namespace {
const FieldConfig kQ = FieldConfig::rationals();
}

TEST_CASE("family dimensions and validation") {
  CHECK(build_family<Rational>("ground_field", kQ).dim() == 1);
  CHECK(build_family<Rational>("dual_numbers", kQ).dim() == 2);
  CHECK(build_family<Rational>("truncated_poly(3)", kQ).dim() == 3);
  CHECK(build_family<Rational>("cyclic_group_algebra(3)", kQ).dim() == 3);
  auto m2 = build_family<Rational>("full_matrix(2)", kQ);
  CHECK(m2.dim() == 4);
  CHECK_FALSE(m2.is_commutative());
  auto ds = build_family<Rational>("direct_sum(full_matrix(2),dual_numbers)", kQ);
  CHECK(ds.dim() == 6);
  CHECK(validate(ds).empty());
  CHECK(parse_family(" direct_sum( full_matrix(2) , dual_numbers ) ").to_string() ==
        "direct_sum(full_matrix(2),dual_numbers)");
  CHECK_THROWS_AS(build_family<Rational>("truncated_poly(0)", kQ), AlgebraError);
  CHECK_THROWS_AS(build_family<Rational>("nonsense", kQ), AlgebraError);
  CHECK_THROWS_AS(parse_family("full_matrix(2"), AlgebraError);
}

TEST_CASE("commutator subspaces") {
  CHECK(commutator_subspace(build_family<Rational>("dual_numbers", kQ)).dim() == 0);
  // [M_2, M_2] = sl_2
  CHECK(commutator_subspace(build_family<Rational>("full_matrix(2)", kQ)).dim() == 3);
}

TEST_CASE("Kähler differentials") {
  // Ω¹ of K[e]/e² is free of rank 1 over the algebra modulo 2e de = 0: dim 1 (de)
  CHECK(kahler_differentials(build_family<Rational>("dual_numbers", kQ)).dim == 1);
  // K[x]/x³: Ω¹ spanned by dx, x dx (x² dx = d(x³)/3 = 0)
  CHECK(kahler_differentials(build_family<Rational>("truncated_poly(3)", kQ)).dim == 2);
  // group algebras are étale in characteristic 0
  CHECK(kahler_differentials(build_family<Rational>("cyclic_group_algebra(3)", kQ)).dim == 0);
  CHECK(kahler_differentials(build_family<Rational>("ground_field", kQ)).dim == 0);
  CHECK_THROWS_AS(kahler_differentials(build_family<Rational>("full_matrix(2)", kQ)), AlgebraError);
}

TEST_CASE("json round trip and broken custom files") {
  auto a = build_family<Rational>("direct_sum(ground_field,truncated_poly(2))", kQ);
  auto doc = to_json(a);
  auto b = algebra_from_json<Rational>(nlohmann::json::parse(doc.dump()), kQ);
  CHECK(to_json(b) == doc);
  auto red = algebra_from_json<ModP>(nlohmann::json::parse(doc.dump()), FieldConfig::prime(5));
  CHECK(validate(red).empty());

  auto bad = nlohmann::json::parse(doc.dump());
  bad["mul"][1][1] = std::vector<std::string>{"1", "0", "0"};  // x*x = 1@0 breaks associativity
  const auto path = std::filesystem::temp_directory_path() / "uce_bad_algebra.json";
  std::ofstream(path) << bad.dump();
  CHECK_THROWS_AS(build_family<Rational>("custom_file(" + path.string() + ")", kQ), AlgebraError);
  auto loaded = load_algebra<Rational>(path, kQ);
  CHECK_FALSE(validate(loaded).empty());
  CHECK_THROWS_AS(load_algebra<Rational>("/nonexistent/alg.json", kQ), AlgebraError);
}

TEST_CASE("random algebras are reproducible and valid") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = random_algebra<Rational>(kQ, seed, 4);
    CHECK(a.dim() <= 4);
    CHECK(validate(a).empty());
    CHECK(to_json(random_algebra<Rational>(kQ, seed, 4)) == to_json(a));
  }
}
