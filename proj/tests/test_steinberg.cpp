#include "uce/hochschild.hpp"
#include "uce/steinberg.hpp"

#include <doctest.h>

#include <random>

using namespace uce;

namespace {

const FieldConfig kQ = FieldConfig::rationals();

SteinbergRealization<Rational> realize(std::size_t m, std::size_t n, const char* spec) {
  return steinberg_realize(m, n, build_family<Rational>(spec, kQ));
}

SparseVector<Rational> b(const SteinbergRealization<Rational>& st, std::size_t k) { return st.coeff().basis(k); }

}  // namespace

TEST_CASE("generators and basic brackets over the dual numbers") {
  const auto st = realize(2, 1, "dual_numbers");
  const auto& a = st.coeff();
  CHECK(st.direct_sum());
  CHECK(st.total().dim() == 17);
  CHECK(st.ker_psi().dim() == 1);
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (std::size_t y = 0; y < a.dim(); ++y) {
      const auto bx = b(st, x), by = b(st, y);
      // [v_12(a), v_23(b)] = v_13(ab)
      CHECK(st.total().bracket(st.v(0, 1, bx), st.v(1, 2, by)) == st.v(0, 2, a.multiply(bx, by)));
      CHECK(st.psi().apply(st.v(0, 2, bx)) == st.e(0, 2, bx));
    }
  CHECK(st.canonical_k(0, 1) == 2);
  CHECK(st.canonical_k(1, 2) == 0);
}

TEST_CASE("commuting generators for four indices") {
  const auto st = realize(3, 1, "ground_field");
  const auto one = b(st, 0);
  CHECK(st.total().bracket(st.v(0, 1, one), st.v(2, 3, one)).empty());
  CHECK(st.total().bracket(st.v(0, 1, one), st.v(0, 2, one)).empty());
  // k-independence with two auxiliary indices available
  CHECK(st.v_via(0, 1, 2, one) == st.v_via(0, 1, 3, one));
}

TEST_CASE("relation sweep") {
  for (const char* spec : {"ground_field", "dual_numbers", "truncated_poly(3)", "full_matrix(2)"}) {
    CAPTURE(spec);
    const auto st = realize(2, 1, spec);
    const auto rel = verify_steinberg_relations(st);
    CHECK(rel.checked > 0);
    CHECK_MESSAGE(rel.ok(), rel.summary());
    const auto hid = h_identities(st);
    CHECK_MESSAGE(hid.ok(), hid.summary());
  }
}

TEST_CASE("relation report bookkeeping") {
  RelationReport r;
  r.limit = 2;
  for (int i = 0; i < 5; ++i) r.record(i % 2 == 0, "case " + std::to_string(i));
  CHECK(r.checked == 5);
  CHECK(r.violations == 2);
  CHECK(r.messages.size() == 2);
  CHECK_FALSE(r.ok());
  RelationReport s;
  s.record(false, "other");
  r.merge(s);
  CHECK(r.violations == 3);
  CHECK(r.messages.size() == 2);
  CHECK(r.summary().rfind("3/6 hold", 0) == 0);
}

TEST_CASE("P + H + Q decomposition") {
  const auto st = realize(2, 1, "dual_numbers");
  const auto& a = st.coeff();
  const auto one = b(st, 0), eps = b(st, 1);
  CHECK(st.P().dim() + st.H().dim() + st.Q().dim() == st.total().dim());

  const auto x = st.v(0, 1, eps);
  auto d = phq_decompose(st, x);
  CHECK(d.p == x);
  CHECK(d.h.empty());
  CHECK(d.q.empty());

  const auto hx = st.h(0, 2, one, eps);
  d = phq_decompose(st, hx + st.v(2, 0, one));
  CHECK(d.p.empty());
  CHECK(d.h == hx);
  CHECK(d.q == st.v(2, 0, one));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    SparseVector<Rational> p, h, q;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const auto c = [&] { return Rational(static_cast<long>(rng() % 7) - 3); };
      p.axpy(c(), st.v(0, 1, b(st, k)));
      p.axpy(c(), st.v(1, 2, b(st, k)));
      q.axpy(c(), st.v(2, 1, b(st, k)));
      h.axpy(c(), st.h(0, 1, b(st, k), one));
      h.axpy(c(), st.h(1, 2, eps, b(st, k)));
    }
    d = phq_decompose(st, p + h + q);
    CHECK(d.p == p);
    CHECK(d.h == h);
    CHECK(d.q == q);
  }
}

TEST_CASE("theta over the dual numbers") {
  const auto st = realize(2, 1, "dual_numbers");
  const auto th = build_theta(st);
  REQUIRE(th.well_defined);
  CHECK(th.witness.empty());
  const auto hh1 = hochschild_homology(st.coeff(), 1);
  CHECK(th.target.dim == hh1.dim + commutator_subspace(st.coeff()).dim());
  CHECK(map_subspace(th.map, st.ker_psi()).dim() == hh1.dim);

  // θ(E_12(a), E_21(b)) is the class of a⊗b
  const auto& gl = st.gl();
  const auto& sl = st.sl();
  const auto eps = b(st, 1);
  const auto x = sl.to_sub(gl.E(0, 1, eps));
  const auto y = sl.to_sub(gl.E(1, 0, b(st, 0)));
  const auto ab = SparseVector<Rational>::unit(1 * 2 + 0, Rational(1));
  CHECK(theta(st, th, x, y) == th.target.projector.apply(ab));
}

TEST_CASE("adjoint diagnostic") {
  for (const char* spec : {"ground_field", "dual_numbers"}) {
    const auto st = realize(2, 1, spec);
    const auto r = diagonal_diagnostic(st);
    CHECK(r.applicable);
    CHECK(r.invariant);
    CHECK(r.involution);
    CHECK(r.module_dim == 4 * st.coeff().dim());
    CHECK(r.plus_dim + r.minus_dim == r.module_dim);
    CHECK(r.ok());
  }
  CHECK_FALSE(diagonal_diagnostic(realize(3, 1, "ground_field")).applicable);
}

TEST_CASE("construction errors") {
  const auto k = build_family<Rational>("ground_field", kQ);
  CHECK_THROWS_AS(steinberg_realize(1, 1, k), SuperAlgebraError);
  CHECK_THROWS_AS(steinberg_realize(2, 0, k), SuperAlgebraError);
  const auto k3 = build_family<ModP>("ground_field", FieldConfig::prime(3, true));
  CHECK_THROWS(build_family<ModP>("ground_field", FieldConfig::prime(3)));
  CHECK_NOTHROW(steinberg_realize(2, 1, k3, {}, false));
}
