#include "uce/verifier.hpp"

#include <doctest.h>

using namespace uce;

namespace {

const FieldConfig kQ = FieldConfig::rationals();

ExtensionReport run(std::size_t m, std::size_t n, const char* spec, VerifyOptions opts = {}) {
  opts.samples = 3;
  return verify_instance(m, n, build_family<Rational>(spec, kQ), opts);
}

}  // namespace

TEST_CASE("ground field and dual numbers") {
  const auto k = run(2, 1, "ground_field");
  CHECK(k.all_pass());
  CHECK(k.characteristic == 0);
  CHECK(k.ker_psi == 0);
  CHECK(k.hh1 == 0);
  CHECK(k.omega1 == std::optional<std::size_t>(0));
  CHECK(k.banners.empty());

  const auto d = run(2, 1, "dual_numbers");
  for (const auto& c : d.checks) CHECK_MESSAGE(c.pass, c.name << ": " << c.details);
  CHECK(d.ker_psi == 1);
  CHECK(d.hh1 == 1);
  CHECK(d.ker_phi == 0);
  CHECK(d.hc1 == 0);
  CHECK(d.ker_pi == 1);
  CHECK(d.im_B == 1);
  CHECK(d.seeds == sample_seeds(0, 3));
  REQUIRE(d.find("universality") != nullptr);
  CHECK(d.find("universality")->details.rfind("3/3 lifts", 0) == 0);
  CHECK(d.find("no such check") == nullptr);
}

TEST_CASE("noncommutative coefficients") {
  const auto r = run(2, 1, "full_matrix(2)");
  CHECK(r.all_pass());
  CHECK_FALSE(r.omega1.has_value());
  CHECK(r.find("hh1=omega1") == nullptr);
}

TEST_CASE("automatic switch to a prime field") {
  VerifyOptions o;
  o.max_cols = 100;
  const auto r = run(2, 1, "dual_numbers", o);
  CHECK(r.characteristic == kFallbackPrime);
  REQUIRE(r.banners.size() == 1);
  CHECK(r.banners[0] ==
        "probabilistic dimensions: dim sl = 16 exceeds the exact cap (16^3 > 100), computed over F_32003");
  CHECK(r.ker_psi == 1);
  CHECK(r.all_pass());
}

TEST_CASE("guard override banner") {
  const auto a = build_family<ModP>("ground_field", FieldConfig::prime(3, true));
  VerifyOptions o;
  o.samples = 1;
  const auto r = verify_instance(2, 1, a, o);
  REQUIRE_FALSE(r.banners.empty());
  CHECK(r.banners[0] == "hypothesis violated: m+n = 3 in characteristic 3");
  CHECK(r.characteristic == 3);
}

TEST_CASE("seeds") {
  CHECK(sample_seeds(5, 4).size() == 4);
  CHECK(sample_seeds(5, 4) == sample_seeds(5, 4));
  const auto four = sample_seeds(5, 4);
  CHECK(sample_seeds(5, 2) == std::vector<std::uint64_t>(four.begin(), four.begin() + 2));
  CHECK(sample_seeds(5, 4) != sample_seeds(6, 4));
}

TEST_CASE("JSON layout") {
  const auto r = run(2, 1, "ground_field");
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"m", "n", "algebra", "char", "ker_psi", "hh1", "ker_phi", "hc1", "ker_pi",
                                         "im_B", "omega1", "checks", "seeds", "banners"});
  CHECK(j["checks"].is_array());
  CHECK(j["checks"][0].contains("name"));
  CHECK(j["checks"][0].contains("pass"));
  CHECK(j["checks"][0].contains("details"));
  CHECK(to_json(r).dump() == to_json(run(2, 1, "ground_field")).dump());

  ExtensionReport empty;
  const auto e = nlohmann::json::parse(to_json(empty).dump());
  CHECK(e["checks"].is_array());
  CHECK(e["checks"].empty());
  CHECK(e["omega1"].is_null());

  const auto suite = to_json(std::vector<ExtensionReport>{r, empty});
  CHECK(suite.is_array());
  CHECK(suite.size() == 2);
  CHECK(to_text(std::vector<ExtensionReport>{r}).find("1/1 instances pass") != std::string::npos);
}

TEST_CASE("default suite") {
  const auto s = default_suite();
  CHECK(s.size() == 15);
  CHECK(s.front().m == 2);
  CHECK(s.front().family == "ground_field");
}
