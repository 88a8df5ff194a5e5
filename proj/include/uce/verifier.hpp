#pragma once

#include "uce/coeff_algebra.hpp"
#include "uce/leibniz_homology.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uce {

inline constexpr std::uint32_t kFallbackPrime = 32003;

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};

struct ExtensionReport {
  std::size_t m = 0;
  std::size_t n = 0;
  std::string algebra;
  std::uint32_t characteristic = 0;
  std::size_t ker_psi = 0;
  std::size_t hh1 = 0;
  std::size_t ker_phi = 0;
  std::size_t hc1 = 0;
  std::size_t ker_pi = 0;
  std::size_t im_B = 0;
  std::optional<std::size_t> omega1;  // commutative coefficients only
  std::vector<CheckResult> checks;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> banners;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
  void add(std::string name, bool pass, std::string details);
};

nlohmann::ordered_json to_json(const ExtensionReport& r);
std::string to_text(const ExtensionReport& r);

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 8;
  /// Cap on (dim sl)^3 for exact work over Q; larger instances move to F_32003.
  std::size_t max_cols = kDefaultMaxCols;
};

/// Seeds of the cocycle samples, derived from the run seed.
std::vector<std::uint64_t> sample_seeds(std::uint64_t seed, std::size_t count);

/// Assembles stl -> st -> sl with the Hochschild, cyclic and Connes oracles
/// over the field of `a` and records every comparison. Mathematical
/// mismatches become failed checks; the characteristic guard throws FieldError.
template <ExactScalar S>
ExtensionReport verify_theorems(std::size_t m, std::size_t n, const CoeffAlgebra<S>& a,
                                const VerifyOptions& opts = {});

/// Over Q, instances with (dim sl)^3 above the cap are reduced mod 32003 and
/// the report carries a "probabilistic dimensions" banner.
ExtensionReport verify_instance(std::size_t m, std::size_t n, const CoeffAlgebra<Rational>& a,
                                const VerifyOptions& opts = {});
ExtensionReport verify_instance(std::size_t m, std::size_t n, const CoeffAlgebra<ModP>& a,
                                const VerifyOptions& opts = {});

struct SuiteInstance {
  std::size_t m = 0;
  std::size_t n = 0;
  std::string family;
};

/// {(2,1),(3,1),(2,2)} × {ground_field, dual_numbers, truncated_poly(3),
/// cyclic_group_algebra(3), full_matrix(2)}
std::vector<SuiteInstance> default_suite();

std::vector<ExtensionReport> run_suite(const std::vector<SuiteInstance>& suite, const FieldConfig& field,
                                       const VerifyOptions& opts = {});

nlohmann::ordered_json to_json(const std::vector<ExtensionReport>& reports);
std::string to_text(const std::vector<ExtensionReport>& reports);

}  // namespace uce
