#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uce {

/// Raised for invalid scalar domains, mixed moduli or malformed scalar text.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// Exact scalar domain: characteristic 0 (the rationals) or a prime p.
///
/// Characteristics 2 and 3 are refused unless `override_guard` is set; the
/// matrix constructions below need 2 and 3 to be invertible.
struct FieldConfig {
  std::uint32_t characteristic = 0;
  bool override_guard = false;

  static FieldConfig rationals() { return {}; }
  static FieldConfig prime(std::uint32_t p, bool override_guard = false) {
    return {p, override_guard};
  }

  bool is_rational() const { return characteristic == 0; }
  std::string name() const;

  /// Two configs describe the same domain when the characteristics agree.
  bool same_domain(const FieldConfig& other) const {
    return characteristic == other.characteristic;
  }
};

bool is_prime(std::uint64_t n);

/// Throws FieldError if the characteristic is neither 0 nor prime, or if it is
/// 2 or 3 without the override flag.
void validate(const FieldConfig& field);

/// Element of the prime field F_p. The modulus travels with the value so that
/// arithmetic needs no global state; a default-constructed ModP is a zero that
/// adopts the modulus of whatever it is combined with.
class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o);
  ModP operator-() const;

  ModP inverse() const;

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }

 private:
  std::uint32_t join(const ModP& o) const;

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

using Rational = mpq_class;

template <class S>
concept ExactScalar = std::same_as<S, Rational> || std::same_as<S, ModP>;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const ModP& x) { return x.value() == 0; }

std::string to_string(const Rational& x);
std::string to_string(const ModP& x);

/// The integer `v` viewed in the field.
template <ExactScalar S>
S make_scalar(std::int64_t v, const FieldConfig& field);

/// Parses "p/q" or "p" into the field. Over F_p the denominator must be
/// invertible.
template <ExactScalar S>
S parse_scalar(std::string_view text, const FieldConfig& field);

/// Image of a rational under Z_(p) -> F_p.
ModP reduce_mod(const Rational& x, std::uint32_t p);

/// Returns true when the scalar lives in the given domain (always true over Q).
bool in_domain(const Rational& x, const FieldConfig& field);
bool in_domain(const ModP& x, const FieldConfig& field);

}  // namespace uce
