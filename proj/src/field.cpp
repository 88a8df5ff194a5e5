#include "uce/field.hpp"

#include <charconv>

namespace uce {

std::string FieldConfig::name() const {
  return characteristic == 0 ? std::string("Q") : "F_" + std::to_string(characteristic);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void validate(const FieldConfig& field) {
  const auto p = field.characteristic;
  if (p != 0 && !is_prime(p))
    throw FieldError("characteristic " + std::to_string(p) + " is neither 0 nor prime");
  if (p >= (1u << 31)) throw FieldError("characteristic must be below 2^31");
  if ((p == 2 || p == 3) && !field.override_guard)
    throw FieldError("characteristic " + std::to_string(p) +
                     " is refused without the override flag");
}

ModP::ModP(std::int64_t value, std::uint32_t modulus) : p_(modulus) {
  if (modulus == 0) throw FieldError("ModP requires a nonzero modulus");
  auto r = value % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  v_ = static_cast<std::uint32_t>(r);
}

std::uint32_t ModP::join(const ModP& o) const {
  if (p_ != 0 && o.p_ != 0 && p_ != o.p_)
    throw FieldError("arithmetic between F_" + std::to_string(p_) + " and F_" +
                     std::to_string(o.p_));
  return p_ != 0 ? p_ : o.p_;
}

ModP& ModP::operator+=(const ModP& o) {
  p_ = join(o);
  if (p_ == 0) return *this;
  std::uint64_t s = std::uint64_t{v_} + o.v_;
  if (s >= p_) s -= p_;
  v_ = static_cast<std::uint32_t>(s);
  return *this;
}

ModP& ModP::operator-=(const ModP& o) {
  p_ = join(o);
  if (p_ == 0) return *this;
  v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t{v_} + p_ - o.v_);
  return *this;
}

ModP& ModP::operator*=(const ModP& o) {
  p_ = join(o);
  if (p_ == 0) return *this;
  v_ = static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p_);
  return *this;
}

ModP ModP::inverse() const {
  if (v_ == 0) throw FieldError("division by zero in F_p");
  // extended Euclid on (v, p)
  std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return ModP(x0, p_);
}

ModP& ModP::operator/=(const ModP& o) {
  p_ = join(o);
  return *this *= o.inverse();
}

ModP ModP::operator-() const {
  ModP r;
  r.p_ = p_;
  r.v_ = v_ == 0 ? 0 : p_ - v_;
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const ModP& x) { return std::to_string(x.value()); }

template <>
Rational make_scalar<Rational>(std::int64_t v, const FieldConfig& field) {
  if (!field.is_rational()) throw FieldError("rational scalar requested over " + field.name());
  return Rational(static_cast<long>(v));
}

template <>
ModP make_scalar<ModP>(std::int64_t v, const FieldConfig& field) {
  if (field.is_rational()) throw FieldError("modular scalar requested over Q");
  return ModP(v, field.characteristic);
}

namespace {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw FieldError("empty scalar");
  Rational q;
  if (q.set_str(std::string(text), 10) != 0) throw FieldError("malformed scalar '" + std::string(text) + "'");
  if (sgn(q.get_den()) == 0) throw FieldError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

ModP reduce_mod(const Rational& x, std::uint32_t p) {
  const mpz_class pz(static_cast<unsigned long>(p));
  const mpz_class num = ((x.get_num() % pz) + pz) % pz;
  const mpz_class den = ((x.get_den() % pz) + pz) % pz;
  if (den == 0)
    throw FieldError("denominator of " + x.get_str() + " vanishes mod " + std::to_string(p));
  return ModP(static_cast<std::int64_t>(num.get_ui()), p) /
         ModP(static_cast<std::int64_t>(den.get_ui()), p);
}

template <>
Rational parse_scalar<Rational>(std::string_view text, const FieldConfig& field) {
  if (!field.is_rational()) throw FieldError("rational scalar requested over " + field.name());
  return parse_rational(text);
}

template <>
ModP parse_scalar<ModP>(std::string_view text, const FieldConfig& field) {
  if (field.is_rational()) throw FieldError("modular scalar requested over Q");
  return reduce_mod(parse_rational(text), field.characteristic);
}

bool in_domain(const Rational&, const FieldConfig& field) { return field.is_rational(); }

bool in_domain(const ModP& x, const FieldConfig& field) {
  return !field.is_rational() && (x.modulus() == 0 || x.modulus() == field.characteristic);
}

}  // namespace uce
