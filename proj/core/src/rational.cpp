#include "bessel_lab/rational.hpp"

#include <nlohmann/json.hpp>

#include <ostream>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s, 10));
    return Rational(BigInt(s.substr(0, slash), 10), BigInt(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw DomainError("not a rational literal: '" + s + "'");
  }
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  return Rational(mpq_class(1 / q_));
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(mpq_class(n, d));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

void to_json(nlohmann::json& j, const Rational& r) { j = r.to_string(); }

void from_json(const nlohmann::json& j, Rational& r) {
  if (j.is_number_integer()) {
    r = Rational(j.get<long>());
  } else {
    r = Rational::parse(j.get<std::string>());
  }
}

}  // namespace bessel_lab

size_t std::hash<bessel_lab::Rational>::operator()(const bessel_lab::Rational& r) const noexcept {
  return std::hash<std::string>{}(r.to_string());
}
