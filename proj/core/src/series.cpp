#include "bessel_lab/series.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

void check_ram(int ram) {
  if (ram != 1 && ram != 2) throw DomainError("ramification must be 1 or 2");
}

// Brings two series to a common ramification.
std::pair<RamifiedLaurentSeries, RamifiedLaurentSeries> align(const RamifiedLaurentSeries& a,
                                                              const RamifiedLaurentSeries& b) {
  int r = std::max(a.ram(), b.ram());
  return {a.with_ram(r), b.with_ram(r)};
}

}  // namespace

RamifiedLaurentSeries::RamifiedLaurentSeries(int ram, int trunc) : ram_(ram), trunc_(trunc) { check_ram(ram); }

RamifiedLaurentSeries RamifiedLaurentSeries::monomial(int index, const Rational& c, int ram, int trunc) {
  RamifiedLaurentSeries s(ram, trunc);
  if (index < trunc) s.set(index, c);
  return s;
}

Rational RamifiedLaurentSeries::coefficient(int index) const {
  if (index >= trunc_) {
    throw TruncationError("coefficient " + std::to_string(index) + " is beyond truncation " +
                          std::to_string(trunc_));
  }
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational RamifiedLaurentSeries::coefficient_at(const Rational& exponent) const {
  Rational scaled = exponent * Rational(ram_);
  if (!scaled.is_integer()) return Rational(0);
  return coefficient(static_cast<int>(scaled.num().get_si()));
}

void RamifiedLaurentSeries::set(int index, const Rational& c) {
  if (index >= trunc_) throw TruncationError("cannot set a coefficient beyond truncation");
  if (c.is_zero()) {
    coeffs_.erase(index);
  } else {
    coeffs_[index] = c;
  }
}

int RamifiedLaurentSeries::valuation() const { return coeffs_.empty() ? trunc_ : coeffs_.begin()->first; }

RamifiedLaurentSeries RamifiedLaurentSeries::with_ram(int ram) const {
  check_ram(ram);
  if (ram == ram_) return *this;
  if (ram < ram_) {
    RamifiedLaurentSeries out(ram, (trunc_ + 1) / 2);
    for (const auto& [n, c] : coeffs_) {
      if (n % 2 != 0) throw DomainError("series has half-integral exponents");
      if (n / 2 < out.trunc_) out.coeffs_[n / 2] = c;
    }
    return out;
  }
  RamifiedLaurentSeries out(2, 2 * trunc_);
  for (const auto& [n, c] : coeffs_) out.coeffs_[2 * n] = c;
  return out;
}

RamifiedLaurentSeries RamifiedLaurentSeries::truncated(int trunc) const {
  RamifiedLaurentSeries out(ram_, std::min(trunc, trunc_));
  for (const auto& [n, c] : coeffs_)
    if (n < out.trunc_) out.coeffs_[n] = c;
  return out;
}

void RamifiedLaurentSeries::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first >= trunc_ || it->second.is_zero()) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
}

RamifiedLaurentSeries& RamifiedLaurentSeries::operator+=(const RamifiedLaurentSeries& o) {
  auto [a, b] = align(*this, o);
  a.trunc_ = std::min(a.trunc_, b.trunc_);
  for (const auto& [n, c] : b.coeffs_) a.coeffs_[n] += c;
  a.prune();
  return *this = std::move(a);
}

RamifiedLaurentSeries& RamifiedLaurentSeries::operator-=(const RamifiedLaurentSeries& o) {
  return *this += o * Rational(-1);
}

RamifiedLaurentSeries& RamifiedLaurentSeries::operator*=(const Rational& c) {
  for (auto& [n, v] : coeffs_) v *= c;
  prune();
  return *this;
}

RamifiedLaurentSeries operator*(const RamifiedLaurentSeries& x, const RamifiedLaurentSeries& y) {
  auto [a, b] = align(x, y);
  // Unknown terms of one factor first reach the product at trunc + valuation of the other.
  RamifiedLaurentSeries out(a.ram(), std::min(a.trunc() + b.valuation(), b.trunc() + a.valuation()));
  for (const auto& [n, c] : a.terms())
    for (const auto& [m, d] : b.terms())
      if (n + m < out.trunc_) out.coeffs_[n + m] += c * d;
  out.prune();
  return out;
}

RamifiedLaurentSeries RamifiedLaurentSeries::pow(unsigned e) const {
  RamifiedLaurentSeries out = monomial(0, Rational(1), ram_, trunc_ - valuation());
  out.trunc_ = std::max(out.trunc_, 1);
  if (e == 0) return out;
  out = *this;
  for (unsigned i = 1; i < e; ++i) out = out * *this;
  return out;
}

RamifiedLaurentSeries RamifiedLaurentSeries::shifted(int shift) const {
  RamifiedLaurentSeries out(ram_, trunc_ + shift);
  for (const auto& [n, c] : coeffs_) out.coeffs_[n + shift] = c;
  return out;
}

bool operator==(const RamifiedLaurentSeries& a, const RamifiedLaurentSeries& b) {
  return a.ram_ == b.ram_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
}

std::string RamifiedLaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    Rational e(n, ram_);
    if (!e.is_zero()) os << "*w^" << (e.is_integer() ? e.to_string() : "(" + e.to_string() + ")");
  }
  if (first) os << "0";
  Rational t(trunc_, ram_);
  os << " + O(w^" << (t.is_integer() ? t.to_string() : "(" + t.to_string() + ")") << ")";
  return os.str();
}

void to_json(nlohmann::json& j, const RamifiedLaurentSeries& s) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [n, c] : s.terms()) coeffs[std::to_string(n)] = c.to_string();
  j = {{"ram", s.ram()}, {"trunc", s.trunc()}, {"coefficients", coeffs}};
}

}  // namespace bessel_lab
