#include "bessel_lab/theta_operator.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

Rational rising_factorial(const Rational& ell, int q) {
  Rational r(1);
  for (int j = 0; j < q; ++j) r *= ell + Rational(j);
  return r;
}

ThetaOperator ThetaOperator::constant(const Rational& c) { return term(0, 0, c); }
ThetaOperator ThetaOperator::theta() { return term(0, 1, Rational(1)); }
ThetaOperator ThetaOperator::w_power(int p) { return term(p, 0, Rational(1)); }

ThetaOperator ThetaOperator::term(int p, int q, const Rational& c) {
  if (q < 0) throw DomainError("negative power of theta");
  ThetaOperator op;
  op.add(p, q, c);
  return op;
}

void ThetaOperator::add(int p, int q, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{p, q}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational ThetaOperator::coefficient(int p, int q) const {
  auto it = terms_.find(Key{p, q});
  return it == terms_.end() ? Rational(0) : it->second;
}

int ThetaOperator::min_order() const {
  if (terms_.empty()) throw DomainError("zero operator has no order");
  int m = INT_MAX;
  for (const auto& [key, c] : terms_) m = std::min(m, key.first + key.second);
  return m;
}

int ThetaOperator::max_order() const {
  if (terms_.empty()) throw DomainError("zero operator has no order");
  int m = INT_MIN;
  for (const auto& [key, c] : terms_) m = std::max(m, key.first + key.second);
  return m;
}

ThetaOperator ThetaOperator::component(int order) const {
  ThetaOperator out;
  for (const auto& [key, c] : terms_)
    if (key.first + key.second == order) out.terms_.emplace(key, c);
  return out;
}

Rational ThetaOperator::symbol(int order, const Rational& ell) const {
  Rational s;
  for (const auto& [key, c] : terms_)
    if (key.first + key.second == order) s += c * rising_factorial(ell, key.second);
  return s;
}

std::vector<std::pair<int, Rational>> ThetaOperator::apply_monomial(const Rational& ell) const {
  std::map<int, Rational> acc;
  for (const auto& [key, c] : terms_) {
    Rational v = c * rising_factorial(ell, key.second);
    if (!v.is_zero()) acc[key.first + key.second] += v;
  }
  std::vector<std::pair<int, Rational>> out;
  for (auto& [shift, v] : acc)
    if (!v.is_zero()) out.emplace_back(shift, v);
  return out;
}

RamifiedLaurentSeries ThetaOperator::apply(const RamifiedLaurentSeries& s) const {
  const int ram = s.ram();
  if (terms_.empty()) return RamifiedLaurentSeries(ram, INT_MAX / 4);
  RamifiedLaurentSeries out(ram, s.trunc() + ram * min_order());
  for (const auto& [n, c] : s.terms()) {
    for (const auto& [shift, v] : apply_monomial(Rational(n, ram))) {
      int idx = n + ram * shift;
      if (idx < out.trunc()) out.set(idx, out.coefficient(idx) + c * v);
    }
  }
  return out;
}

ThetaOperator& ThetaOperator::operator+=(const ThetaOperator& o) {
  for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
  return *this;
}

ThetaOperator& ThetaOperator::operator-=(const ThetaOperator& o) {
  for (const auto& [key, c] : o.terms_) add(key.first, key.second, -c);
  return *this;
}

ThetaOperator& ThetaOperator::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

ThetaOperator operator*(const ThetaOperator& a, const ThetaOperator& b) {
  ThetaOperator out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      // theta^qa w^pb, pushed into normal order one theta at a time.
      std::map<ThetaOperator::Key, Rational> cur{{{kb.first, 0}, Rational(1)}};
      for (int step = 0; step < ka.second; ++step) {
        std::map<ThetaOperator::Key, Rational> next;
        for (const auto& [k, c] : cur) {
          next[{k.first, k.second + 1}] += c;
          if (k.first != 0) next[{k.first + 1, k.second}] += c * Rational(k.first);
        }
        cur = std::move(next);
      }
      for (const auto& [k, c] : cur) out.add(k.first + ka.first, k.second + kb.second, ca * cb * c);
    }
  }
  return out;
}

std::string ThetaOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (key.first != 0) os << "*w^" << key.first;
    if (key.second != 0) os << "*theta^" << key.second;
  }
  return os.str();
}

}  // namespace bessel_lab
