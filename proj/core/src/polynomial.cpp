#include "trm/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace trm::crn {

Monomial::Monomial(std::vector<std::pair<std::size_t, unsigned>> powers) {
  std::sort(powers.begin(), powers.end());
  for (const auto& [var, p] : powers) {
    if (p == 0) continue;
    if (!powers_.empty() && powers_.back().first == var) {
      powers_.back().second += p;
    } else {
      powers_.emplace_back(var, p);
    }
  }
}

Monomial Monomial::variable(std::size_t index) { return Monomial({{index, 1u}}); }

unsigned Monomial::degree() const noexcept {
  unsigned d = 0;
  for (const auto& [var, p] : powers_) d += p;
  return d;
}

unsigned Monomial::power_of(std::size_t index) const noexcept {
  for (const auto& [var, p] : powers_) {
    if (var == index) return p;
  }
  return 0;
}

double Monomial::evaluate(std::span<const double> x) const {
  double value = 1.0;
  for (const auto& [var, p] : powers_) {
    if (var >= x.size()) throw std::out_of_range("monomial variable out of range");
    for (unsigned k = 0; k < p; ++k) value *= x[var];
  }
  return value;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  auto powers = a.powers_;
  powers.insert(powers.end(), b.powers_.begin(), b.powers_.end());
  return Monomial(std::move(powers));
}

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t index) {
  Polynomial p;
  p.add_term(Monomial::variable(index), 1.0);
  return p;
}

void Polynomial::add_term(const Monomial& m, double coefficient) {
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::evaluate(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) sum += c * m.evaluate(x);
  return sum;
}

unsigned Polynomial::degree() const noexcept {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void Polynomial::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial operator*(double c, Polynomial p) {
  if (c == 0.0) return {};
  for (auto& [m, coef] : p.terms_) coef *= c;
  return p;
}

Polynomial Polynomial::compose(std::span<const Polynomial> images) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term = constant(c);
    for (const auto& [var, p] : m.powers()) {
      if (var >= images.size()) throw std::out_of_range("no image for variable");
      for (unsigned k = 0; k < p; ++k) term = term * images[var];
    }
    out += term;
  }
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(c));
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    out += buf;
    for (const auto& [var, p] : m.powers()) {
      out += "*" + (var < names.size() ? names[var] : "x" + std::to_string(var));
      if (p > 1) out += "^" + std::to_string(p);
    }
  }
  return out;
}

}  // namespace trm::crn
