#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace trm::crn {

/// Product of variables raised to positive integer powers, kept sorted by
/// variable index. The empty monomial is the constant 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::pair<std::size_t, unsigned>> powers);
  static Monomial variable(std::size_t index);

  unsigned degree() const noexcept;
  unsigned power_of(std::size_t index) const noexcept;
  bool contains(std::size_t index) const noexcept { return power_of(index) > 0; }
  double evaluate(std::span<const double> x) const;
  const std::vector<std::pair<std::size_t, unsigned>>& powers() const noexcept { return powers_; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<std::size_t, unsigned>> powers_;
};

/// Sparse real polynomial; zero coefficients are dropped.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(double c);
  static Polynomial variable(std::size_t index);

  void add_term(const Monomial& m, double coefficient);
  double evaluate(std::span<const double> x) const;
  unsigned degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Monomial, double>& terms() const noexcept { return terms_; }

  /// Coefficients with |c| <= tol are removed.
  void prune(double tol);

  Polynomial& operator+=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double c, Polynomial p);

  /// Replace every variable j by images[j].
  Polynomial compose(std::span<const Polynomial> images) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::map<Monomial, double> terms_;
};

}  // namespace trm::crn
