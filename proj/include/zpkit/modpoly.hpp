#pragma once

// Classical modular polynomials Phi_N(X, Y).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace zpkit::modpoly {

/// Sparse symmetric bivariate integer polynomial, keyed by (deg_X, deg_Y).
class ModularPolynomial {
 public:
  using Coefficients = std::map<std::pair<int, int>, mpz_class>;

  ModularPolynomial(int level, Coefficients coefficients);

  int level() const { return level_; }
  const Coefficients& coefficients() const { return coeffs_; }
  /// Zero for absent bidegrees.
  mpz_class coefficient(int i, int j) const;
  int degree_x() const;
  int degree_y() const;
  bool is_symmetric() const;

  /// Exact value at rational arguments.
  mpq_class evaluate(const mpq_class& x, const mpq_class& y) const;
  /// Exact zero test, cheaper than evaluate(): works on the cleared numerator.
  bool vanishes_at(const mpq_class& x, const mpq_class& y) const;
  /// Phi(x, Y) as an integer polynomial in Y (denominators cleared, primitive).
  std::vector<mpz_class> specialize_x(const mpq_class& x) const;

  /// Golden-file text: one "i j c" line per nonzero coefficient, sorted by (i, j).
  std::string to_text() const;
  static ModularPolynomial from_text(int level, const std::string& text);

  bool operator==(const ModularPolynomial& o) const { return level_ == o.level_ && coeffs_ == o.coeffs_; }

 private:
  int level_;
  Coefficients coeffs_;
};

/// (l + 1)(l + 2) + 16 terms of the j expansion.
std::size_t default_precision(int level);

/// Phi_1 = X - Y, and Phi_l for prime l from the product of X - j over the
/// l + 1 index-l sublattices, with power sums read off the q-expansion.
/// Throws Errc::UnsupportedLevel for composite levels and levels above
/// `max_level`, Errc::InsufficientPrecision when `precision` terms cannot pin
/// down every coefficient with at least one verification term to spare.
ModularPolynomial compute_modular_polynomial(int level, std::size_t precision = 0, int max_level = 31);

/// Thread-safe memoized Phi_l for supported levels.
const ModularPolynomial& modular_polynomial(int level);

/// Phi_l == (X^l - Y)(X - Y^l) coefficientwise modulo l.
bool kronecker_check(const ModularPolynomial& phi);

/// Ceiling for memoized levels; levels {1} and primes up to it are supported.
constexpr int kDefaultMaxLevel = 13;
bool is_supported_level(int level, int max_level = kDefaultMaxLevel);
/// 1 and all primes <= min(bound, max_level), ascending.
std::vector<int> supported_levels(int bound, int max_level = kDefaultMaxLevel);

mpq_class eval_modpoly(int level, const mpq_class& x, const mpq_class& y);

/// Supported levels N <= bound with Phi_N(j1, j2) = 0, ascending.
std::vector<int> isogeny_degree_search(const mpq_class& j1, const mpq_class& j2, int bound);

}  // namespace zpkit::modpoly
