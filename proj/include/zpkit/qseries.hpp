#pragma once

// Truncated Laurent series in q with integer coefficients.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace zpkit::modpoly {

/// Coefficients of q^v .. q^(v + n - 1), where v = valuation() and n = size().
/// Every coefficient beyond the top exponent is unknown.
class QSeries {
 public:
  QSeries() = default;
  QSeries(std::int64_t valuation, std::vector<mpz_class> coefficients)
      : valuation_(valuation), coeffs_(std::move(coefficients)) {}

  /// Exact series known through exponent `top`.
  static QSeries constant(const mpz_class& c, std::int64_t top);

  std::int64_t valuation() const { return valuation_; }
  /// Highest exponent with a known coefficient.
  std::int64_t top() const { return valuation_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
  std::size_t precision() const { return coeffs_.size(); }
  /// Coefficient of q^e; zero below the valuation. e must not exceed top().
  mpz_class coefficient(std::int64_t e) const;
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }

  /// Drops known terms above `top`.
  QSeries truncated(std::int64_t top) const;
  /// f(q^k).
  QSeries substitute_power(unsigned k) const;
  /// Sum over n of a_{kn} q^n (the U_k operator).
  QSeries extract_multiples(unsigned k) const;

  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator*(const QSeries& o) const;
  QSeries operator*(const mpz_class& c) const;
  /// Exact division of every coefficient; throws if a coefficient is not divisible.
  QSeries divexact(const mpz_class& c) const;
  /// Multiplicative inverse; the leading coefficient must be +-1.
  QSeries inverse() const;
  QSeries pow(unsigned n) const;

 private:
  std::int64_t valuation_ = 0;
  std::vector<mpz_class> coeffs_;
};

/// Eisenstein series E4 = 1 + 240 sum sigma_3(n) q^n through q^top.
QSeries eisenstein_e4(std::int64_t top);
/// Eisenstein series E6 = 1 - 504 sum sigma_5(n) q^n through q^top.
QSeries eisenstein_e6(std::int64_t top);
/// Discriminant Delta = q prod (1 - q^n)^24 through q^top.
QSeries discriminant_series(std::int64_t top);

/// q^-1 + 744 + 196884 q + ..., as E4^3 / Delta, with `precision` terms
/// (exponents -1 .. precision - 2). precision >= 2.
QSeries j_q_expansion(std::size_t precision);

}  // namespace zpkit::modpoly
