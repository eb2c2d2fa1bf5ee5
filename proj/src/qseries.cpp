#include "zpkit/qseries.hpp"

#include <algorithm>

#include "zpkit/error.hpp"

namespace zpkit::modpoly {

QSeries QSeries::constant(const mpz_class& c, std::int64_t top) {
  std::vector<mpz_class> v(static_cast<std::size_t>(std::max<std::int64_t>(top + 1, 1)), 0);
  v[0] = c;
  return {0, std::move(v)};
}

mpz_class QSeries::coefficient(std::int64_t e) const {
  if (e < valuation_) return 0;
  if (e > top()) fail(Errc::InsufficientPrecision, "q-series coefficient beyond known precision");
  return coeffs_[static_cast<std::size_t>(e - valuation_)];
}

QSeries QSeries::truncated(std::int64_t t) const {
  if (t >= top()) return *this;
  if (t < valuation_) return {valuation_, {}};
  return {valuation_, std::vector<mpz_class>(coeffs_.begin(), coeffs_.begin() + (t - valuation_ + 1))};
}

QSeries QSeries::substitute_power(unsigned k) const {
  // Known through k * top(): the gaps between multiples of k are exact zeros.
  std::vector<mpz_class> out((coeffs_.empty() ? 0 : (coeffs_.size() - 1) * k + 1), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * k] = coeffs_[i];
  return {valuation_ * static_cast<std::int64_t>(k), std::move(out)};
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

QSeries QSeries::extract_multiples(unsigned k) const {
  const std::int64_t kk = k;
  const std::int64_t lo = -floor_div(-valuation_, kk);  // ceil(valuation / k)
  const std::int64_t hi = floor_div(top(), kk);
  std::vector<mpz_class> out;
  for (std::int64_t n = lo; n <= hi; ++n) out.push_back(coeffs_[static_cast<std::size_t>(n * kk - valuation_)]);
  return {lo, std::move(out)};
}

QSeries QSeries::operator+(const QSeries& o) const {
  const std::int64_t v = std::min(valuation_, o.valuation_);
  const std::int64_t t = std::min(top(), o.top());
  if (t < v) return {v, {}};
  std::vector<mpz_class> out(static_cast<std::size_t>(t - v + 1), 0);
  for (std::int64_t e = v; e <= t; ++e) out[e - v] = coefficient(e) + o.coefficient(e);
  return {v, std::move(out)};
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + o * mpz_class(-1); }

QSeries QSeries::operator*(const QSeries& o) const {
  const std::int64_t v = valuation_ + o.valuation_;
  const std::int64_t t = std::min(top() + o.valuation_, o.top() + valuation_);
  if (t < v) return {v, {}};
  const std::size_t n = static_cast<std::size_t>(t - v + 1);
  std::vector<mpz_class> out(n, 0);
  for (std::size_t i = 0; i < std::min(n, coeffs_.size()); ++i) {
    if (coeffs_[i] == 0) continue;
    const std::size_t lim = std::min(n - i, o.coeffs_.size());
    for (std::size_t j = 0; j < lim; ++j) mpz_addmul(out[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), o.coeffs_[j].get_mpz_t());
  }
  return {v, std::move(out)};
}

QSeries QSeries::operator*(const mpz_class& c) const {
  std::vector<mpz_class> out = coeffs_;
  for (auto& x : out) x *= c;
  return {valuation_, std::move(out)};
}

QSeries QSeries::divexact(const mpz_class& c) const {
  std::vector<mpz_class> out = coeffs_;
  for (auto& x : out) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) fail(Errc::InvalidArgument, "q-series coefficient not divisible");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  return {valuation_, std::move(out)};
}

QSeries QSeries::inverse() const {
  if (coeffs_.empty() || (coeffs_[0] != 1 && coeffs_[0] != -1))
    fail(Errc::InvalidArgument, "q-series inverse needs a unit leading coefficient");
  const std::size_t n = coeffs_.size();
  const mpz_class& u = coeffs_[0];  // u == u^-1
  std::vector<mpz_class> inv(n, 0);
  inv[0] = u;
  for (std::size_t k = 1; k < n; ++k) {
    mpz_class acc = 0;
    for (std::size_t i = 1; i <= k; ++i) mpz_addmul(acc.get_mpz_t(), coeffs_[i].get_mpz_t(), inv[k - i].get_mpz_t());
    inv[k] = -acc * u;
  }
  return {-valuation_, std::move(inv)};
}

QSeries QSeries::pow(unsigned n) const {
  if (n == 0) return constant(1, top() - valuation_);
  QSeries result = *this;
  for (unsigned i = 1; i < n; ++i) result = result * *this;
  return result;
}

namespace {

std::vector<mpz_class> divisor_power_sums(std::int64_t top, unsigned k) {
  std::vector<mpz_class> sigma(static_cast<std::size_t>(top + 1), 0);
  for (std::int64_t d = 1; d <= top; ++d) {
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k);
    for (std::int64_t m = d; m <= top; m += d) sigma[m] += dk;
  }
  return sigma;
}

}  // namespace

QSeries eisenstein_e4(std::int64_t top) {
  auto s = divisor_power_sums(top, 3);
  s[0] = 1;
  for (std::int64_t n = 1; n <= top; ++n) s[n] *= 240;
  return {0, std::move(s)};
}

QSeries eisenstein_e6(std::int64_t top) {
  auto s = divisor_power_sums(top, 5);
  s[0] = 1;
  for (std::int64_t n = 1; n <= top; ++n) s[n] *= -504;
  return {0, std::move(s)};
}

QSeries discriminant_series(std::int64_t top) {
  // prod (1 - q^n) by Euler's pentagonal number theorem, then the 24th power.
  const std::int64_t t = top - 1;
  std::vector<mpz_class> eta(static_cast<std::size_t>(std::max<std::int64_t>(t + 1, 1)), 0);
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t g1 = k * (3 * k - 1) / 2;
    const std::int64_t g2 = k * (3 * k + 1) / 2;
    if (g1 > t) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    eta[g1] += sign;
    if (k > 0 && g2 <= t) eta[g2] += sign;
  }
  QSeries e(0, std::move(eta));
  QSeries e2 = e * e, e4 = e2 * e2, e8 = e4 * e4, e16 = e8 * e8;
  QSeries e24 = e16 * e8;
  return {1, e24.coefficients()};
}

QSeries j_q_expansion(std::size_t precision) {
  if (precision < 2) fail(Errc::InvalidArgument, "j expansion needs precision >= 2");
  const std::int64_t top = static_cast<std::int64_t>(precision) - 2;
  // 1/Delta starts at q^-1, so Delta is needed through q^(top + 2).
  QSeries e4 = eisenstein_e4(top + 1);
  QSeries e4cubed = e4 * e4 * e4;
  QSeries delta = discriminant_series(top + 2);
  return (e4cubed * delta.inverse()).truncated(top);
}

}  // namespace zpkit::modpoly
