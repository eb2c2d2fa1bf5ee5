#include "zpkit/heights.hpp"

#include <cmath>

#include "zpkit/error.hpp"
#include "zpkit/polyroots.hpp"

namespace zpkit::heights {

mpz_class height_argument(const mpq_class& q_in) {
  mpq_class q = q_in;
  q.canonicalize();
  if (q == 0) return 1;
  mpz_class n = abs(q.get_num());
  const mpz_class& d = q.get_den();
  return n > d ? n : d;
}

double log_abs(const mpz_class& n) {
  if (n == 0) fail(Errc::InvalidArgument, "log of zero");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double height_rational(const mpq_class& q) {
  mpz_class h = height_argument(q);
  return h == 1 ? 0.0 : log_abs(h);
}

AlgebraicNumber AlgebraicNumber::from_minimal_polynomial(upoly::ZPoly f) {
  f = upoly::primitive_part(f);
  if (upoly::degree(f) < 1) fail(Errc::InvalidArgument, "a minimal polynomial has degree >= 1");
  const auto verdict = upoly::check_irreducible(f);
  if (!verdict.irreducible) {
    fail(Errc::NotIrreducible, "polynomial " + upoly::to_string_high_to_low(f) + " is reducible over Q");
  }
  return AlgebraicNumber(std::move(f), verdict.certified);
}

HeightEstimate height_algebraic(const AlgebraicNumber& alpha, double eps) {
  const int d = alpha.degree();
  const auto& f = alpha.minimal_polynomial();
  if (d == 1) {
    // Exact: the root is -f0/f1 in lowest terms, M(f) = max(|f0|, |f1|).
    return {height_rational(mpq_class(-f[0], f[1])), 0.0};
  }
  const auto m = polyroots::log_mahler_measure(f, eps);
  return {m.log_measure / d, m.error_bound / d};
}

}  // namespace zpkit::heights
