#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles/j_oracle.hpp"
#include "oracles/resultant_oracle.hpp"
#include "zpkit/arith.hpp"
#include "zpkit/curve.hpp"
#include "zpkit/error.hpp"
#include "zpkit/modpoly.hpp"
#include "zpkit/polyroots.hpp"
#include "zpkit/qseries.hpp"

using namespace zpkit;

namespace {

mpq_class random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 300);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_SUITE("modpoly") {
  TEST_CASE("j expansion agrees with the E6 route") {
    const auto j = modpoly::j_q_expansion(40);
    const auto truth = oracle::j_coefficients(40);
    CHECK(j.valuation() == -1);
    for (int k = 0; k < 40; ++k) CHECK(j.coefficient(k - 1) == truth[k]);
    CHECK(modpoly::j_q_expansion(2).coefficient(0) == 744);
    CHECK(modpoly::j_q_expansion(3).coefficient(1) == 196884);
    CHECK(modpoly::j_q_expansion(4).coefficient(2) == 21493760);
    CHECK_THROWS_AS(modpoly::j_q_expansion(4).coefficient(5), Error);
  }

  TEST_CASE("level one and small levels") {
    const auto& phi1 = modpoly::modular_polynomial(1);
    CHECK(phi1.coefficients().size() == 2);
    CHECK(phi1.coefficient(1, 0) == 1);
    CHECK(phi1.coefficient(0, 1) == -1);
    CHECK(modpoly::eval_modpoly(1, 5, 5) == 0);
    CHECK(modpoly::eval_modpoly(1, 0, 1728) == -1728);

    const auto& phi2 = modpoly::modular_polynomial(2);
    CHECK(phi2.coefficient(3, 3) == 0);
    CHECK(phi2.coefficient(2, 2) == -1);
    CHECK(phi2.coefficient(3, 0) == 1);
    CHECK(phi2.coefficient(1, 0) == mpz_class("8748000000"));
    CHECK(phi2.coefficient(0, 0) == mpz_class("-157464000000000"));
  }

  TEST_CASE("agreement with the resultant oracle") {
    for (int l : {2, 3}) {
      const auto truth = l == 2 ? oracle::phi2() : oracle::phi3();
      REQUIRE_FALSE(truth.empty());
      const auto& phi = modpoly::modular_polynomial(l);
      CHECK(phi.coefficients().size() == truth.size());
      for (const auto& [k, c] : truth) CHECK(phi.coefficient(k.first, k.second) == c);
    }
  }

  TEST_CASE("structure of every computed level") {
    for (int l : modpoly::supported_levels(13)) {
      if (l == 1) continue;
      const auto& phi = modpoly::modular_polynomial(l);
      CAPTURE(l);
      CHECK(phi.is_symmetric());
      CHECK(phi.degree_x() == l + 1);
      CHECK(phi.degree_y() == l + 1);
      CHECK(phi.coefficient(l + 1, 0) == 1);
      CHECK(modpoly::kronecker_check(phi));
      CHECK(phi == modpoly::ModularPolynomial::from_text(l, phi.to_text()));
    }
  }

  TEST_CASE("Kronecker check rejects a perturbed polynomial") {
    auto coeffs = modpoly::modular_polynomial(5).coefficients();
    coeffs[{1, 1}] += 1;
    CHECK_FALSE(modpoly::kronecker_check(modpoly::ModularPolynomial(5, coeffs)));
  }

  TEST_CASE("symmetric evaluation at random rational pairs") {
    std::mt19937_64 rng(11);
    for (int l : {2, 3, 5, 7, 11, 13}) {
      for (int k = 0; k < 20; ++k) {
        const auto x = random_rational(rng), y = random_rational(rng);
        CHECK(modpoly::eval_modpoly(l, x, y) == modpoly::eval_modpoly(l, y, x));
      }
    }
  }

  TEST_CASE("isogenous j-invariants") {
    CHECK(modpoly::eval_modpoly(2, 1728, 287496) == 0);
    CHECK(modpoly::eval_modpoly(2, 0, 54000) == 0);
    const auto r1728 = polyroots::rational_roots(modpoly::modular_polynomial(2).specialize_x(1728));
    CHECK(std::find(r1728.begin(), r1728.end(), mpq_class(287496)) != r1728.end());
    const auto r0 = polyroots::rational_roots(modpoly::modular_polynomial(2).specialize_x(0));
    CHECK(r0 == std::vector<mpq_class>{54000});

    auto diag = modpoly::isogeny_degree_search(7, 7, 13);
    CHECK(std::find(diag.begin(), diag.end(), 1) != diag.end());
    auto two = modpoly::isogeny_degree_search(1728, 287496, 13);
    CHECK(std::find(two.begin(), two.end(), 2) != two.end());
    CHECK(modpoly::isogeny_degree_search(0, 1, 13).empty());
    CHECK_THROWS_AS(modpoly::isogeny_degree_search(0, 1, 17), Error);

    // X_0(2) and X_0(3) parametrizations give infinitely many isogenous pairs.
    for (long t = 1; t < 30; ++t) {
      mpq_class a(mpz_class((t + 16) * (t + 16) * (t + 16)), t);
      mpq_class b(mpz_class((t + 256) * (t + 256)) * (t + 256), t * t);
      a.canonicalize();
      b.canonicalize();
      CHECK(modpoly::modular_polynomial(2).vanishes_at(a, b));
      mpq_class c(mpz_class(t + 27) * (t + 3) * (t + 3) * (t + 3), t);
      mpq_class d(mpz_class(t + 27) * (t + 243) * (t + 243) * (t + 243), t * t * t);
      c.canonicalize();
      d.canonicalize();
      CHECK(modpoly::modular_polynomial(3).vanishes_at(c, d));
    }
  }

  TEST_CASE("supersingular j-invariants are closed under 2-isogeny") {
    const auto& phi2 = modpoly::modular_polynomial(2);
    for (std::uint64_t p : {5u, 11u, 17u}) {
      // j = 0 is supersingular at p = 2 mod 3; its 2-isogenous neighbours in F_p must be too.
      auto g = phi2.specialize_x(0);
      int found = 0;
      for (std::uint64_t y = 0; y < p; ++y) {
        mpz_class v = 0, pw = 1;
        for (const auto& c : g) {
          v += c * pw;
          pw *= y;
        }
        if (arith::mod_of(v, p) != 0) continue;
        ++found;
        std::uint64_t a4, a6;
        if (y == 0) {
          a4 = 0, a6 = 1;
        } else if (y == 1728 % p) {
          a4 = 1, a6 = 0;
        } else {
          // y^2 = x^3 + 3j(1728 - j) x + 2j(1728 - j)^2 has j-invariant j.
          const std::uint64_t k = (1728 % p + p - y) % p;
          a4 = 3 * y % p * k % p;
          a6 = 2 * y % p * k % p * k % p;
        }
        CAPTURE(p);
        CAPTURE(y);
        CHECK(curve::is_supersingular(curve::make_prime_field_curve(p, a4, a6)));
      }
      CHECK(found > 0);
    }
  }

  TEST_CASE("precision and level errors") {
    CHECK_THROWS_AS(modpoly::compute_modular_polynomial(5, 12), Error);
    try {
      modpoly::compute_modular_polynomial(5, 20);
      FAIL("expected InsufficientPrecision");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InsufficientPrecision);
    }
    try {
      modpoly::modular_polynomial(4);
      FAIL("expected UnsupportedLevel");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnsupportedLevel);
    }
    CHECK(modpoly::supported_levels(13) == std::vector<int>{1, 2, 3, 5, 7, 11, 13});
    CHECK(modpoly::compute_modular_polynomial(3, modpoly::default_precision(3) + 10) == modpoly::modular_polynomial(3));
  }
}
