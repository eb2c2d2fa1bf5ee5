#include <doctest.h>

#include <cmath>
#include <random>

#include "zpkit/curve.hpp"
#include "zpkit/error.hpp"
#include "zpkit/ledger.hpp"
#include "zpkit/serialize.hpp"

using namespace zpkit;
using ledger::DegreeLedger;
using ledger::PlaceClass;

namespace {

const curve::RationalCurve& e0() {
  static const auto e = curve::parse_curve("y^2=x^3+1");
  return e;
}
const curve::RationalCurve& e1728() {
  static const auto e = curve::parse_curve("y^2=x^3-x");
  return e;
}

DegreeLedger make(ledger::i64 c_bad, ledger::i64 pi_K, ledger::i64 n_ssing, ledger::i64 d) {
  DegreeLedger l;
  l.c_bad = c_bad;
  l.pi_K = pi_K;
  l.n_ssing = n_ssing;
  l.field_degree = d;
  return l;
}

// Independent evaluation in arbitrary precision.
mpz_class thm1_mpz(long c_bad, long pi_K, long d) { return mpz_class(2) * (mpz_class(c_bad) + 1 + pi_K) * d + 4; }
mpz_class thm2_mpz(long c_bad, long n_ssing, long d) { return mpz_class(2) * (mpz_class(c_bad) + n_ssing) * d + 8; }

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{};
}

}  // namespace

TEST_SUITE("ledger") {
  TEST_CASE("proximity places") {
    auto r = ledger::proximity_places(mpq_class(12, 7), {e0()});
    REQUIRE(r.size() == 2);
    CHECK(*r[0].prime == 2);
    CHECK(r[0].valuation == 2);
    CHECK(r[0].cls == PlaceClass::Bad);
    CHECK(*r[1].prime == 3);
    CHECK(r[1].valuation == 1);
    CHECK(r[1].cls == PlaceClass::Bad);

    r = ledger::proximity_places(mpq_class(5, 7), {e0()});
    REQUIRE(r.size() == 2);
    CHECK(*r[0].prime == 5);
    CHECK(r[0].cls == PlaceClass::Supersingular);
    CHECK_FALSE(r[1].prime);
    CHECK(r[1].cls == PlaceClass::Archimedean);
    CHECK(r[1].abs_value == doctest::Approx(5.0 / 7));

    // v_5(1/5) = -1, so 5 is not proximate; only the archimedean place is.
    r = ledger::proximity_places(mpq_class(1, 5), {e0()});
    REQUIRE(r.size() == 1);
    CHECK(r[0].cls == PlaceClass::Archimedean);

    r = ledger::proximity_places(7, {e0()});
    REQUIRE(r.size() == 1);
    CHECK(*r[0].prime == 7);
    CHECK(r[0].cls == PlaceClass::Ordinary);

    // 11 is supersingular for both CM curves, 5 only for j = 0, 3 is bad.
    r = ledger::proximity_places(mpq_class(165, 1), {e0(), e1728()});
    REQUIRE(r.size() == 3);
    CHECK(r[0].cls == PlaceClass::Bad);
    CHECK(r[1].cls == PlaceClass::Ordinary);
    CHECK(r[2].cls == PlaceClass::Supersingular);

    CHECK(code_of([] { ledger::proximity_places(0, {e0()}); }) == Errc::InvalidArgument);
    CHECK(code_of([] { ledger::proximity_places(1, {}); }) == Errc::InvalidArgument);
    const mpz_class huge = (mpz_class(1) << 89) - 1;  // Mersenne prime
    CHECK(code_of([&] { ledger::proximity_places(mpq_class(huge), {e0()}); }) == Errc::Overflow);
  }

  TEST_CASE("sigma decomposition") {
    CHECK(ledger::decompose_sigma({}).total() == 0);
    const auto s = ledger::decompose_sigma(ledger::proximity_places(mpq_class(5, 7), {e0()}));
    CHECK(s.n_ord == 0);
    CHECK(s.n_ssing == 1);
    CHECK(s.n_bad == 0);
    CHECK(s.n_inf == 1);
    std::vector<ledger::ProximityRecord> mixed(5);
    mixed[0].cls = PlaceClass::Ordinary;
    mixed[1].cls = PlaceClass::Supersingular;
    mixed[2].cls = PlaceClass::Bad;
    mixed[3].cls = PlaceClass::Archimedean;
    mixed[4].cls = PlaceClass::Ordinary;
    const auto m = ledger::decompose_sigma(mixed);
    CHECK(m.total() == 5);
    CHECK(m.n_ord == 2);
  }

  TEST_CASE("degree bound examples") {
    CHECK(ledger::degree_bound_thm1(make(1, 3, 0, 2)) == 24);
    CHECK(ledger::degree_bound_thm1(make(0, 0, 0, 1)) == 6);
    CHECK(ledger::degree_bound_thm1(make(2, 10, 0, 4)) == 108);
    CHECK(ledger::degree_bound_thm2(make(1, 0, 3, 2)) == 24);
    CHECK(ledger::degree_bound_thm2(make(0, 0, 0, 1)) == 8);
    CHECK(ledger::degree_bound_thm2(make(2, 0, 5, 3)) == 50);
    CHECK(DegreeLedger::local_degree_cap == 2);
    CHECK(DegreeLedger::ordinary_factor_degree == 4);
  }

  TEST_CASE("degree bounds: exactness, dominance, monotonicity") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> small(0, 1000), deg(1, 200);
    for (int k = 0; k < 2000; ++k) {
      const long c = small(rng), pi = small(rng), d = deg(rng);
      const auto l = make(c, pi, pi, d);
      const auto b1 = ledger::degree_bound_thm1(l), b2 = ledger::degree_bound_thm2(l);
      CHECK(mpz_class(static_cast<long>(b1)) == thm1_mpz(c, pi, d));
      CHECK(mpz_class(static_cast<long>(b2)) == thm2_mpz(c, pi, d));
      CHECK(b2 - b1 == 4 - 2 * d);
      CHECK(ledger::degree_bound_thm1(make(c + 1, pi, pi, d)) > b1);
      CHECK(ledger::degree_bound_thm1(make(c, pi + 1, pi, d)) > b1);
      CHECK(ledger::degree_bound_thm1(make(c, pi, pi, d + 1)) > b1);
      CHECK(ledger::degree_bound_thm2(make(c + 1, pi, pi, d)) > b2);
      CHECK(ledger::degree_bound_thm2(make(c, pi, pi + 1, d)) > b2);
      if (c + pi > 0) CHECK(ledger::degree_bound_thm2(make(c, pi, pi, d + 1)) > b2);
    }
    // With both counters zero the thm2 bound is the constant 8.
    CHECK(ledger::degree_bound_thm2(make(0, 0, 0, 5)) == ledger::degree_bound_thm2(make(0, 0, 0, 1)));
    const ledger::i64 big = ledger::i64{1} << 61;
    CHECK(code_of([&] { ledger::degree_bound_thm1(make(big, big, 0, 4)); }) == Errc::Overflow);
    CHECK(code_of([&] { ledger::degree_bound_thm2(make(0, 0, big, 8)); }) == Errc::Overflow);
    CHECK(code_of([] { ledger::degree_bound_thm1(make(-1, 0, 0, 1)); }) == Errc::InvalidArgument);
    CHECK(code_of([] { ledger::degree_bound_thm1(make(0, 0, 0, 0)); }) == Errc::InvalidArgument);
  }

  TEST_CASE("alpha, claim and pi_K") {
    CHECK(ledger::alpha(2, 10) == 800);
    CHECK(ledger::alpha(1, 0) == 0);
    CHECK(ledger::alpha(3, 2.5) == doctest::Approx(168.75));

    ledger::HeightInequalityParams p;
    p.C0 = 1;
    p.C1 = 1;
    p.D = 1;
    auto c = ledger::claim_pi_bound(p, 2, std::exp(1.0));
    CHECK_FALSE(c.bounded_branch);
    CHECK(c.value == doctest::Approx(3));
    p.C1 = 2;
    p.D = 2;
    CHECK(ledger::claim_pi_bound(p, 1, std::exp(1.0)).value == doctest::Approx(4));
    p.C0 = 100;
    CHECK(ledger::claim_pi_bound(p, 1, 50).bounded_branch);

    CHECK(ledger::pi_K_from_pi_Q(6, 1) == 6);
    CHECK(ledger::pi_K_from_pi_Q(6, 2) == 12);
    CHECK(ledger::pi_K_from_pi_Q(0, 5) == 0);
  }

  TEST_CASE("height threshold") {
    auto t = ledger::solve_height_threshold(0, 123.5);
    CHECK(t.h == 123.5);
    t = ledger::solve_height_threshold(1, std::exp(1.0));
    CHECK(t.h == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    t = ledger::solve_height_threshold(2, 100);
    CHECK_FALSE(t.no_threshold);
    CHECK(std::abs(t.h / std::pow(std::log(t.h), 2) - 100) / 100 <= 1e-9);
    CHECK(t.h > std::exp(2.0));
    t = ledger::solve_height_threshold(3, 0.5);
    CHECK(t.no_threshold);
    CHECK(t.h == doctest::Approx(std::exp(3.0)));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dd(0.5, 12), lr(1, 300);
    for (int k = 0; k < 200; ++k) {
      const double D = dd(rng), log_rhs = lr(rng);
      const auto s = ledger::solve_height_threshold(D, std::exp(log_rhs));
      if (s.no_threshold) continue;
      // Compare in log space: log(h / (log h)^D) = u - D log u.
      const double back = s.log_h - D * std::log(s.log_h);
      CHECK(std::abs(std::expm1(back - log_rhs)) <= 1e-9);
    }
    CHECK_THROWS_AS(ledger::solve_height_threshold(-1, 10), Error);
    CHECK_THROWS_AS(ledger::solve_height_threshold(1, 0), Error);
  }

  TEST_CASE("pipeline") {
    ledger::PipelineInput in;
    in.x = 7;
    in.curves = {curve::parse_curve("y^2=x^3+x+1")};
    in.c_bad = 2;
    in.field_degree = 3;
    in.pi_source = ledger::PiSource::Supplied;
    in.pi_K_supplied = 0;
    auto r = ledger::run_pipeline(in);
    CHECK(*r.deg_bound == 2 * (2 + 1) * 3 + 4);
    CHECK(std::isfinite(r.threshold.h));
    CHECK_FALSE(r.threshold.no_threshold);
    CHECK(r.h_bound >= r.params.C0);

    in.x = mpq_class(5, 7);
    in.curves = {e0()};
    in.c_bad = 1;
    in.field_degree = 1;
    in.pi_source = ledger::PiSource::Proximity;
    r = ledger::run_pipeline(in);
    CHECK(*r.n_ssing == 1);
    CHECK(*r.pi_K == 1);
    CHECK(*r.deg_bound == ledger::degree_bound_thm1(make(1, 1, 1, 1)));
    CHECK(r.C4 == doctest::Approx(2 * 2 + 4 + 4));
    CHECK(r.c2_prime == doctest::Approx(2 * 3));
    CHECK(r.log_exponent == doctest::Approx(4));
    CHECK(r.c1_prime == doctest::Approx(std::pow(r.C4, 2)));

    in.theorem = ledger::Theorem::Thm2;
    in.curves = {e0(), e1728()};
    in.x = mpq_class(11, 13);
    r = ledger::run_pipeline(in);
    CHECK(*r.n_ssing == 1);
    CHECK(*r.deg_bound == ledger::degree_bound_thm2(make(1, 1, 1, 1)));
    CHECK(r.C4 == doctest::Approx(2 * 1 + 4 + 8));

    in.pi_source = ledger::PiSource::Claim;
    r = ledger::run_pipeline(in);
    CHECK(r.claim.bounded_branch);
    CHECK_FALSE(r.deg_bound);

    in.pi_source = ledger::PiSource::Scan;
    in.x = mpq_class(5, 1000003);
    r = ledger::run_pipeline(in);
    CHECK(r.scan_bound == static_cast<std::uint64_t>(std::floor(r.alpha)));
    CHECK(*r.pi_Q > 0);
  }

  TEST_CASE("pipeline is deterministic across thread counts") {
    ledger::PipelineInput in;
    in.x = mpq_class(55, 1234567);
    in.curves = {e0(), e1728()};
    in.c_bad = 2;
    in.pi_source = ledger::PiSource::Scan;
    const auto a = serialize::to_json(ledger::run_pipeline(in)).dump();
    in.scan.threads = 4;
    const auto b = serialize::to_json(ledger::run_pipeline(in)).dump();
    CHECK(a == b);
    const auto j = nlohmann::json::parse(a);
    for (const char* key : {"pi_K", "deg_bound", "h_threshold", "n_ssing", "C4", "Sigma"}) CHECK(j.contains(key));
  }
}
