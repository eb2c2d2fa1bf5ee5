// Acceptance checks: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles/locus_oracle.hpp"
#include "oracles/mahler_oracle.hpp"
#include "oracles/resultant_oracle.hpp"
#include "zpkit/arith.hpp"
#include "zpkit/curve.hpp"
#include "zpkit/error.hpp"
#include "zpkit/heights.hpp"
#include "zpkit/langtrotter.hpp"
#include "zpkit/ledger.hpp"
#include "zpkit/locus.hpp"
#include "zpkit/modpoly.hpp"
#include "zpkit/serialize.hpp"
#include "zpkit/upoly.hpp"

using namespace zpkit;
using langtrotter::u64;

namespace {

struct Verdict {
  bool ok = false;
  std::string details;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict deuring_density() {
  const auto t0 = std::chrono::steady_clock::now();
  langtrotter::ScanOptions opts;
  opts.counting.exhaustive_below = 0;  // BSGS throughout
  const auto e = curve::parse_curve("y^2=x^3+1");
  const auto r = langtrotter::scan({e}, 100000, {100000}, opts);
  const double secs = seconds_since(t0);
  const double frac = static_cast<double>(r.ss_primes[0].size()) / static_cast<double>(r.checkpoints.back().primes);
  bool congruence = true;
  for (u64 p : r.ss_primes[0]) congruence = congruence && p % 3 == 2;
  return {frac >= 0.48 && frac <= 0.52 && secs < 60 && congruence,
          fmt("pi_E(1e5)/pi(1e5) = %zu/%llu = %.4f, all p = 2 mod 3: %s, %.2f s", r.ss_primes[0].size(),
              static_cast<unsigned long long>(r.checkpoints.back().primes), frac, congruence ? "yes" : "no", secs)};
}

Verdict cm_pair() {
  const auto r = langtrotter::pair_scan(curve::parse_curve("y^2=x^3+1"), curve::parse_curve("y^2=x^3-x"), 100000,
                                        {100000});
  const double frac = static_cast<double>(r.simultaneous.size()) / static_cast<double>(r.checkpoints.back().primes);
  std::size_t off = 0;
  for (u64 p : r.simultaneous) off += p % 12 != 11;
  // Every prime p = 11 mod 12 up to x must also appear.
  std::size_t expected = 0;
  for (u64 p : arith::primes_up_to(100000)) expected += p % 12 == 11;
  return {frac >= 0.22 && frac <= 0.28 && off == 0 && expected == r.simultaneous.size(),
          fmt("fraction %.4f (%zu primes), %zu not 11 mod 12, %zu primes 11 mod 12 expected", frac,
              r.simultaneous.size(), off, expected)};
}

Verdict generic_pair() {
  const auto r = langtrotter::pair_scan(curve::parse_curve("y^2=x^3+x+1"), curve::parse_curve("y^2=x^3+2x+3"), 100000,
                                        {100, 1000, 10000, 100000});
  const bool margin = langtrotter::conjecture_margin(r, 2, 1.0, 1);
  const auto fit = langtrotter::fit_asymptotic(r, langtrotter::FitModel::LogLog);
  const double bound = 1 + std::pow(std::log(100000.0), 2);
  return {margin, fmt("pi_E = %zu, pi_E' = %zu, pi_{E,E'}(1e5) = %llu <= %.1f: %s; loglog fit C = %.4f, residual "
                      "%.4f%s",
                      r.ss_primes[0].size(), r.ss_primes[1].size(),
                      static_cast<unsigned long long>(r.checkpoints.back().count), bound, margin ? "yes" : "no",
                      fit.constant, fit.residual, fit.degenerate ? " (all counts zero)" : "")};
}

Verdict point_counting() {
  const char* corpus[] = {"y^2=x^3+1",       "y^2=x^3-x",        "y^2=x^3+x+1",      "y^2=x^3+2x+3",
                          "y^2=x^3-2",       "y^2=x^3+7",        "y^2=x^3-x+1",      "y^2=x^3+17",
                          "y^2=x^3-11x+14",  "y^2=x^3+5x-3",     "y^2=x^3-432",      "y^2=x^3+3x",
                          "y^2=x^3-35x+98",  "y^2=x^3+10x+20",   "[0,-1,1,-10,-20]", "[1,0,1,4,-6]",
                          "[0,1,1,-2,0]",    "[1,-1,1,-1,0]",    "y^2=x^3-4x+4",     "y^2=x^3+123x-456"};
  std::vector<curve::RationalCurve> curves;
  for (const char* c : corpus) curves.push_back(curve::parse_curve(c));
  std::size_t compared = 0, mismatches = 0;
  for (const auto& e : curves) {
    for (u64 p : arith::primes_up_to(2000)) {
      const auto c = curve::reduce_mod_p(e, p);
      if (!c) continue;
      ++compared;
      const auto ex = curve::trace_exhaustive(*c);
      try {
        mismatches += curve::trace_bsgs(*c) != ex;
      } catch (const Error& err) {
        // An ambiguous BSGS order at tiny p is resolved by the exhaustive count.
        mismatches += err.code() != Errc::AmbiguousOrder || curve::trace_of_frobenius(*c, {0}) != ex;
      }
    }
  }
  // Hasse bound for every trace up to 1e6 on the first four curves.
  const auto t0 = std::chrono::steady_clock::now();
  const auto primes = arith::primes_up_to(1000000);
  std::atomic<std::size_t> next{0}, traces{0}, violations{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < primes.size();) {
      for (std::size_t ci = 0; ci < 4; ++ci) {
        const auto d = curve::local_data(curves[ci], primes[k]);
        if (d.type == curve::ReductionType::Bad) continue;
        ++traces;
        const mpz_class a = d.ap;
        if (a * a > mpz_class(4) * primes[k]) ++violations;
      }
    }
  };
  const unsigned n = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return {mismatches == 0 && violations == 0,
          fmt("%zu BSGS/exhaustive comparisons over 20 curves with %zu mismatches; %zu traces up to 1e6, %zu Hasse "
              "violations (%.1f s)",
              compared, mismatches, traces.load(), violations.load(), seconds_since(t0))};
}

Verdict modular_polynomials() {
  std::size_t bad = 0, coeffs = 0;
  for (int l : {2, 3}) {
    const auto truth = l == 2 ? oracle::phi2() : oracle::phi3();
    const auto& phi = modpoly::modular_polynomial(l);
    if (truth.empty() || truth.size() != phi.coefficients().size()) ++bad;
    for (const auto& [k, c] : truth) {
      ++coeffs;
      bad += phi.coefficient(k.first, k.second) != c;
    }
  }
  bool kron = true;
  for (int l : {2, 3, 5, 7}) kron = kron && modpoly::kronecker_check(modpoly::modular_polynomial(l));
  const bool e1 = modpoly::eval_modpoly(2, 1728, 287496) == 0;
  const bool e2 = modpoly::eval_modpoly(2, 0, 54000) == 0;
  return {bad == 0 && kron && e1 && e2,
          fmt("%zu resultant-oracle coefficients, %zu mismatches; Kronecker {2,3,5,7}: %s; Phi_2(1728,287496) = 0: %s; "
              "Phi_2(0,54000) = 0: %s",
              coeffs, bad, kron ? "yes" : "no", e1 ? "yes" : "no", e2 ? "yes" : "no")};
}

Verdict locus_completeness() {
  std::mt19937_64 rng(20240611);
  std::vector<locus::JTuple> points;
  const auto& sing = locus::rational_singular_moduli();
  // Random tuples mixing small rationals with singular moduli and known isogenous values.
  const std::vector<mpq_class> special{1728, 287496, 0, 54000, 8000, -3375, 16581375};
  std::uniform_int_distribution<long> num(-40, 40), den(1, 6);
  for (int k = 0; k < 100; ++k) {
    locus::JTuple s;
    for (int c = 0; c < 6; ++c) {
      if (rng() % 4 == 0) {
        s.push_back(special[rng() % special.size()]);
      } else {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        s.push_back(q);
      }
    }
    points.push_back(std::move(s));
  }
  // Constructed members from the X_0(2) and X_0(3) parametrizations and singular moduli.
  for (int k = 0; k < 20; ++k) {
    const mpq_class t(static_cast<long>(k) + 1, 1 + k % 3);
    const auto [a, b] = oracle::x0_2(t);
    const auto [c, d] = oracle::x0_3(t + 1);
    const mpq_class sm = sing[k % sing.size()];
    switch (k % 4) {
      case 0: points.push_back({a, b, a, c, d, c}); break;
      case 1: points.push_back({d, c, d, sm, sm, sm}); break;
      case 2: points.push_back({a, a, b, sm, 5, b}); break;
      default: points.push_back({sm, sm, sm, c, c, d}); break;
    }
  }
  std::size_t queries = 0, discrepancies = 0, certificates = 0, members = 0, members_constructed = 0;
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const auto& s = points[idx];
    bool any = false;
    for (locus::Kind mode : {locus::Kind::V_I, locus::Kind::V_Ij, locus::Kind::V_IJ}) {
      locus::SearchQuery q;
      q.mode = mode;
      q.I = {0, 1, 2};
      q.bound = 13;
      const auto certs = locus::search_relations(s, q);
      ++queries;
      certificates += certs.size();
      any = any || !certs.empty();
      discrepancies += oracle::as_found(certs) != oracle::brute_force(s, q);
    }
    members += any;
    members_constructed += any && idx >= 100;
  }
  return {discrepancies == 0 && members >= 20 && members_constructed == 20,
          fmt("%zu tuples, %zu searches, %zu certificates, %zu tuples in some locus (%zu/20 constructed), %zu "
              "discrepancies",
              points.size(), queries, certificates, members, members_constructed, discrepancies)};
}

Verdict ledger_exactness() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<ledger::i64> counter(0, 1'000'000'000), deg(1, 1'000'000);
  std::size_t mismatches = 0;
  for (int k = 0; k < 10000; ++k) {
    ledger::DegreeLedger l;
    l.c_bad = counter(rng);
    l.pi_K = counter(rng);
    l.n_ssing = counter(rng);
    l.field_degree = deg(rng);
    const mpz_class d = static_cast<long>(l.field_degree);
    const mpz_class t1 = 2 * (mpz_class(static_cast<long>(l.c_bad)) + 1 + static_cast<long>(l.pi_K)) * d + 4;
    const mpz_class t2 = 2 * (mpz_class(static_cast<long>(l.c_bad)) + static_cast<long>(l.n_ssing)) * d + 8;
    mismatches += mpz_class(static_cast<long>(ledger::degree_bound_thm1(l))) != t1;
    mismatches += mpz_class(static_cast<long>(ledger::degree_bound_thm2(l))) != t2;
  }
  std::uniform_real_distribution<double> D(0.5, 16), log_rhs(0, 400);
  std::size_t inverse_fail = 0, solved = 0;
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const double d = D(rng), lr = log_rhs(rng);
    const auto t = ledger::solve_height_threshold(d, std::exp(lr));
    if (t.no_threshold) {
      inverse_fail += !(lr < d - d * std::log(d));
      continue;
    }
    ++solved;
    const double rel = std::abs(std::expm1(t.log_h - d * std::log(t.log_h) - lr));
    worst = std::max(worst, rel);
    inverse_fail += rel > 1e-9;
  }
  ledger::PipelineInput in;
  in.theorem = ledger::Theorem::Thm2;
  in.x = mpq_class(11 * 23, 1000003);
  in.curves = {curve::parse_curve("y^2=x^3+1"), curve::parse_curve("y^2=x^3-x")};
  in.c_bad = 3;
  in.field_degree = 2;
  in.pi_source = ledger::PiSource::Scan;
  const auto a = serialize::to_json(ledger::run_pipeline(in)).dump();
  in.scan.threads = 4;
  const auto b = serialize::to_json(ledger::run_pipeline(in)).dump();
  return {mismatches == 0 && inverse_fail == 0 && a == b,
          fmt("10000 counter tuples, %zu big-integer mismatches; %zu/100 thresholds solved, worst relative error "
              "%.2e; pipeline JSON identical for 1 and 4 threads: %s",
              mismatches, solved, worst, a == b ? "yes" : "no")};
}

Verdict height_properties() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> num(-1'000'000'000L, 1'000'000'000L), den(1, 1'000'000'000L);
  std::size_t failures = 0;
  for (int k = 0; k < 1000; ++k) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    if (q == 0) q = 1;
    const mpz_class h = heights::height_argument(q);
    failures += heights::height_argument(1 / q) != h;
    const unsigned n = 1 + static_cast<unsigned>(rng() % 9);
    mpq_class qn;
    mpz_class hn;
    mpz_pow_ui(qn.get_num_mpz_t(), q.get_num_mpz_t(), n);
    mpz_pow_ui(qn.get_den_mpz_t(), q.get_den_mpz_t(), n);
    mpz_pow_ui(hn.get_mpz_t(), h.get_mpz_t(), n);
    failures += heights::height_argument(qn) != hn;
  }
  std::uniform_int_distribution<long> co(-1000, 1000);
  std::size_t quadratics = 0, off = 0;
  double worst = 0;
  while (quadratics < 200) {
    const long a = std::abs(co(rng)) + 1, b = co(rng), c = co(rng);
    if (c == 0) continue;
    const upoly::ZPoly f{c, b, a};
    if (upoly::content(f) != 1 || !upoly::check_irreducible(f).irreducible) continue;
    ++quadratics;
    const auto est = heights::height_algebraic(heights::AlgebraicNumber::from_minimal_polynomial(f), 1e-12);
    const double err = std::abs(est.value - oracle::log_mahler_quadratic(a, b, c) / 2);
    worst = std::max(worst, err);
    off += err >= 1e-10;
  }
  return {failures == 0 && off == 0,
          fmt("1000 rationals: %zu exact identity failures; %zu quadratics, worst deviation %.2e", failures, quadratics,
              worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"Deuring density", deuring_density},
      {"CM pair non-sparsity", cm_pair},
      {"generic pair margin", generic_pair},
      {"point-counting equivalence", point_counting},
      {"modular polynomial correctness", modular_polynomials},
      {"locus completeness", locus_completeness},
      {"ledger exactness", ledger_exactness},
      {"height properties", height_properties},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.ok;
    std::printf("[%s] %zu %s: %s\n", v.ok ? "PASS" : "FAIL", k + 1, criteria[k].first, v.details.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
