#pragma once

// Degree and height bookkeeping for points s with rational x(s): places of
// proximity, the degree bounds of the global relation R_s, the Claim bounding
// pi_K(s), and the final height inequality h / (log h)^D' <= c1' d^c2'.
//
// Proximity is a proxy: a finite place p is proximate when v_p(x) >= 1 and the
// archimedean place when |x| < 1. Records are labeled "proxy-proximate".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "zpkit/curve.hpp"
#include "zpkit/langtrotter.hpp"

namespace zpkit::ledger {

using i64 = std::int64_t;

enum class PlaceClass { Ordinary, Supersingular, Bad, Archimedean };
const char* place_class_name(PlaceClass c);

struct ProximityRecord {
  /// Absent for the archimedean place.
  std::optional<mpz_class> prime;
  /// v_p(x) at finite places, 0 at the archimedean place.
  unsigned valuation = 0;
  /// |x| at the archimedean place, 0 at finite places.
  double abs_value = 0;
  PlaceClass cls = PlaceClass::Ordinary;
};

/// Classification over several reference curves: Supersingular when all are
/// supersingular, Ordinary when any is ordinary, Bad otherwise (some curve is
/// bad and none is ordinary). Primes of x above 2^62 raise Errc::Overflow.
/// Throws Errc::InvalidArgument for x = 0 or an empty curve list.
std::vector<ProximityRecord> proximity_places(const mpq_class& x, const std::vector<curve::RationalCurve>& curves,
                                              const langtrotter::ScanOptions& opts = {});

struct SigmaCounts {
  i64 n_ord = 0, n_ssing = 0, n_bad = 0, n_inf = 0;
  i64 total() const { return n_ord + n_ssing + n_bad + n_inf; }
};
SigmaCounts decompose_sigma(const std::vector<ProximityRecord>& records);

struct DegreeLedger {
  i64 c_bad = 0;
  i64 pi_K = 0;
  i64 n_ssing = 0;
  i64 field_degree = 1;
  i64 base_degree = 1;
  static constexpr i64 local_degree_cap = 2;
  static constexpr i64 ordinary_factor_degree = 4;
};

/// Throws Errc::InvalidArgument for negative counters or field_degree < 1.
void validate(const DegreeLedger& l);
/// 2 (c_bad + 1 + pi_K) d + 4, exact; Errc::Overflow beyond 64 bits.
i64 degree_bound_thm1(const DegreeLedger& l);
/// 2 (c_bad + n_ssing) d + 8, exact; Errc::Overflow beyond 64 bits.
i64 degree_bound_thm2(const DegreeLedger& l);

/// d^3 h_x^2.
double alpha(i64 field_degree, double h_x);

struct HeightInequalityParams {
  double c1 = 1;
  double c2 = 2;
  int D = 2;
  double C0 = 1e6;
  double C1 = 1;
};
void validate(const HeightInequalityParams& p);

struct ClaimBound {
  /// h <= C0: the first alternative of the Claim applies and no bound is given.
  bool bounded_branch = false;
  double value = 0;
};
/// C1 (d^D + (log h)^D) unless h <= C0. Requires h > 1 on the second branch.
ClaimBound claim_pi_bound(const HeightInequalityParams& p, i64 field_degree, double h);

/// base_degree * pi_Q, exact.
i64 pi_K_from_pi_Q(i64 pi_Q, i64 base_degree);

struct Threshold {
  /// Largest h with h / (log h)^D <= rhs on the increasing branch h >= e^D.
  double h = 0;
  /// log h, finite even when h overflows a double.
  double log_h = 0;
  /// rhs lies below min (e/D)^D; h is then the minimizer e^D.
  bool no_threshold = false;
};
/// Solves h / (log h)^D = rhs for real D >= 0 and rhs > 0 to relative error
/// 1e-9 in the left-hand side. D = 0 gives h = rhs.
Threshold solve_height_threshold(double D, double rhs);

enum class Theorem { Thm1, Thm2 };
enum class PiSource { Supplied, Proximity, Scan, Claim };
const char* pi_source_name(PiSource s);

struct PipelineInput {
  Theorem theorem = Theorem::Thm1;
  mpq_class x = 1;
  std::vector<curve::RationalCurve> curves;
  i64 c_bad = 0;
  i64 field_degree = 1;
  i64 base_degree = 1;
  /// h(s); defaults to h(x(s)) when absent.
  std::optional<double> h_s;
  PiSource pi_source = PiSource::Proximity;
  i64 pi_K_supplied = 0;
  /// Largest prime bound for the Scan source; alpha(s) beyond it is truncated.
  std::uint64_t scan_cap = 10'000'000;
  HeightInequalityParams params;
  langtrotter::ScanOptions scan;
};

struct PipelineReport {
  Theorem theorem = Theorem::Thm1;
  mpq_class x;
  double h_x = 0;
  double h_s = 0;
  std::vector<ProximityRecord> records;
  SigmaCounts sigma;
  PiSource pi_source = PiSource::Proximity;
  /// Absent when the Claim source lands on its bounded branch.
  std::optional<i64> pi_Q;
  std::optional<i64> pi_K;
  std::optional<i64> n_ssing;
  DegreeLedger ledger;
  std::optional<i64> deg_bound;
  /// c1 (deg_bound)^c2, the height bound read off the degree bound directly.
  std::optional<double> h_from_degree;
  double alpha = 0;
  std::uint64_t scan_bound = 0;
  bool scan_truncated = false;
  ClaimBound claim;
  HeightInequalityParams params;
  double C4 = 0;
  double c1_prime = 0;
  double c2_prime = 0;
  double log_exponent = 0;
  Threshold threshold;
  /// max(C0, threshold h): every s in the second branch has h(x(s)) below it.
  double h_bound = 0;
};

PipelineReport run_pipeline(const PipelineInput& in);

}  // namespace zpkit::ledger
