#pragma once

// Supersingular and simultaneously supersingular primes of elliptic curves
// over Q, with empirical growth fits.

#include <cstdint>
#include <string>
#include <vector>

#include "zpkit/cache.hpp"
#include "zpkit/curve.hpp"

namespace zpkit::langtrotter {

using u64 = std::uint64_t;

struct ScanOptions {
  unsigned threads = 1;
  curve::CountingOptions counting;
  /// Optional memo; hits are trusted, misses are computed and appended.
  cache::TraceCache* cache = nullptr;
};

/// Local data of e at p, going through the cache when one is configured.
curve::LocalData cached_local_data(const curve::RationalCurve& e, u64 p, const ScanOptions& opts);

/// Good primes p <= x with a_p = 0, ascending.
std::vector<u64> ss_scan(const curve::RationalCurve& e, u64 x, const ScanOptions& opts = {});

struct Checkpoint {
  u64 x = 0;
  /// Primes <= x supersingular for every scanned curve.
  u64 count = 0;
  /// pi(x), all primes <= x.
  u64 primes = 0;
};

struct SsScanResult {
  std::vector<std::string> labels;
  u64 x_max = 0;
  std::vector<std::vector<u64>> ss_primes;
  /// Intersection of the per-curve lists.
  std::vector<u64> simultaneous;
  std::vector<Checkpoint> checkpoints;
};

/// 10, 100, ... up to xmax, followed by xmax itself.
std::vector<u64> default_checkpoints(u64 xmax);

/// Scans one or more curves up to x. Checkpoints are sorted and deduplicated;
/// an empty list selects default_checkpoints(x). Throws Errc::InvalidArgument
/// for an empty curve list or checkpoints outside [1, x]. The result does not
/// depend on the thread count.
SsScanResult scan(const std::vector<curve::RationalCurve>& curves, u64 x, std::vector<u64> checkpoints = {},
                  const ScanOptions& opts = {});

inline SsScanResult pair_scan(const curve::RationalCurve& e1, const curve::RationalCurve& e2, u64 x,
                              std::vector<u64> checkpoints = {}, const ScanOptions& opts = {}) {
  return scan({e1, e2}, x, std::move(checkpoints), opts);
}

enum class FitModel { LogLog, SqrtOverLog, PrimeCount };
const char* fit_model_name(FitModel m);
/// "loglog", "sqrt_over_log" or "prime_count"; throws Errc::InvalidArgument.
FitModel parse_fit_model(const std::string& name);
double fit_basis(FitModel m, u64 x, u64 prime_count);

struct FitReport {
  FitModel model = FitModel::LogLog;
  /// Least-squares C for count ~ C g(x), over checkpoints with x >= 16.
  double constant = 0;
  /// Root-mean-square residual over the same checkpoints.
  double residual = 0;
  std::size_t points = 0;
  /// All counts were zero.
  bool degenerate = false;
};

struct FitSample {
  u64 x = 0;
  double count = 0;
  u64 primes = 0;
};

/// Needs at least three samples with x >= 16 (Errc::InvalidArgument).
FitReport fit_asymptotic(const std::vector<FitSample>& samples, FitModel model);
FitReport fit_asymptotic(const SsScanResult& r, FitModel model);

/// count <= A (field_degree^D + (log x)^D) at every checkpoint.
bool conjecture_margin(const SsScanResult& r, int D, double A, int field_degree);

/// Human-readable reasons why a pair falls outside the non-CM, non-isogenous
/// setting: singular-modulus j-invariants and modular relations of level <= 13.
std::vector<std::string> hypothesis_warnings(const curve::RationalCurve& e1, const curve::RationalCurve& e2);

}  // namespace zpkit::langtrotter
