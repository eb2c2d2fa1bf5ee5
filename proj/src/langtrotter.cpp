#include "zpkit/langtrotter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "zpkit/arith.hpp"
#include "zpkit/error.hpp"
#include "zpkit/locus.hpp"
#include "zpkit/modpoly.hpp"

namespace zpkit::langtrotter {

using curve::ReductionType;

curve::LocalData cached_local_data(const curve::RationalCurve& e, u64 p, const ScanOptions& opts) {
  if (!opts.cache) return curve::local_data(e, p, opts.counting);
  const std::string key = e.coefficient_string();
  if (auto hit = opts.cache->get(key, p)) return {hit->type, hit->ap};
  const auto d = curve::local_data(e, p, opts.counting);
  opts.cache->put({key, p, d.ap, d.type});
  return d;
}

std::vector<u64> ss_scan(const curve::RationalCurve& e, u64 x, const ScanOptions& opts) {
  return scan({e}, x, {x}, opts).ss_primes.front();
}

std::vector<u64> default_checkpoints(u64 xmax) {
  std::vector<u64> out;
  for (u64 c = 10; c < xmax; c *= 10) {
    out.push_back(c);
    if (c > UINT64_MAX / 10) break;
  }
  out.push_back(xmax);
  return out;
}

SsScanResult scan(const std::vector<curve::RationalCurve>& curves, u64 x, std::vector<u64> checkpoints,
                  const ScanOptions& opts) {
  if (curves.empty()) fail(Errc::InvalidArgument, "scan needs at least one curve");
  if (x < 1) fail(Errc::InvalidArgument, "scan bound must be positive");
  if (checkpoints.empty()) checkpoints = default_checkpoints(x);
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.front() < 1 || checkpoints.back() > x) {
    fail(Errc::InvalidArgument, "checkpoints must lie in [1, " + std::to_string(x) + "]");
  }

  const std::vector<u64> primes = arith::primes_up_to(x);
  const std::size_t nc = curves.size();
  // flags[c][k]: curve c supersingular at primes[k].
  std::vector<std::vector<char>> flags(nc, std::vector<char>(primes.size(), 0));

  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (primes.size() + kBlock - 1) / kBlock;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    try {
      for (std::size_t b = next++; b < blocks; b = next++) {
        const std::size_t hi = std::min(primes.size(), (b + 1) * kBlock);
        for (std::size_t k = b * kBlock; k < hi; ++k) {
          for (std::size_t c = 0; c < nc; ++c) {
            flags[c][k] = cached_local_data(curves[c], primes[k], opts).type == ReductionType::GoodSupersingular;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      next = blocks;
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  SsScanResult r;
  r.x_max = x;
  r.ss_primes.resize(nc);
  for (const auto& e : curves) r.labels.push_back(e.label());
  for (std::size_t k = 0; k < primes.size(); ++k) {
    bool all = true;
    for (std::size_t c = 0; c < nc; ++c) {
      if (flags[c][k]) {
        r.ss_primes[c].push_back(primes[k]);
      } else {
        all = false;
      }
    }
    if (all) r.simultaneous.push_back(primes[k]);
  }
  for (u64 c : checkpoints) {
    Checkpoint cp;
    cp.x = c;
    cp.count = static_cast<u64>(std::upper_bound(r.simultaneous.begin(), r.simultaneous.end(), c) - r.simultaneous.begin());
    cp.primes = static_cast<u64>(std::upper_bound(primes.begin(), primes.end(), c) - primes.begin());
    r.checkpoints.push_back(cp);
  }
  return r;
}

const char* fit_model_name(FitModel m) {
  switch (m) {
    case FitModel::LogLog: return "loglog";
    case FitModel::SqrtOverLog: return "sqrt_over_log";
    case FitModel::PrimeCount: return "prime_count";
  }
  return "?";
}

FitModel parse_fit_model(const std::string& name) {
  for (FitModel m : {FitModel::LogLog, FitModel::SqrtOverLog, FitModel::PrimeCount}) {
    if (name == fit_model_name(m)) return m;
  }
  fail(Errc::InvalidArgument, "unknown fit model '" + name + "' (expected loglog, sqrt_over_log or prime_count)");
}

double fit_basis(FitModel m, u64 x, u64 prime_count) {
  const double lx = std::log(static_cast<double>(x));
  switch (m) {
    case FitModel::LogLog: return std::log(lx);
    case FitModel::SqrtOverLog: return std::sqrt(static_cast<double>(x)) / lx;
    case FitModel::PrimeCount: return static_cast<double>(prime_count);
  }
  return 0;
}

FitReport fit_asymptotic(const std::vector<FitSample>& samples, FitModel model) {
  std::vector<std::pair<double, double>> pts;  // (g(x), count)
  for (const auto& s : samples) {
    if (s.x >= 16) pts.emplace_back(fit_basis(model, s.x, s.primes), s.count);
  }
  if (pts.size() < 3) fail(Errc::InvalidArgument, "fitting needs at least three checkpoints with x >= 16");
  FitReport f;
  f.model = model;
  f.points = pts.size();
  f.degenerate = std::all_of(pts.begin(), pts.end(), [](const auto& p) { return p.second == 0; });
  if (f.degenerate) return f;
  double sxy = 0, sxx = 0;
  for (const auto& [g, c] : pts) {
    sxy += g * c;
    sxx += g * g;
  }
  f.constant = sxy / sxx;
  double ss = 0;
  for (const auto& [g, c] : pts) ss += (c - f.constant * g) * (c - f.constant * g);
  f.residual = std::sqrt(ss / static_cast<double>(pts.size()));
  return f;
}

FitReport fit_asymptotic(const SsScanResult& r, FitModel model) {
  std::vector<FitSample> samples;
  for (const auto& cp : r.checkpoints) samples.push_back({cp.x, static_cast<double>(cp.count), cp.primes});
  return fit_asymptotic(samples, model);
}

bool conjecture_margin(const SsScanResult& r, int D, double A, int field_degree) {
  if (D < 1) fail(Errc::InvalidArgument, "polynomial degree D must be at least 1");
  if (!(A > 0)) fail(Errc::InvalidArgument, "coefficient A must be positive");
  if (field_degree < 1) fail(Errc::InvalidArgument, "field degree must be at least 1");
  for (const auto& cp : r.checkpoints) {
    const double lx = cp.x > 1 ? std::log(static_cast<double>(cp.x)) : 0.0;
    const double bound = A * (std::pow(static_cast<double>(field_degree), D) + std::pow(lx, D));
    if (static_cast<double>(cp.count) > bound) return false;
  }
  return true;
}

std::vector<std::string> hypothesis_warnings(const curve::RationalCurve& e1, const curve::RationalCurve& e2) {
  std::vector<std::string> out;
  for (const auto* e : {&e1, &e2}) {
    if (locus::is_singular_modulus(e->j_invariant())) {
      out.push_back(e->label() + " has CM (j = " + arith::to_string(e->j_invariant()) + ")");
    }
  }
  const auto levels = modpoly::isogeny_degree_search(e1.j_invariant(), e2.j_invariant(), modpoly::kDefaultMaxLevel);
  for (int n : levels) {
    out.push_back(n == 1 ? "the curves have equal j-invariants"
                         : "the j-invariants satisfy the level " + std::to_string(n) + " modular relation");
  }
  return out;
}

}  // namespace zpkit::langtrotter
