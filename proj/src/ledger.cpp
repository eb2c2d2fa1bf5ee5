#include "zpkit/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zpkit/arith.hpp"
#include "zpkit/error.hpp"
#include "zpkit/heights.hpp"

namespace zpkit::ledger {

namespace {

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "degree bookkeeping exceeds 64-bit range");
  return r;
}

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "degree bookkeeping exceeds 64-bit range");
  return r;
}

double claim_value(const HeightInequalityParams& p, i64 d, double h) {
  const double lh = std::log(h);
  return p.C1 * (std::pow(static_cast<double>(d), p.D) + std::pow(lh, p.D));
}

}  // namespace

const char* place_class_name(PlaceClass c) {
  switch (c) {
    case PlaceClass::Ordinary: return "ordinary";
    case PlaceClass::Supersingular: return "supersingular";
    case PlaceClass::Bad: return "bad";
    case PlaceClass::Archimedean: return "archimedean";
  }
  return "?";
}

std::vector<ProximityRecord> proximity_places(const mpq_class& x_in, const std::vector<curve::RationalCurve>& curves,
                                              const langtrotter::ScanOptions& opts) {
  mpq_class x = x_in;
  x.canonicalize();
  if (x == 0) fail(Errc::InvalidArgument, "proximity places are defined for nonzero x");
  if (curves.empty()) fail(Errc::InvalidArgument, "at least one reference curve is required");
  std::vector<ProximityRecord> out;
  const mpz_class limit = mpz_class(1) << 62;
  if (abs(x.get_num()) > 1) {
    for (const auto& [p, e] : arith::factor(x.get_num())) {
      if (p > limit) fail(Errc::Overflow, "prime " + p.get_str() + " of x is too large to classify");
      const auto pu = static_cast<std::uint64_t>(p.get_ui());
      bool any_ordinary = false, any_bad = false;
      for (const auto& c : curves) {
        const auto t = langtrotter::cached_local_data(c, pu, opts).type;
        any_ordinary |= t == curve::ReductionType::GoodOrdinary;
        any_bad |= t == curve::ReductionType::Bad;
      }
      ProximityRecord r;
      r.prime = p;
      r.valuation = e;
      r.cls = any_ordinary ? PlaceClass::Ordinary : any_bad ? PlaceClass::Bad : PlaceClass::Supersingular;
      out.push_back(std::move(r));
    }
  }
  if (abs(x) < 1) {
    ProximityRecord r;
    r.abs_value = mpq_class(abs(x)).get_d();
    r.cls = PlaceClass::Archimedean;
    out.push_back(std::move(r));
  }
  return out;
}

SigmaCounts decompose_sigma(const std::vector<ProximityRecord>& records) {
  SigmaCounts c;
  for (const auto& r : records) {
    switch (r.cls) {
      case PlaceClass::Ordinary: ++c.n_ord; break;
      case PlaceClass::Supersingular: ++c.n_ssing; break;
      case PlaceClass::Bad: ++c.n_bad; break;
      case PlaceClass::Archimedean: ++c.n_inf; break;
    }
  }
  return c;
}

void validate(const DegreeLedger& l) {
  if (l.c_bad < 0 || l.pi_K < 0 || l.n_ssing < 0) fail(Errc::InvalidArgument, "ledger counters must be nonnegative");
  if (l.field_degree < 1 || l.base_degree < 1) fail(Errc::InvalidArgument, "field degrees must be at least 1");
}

i64 degree_bound_thm1(const DegreeLedger& l) {
  validate(l);
  const i64 inner = checked_add(checked_add(l.c_bad, 1), l.pi_K);
  return checked_add(checked_mul(checked_mul(2, inner), l.field_degree), 4);
}

i64 degree_bound_thm2(const DegreeLedger& l) {
  validate(l);
  const i64 inner = checked_add(l.c_bad, l.n_ssing);
  return checked_add(checked_mul(checked_mul(2, inner), l.field_degree), 8);
}

double alpha(i64 field_degree, double h_x) {
  if (field_degree < 1) fail(Errc::InvalidArgument, "field degree must be at least 1");
  if (!(h_x >= 0)) fail(Errc::InvalidArgument, "heights are nonnegative");
  const double d = static_cast<double>(field_degree);
  return d * d * d * h_x * h_x;
}

void validate(const HeightInequalityParams& p) {
  if (!(p.c1 > 0) || !(p.C1 > 0)) fail(Errc::InvalidArgument, "c1 and C1 must be positive");
  if (!(p.c2 >= 1)) fail(Errc::InvalidArgument, "c2 must be at least 1");
  if (p.D < 1) fail(Errc::InvalidArgument, "D must be a positive integer");
  if (!std::isfinite(p.C0)) fail(Errc::InvalidArgument, "C0 must be finite");
}

ClaimBound claim_pi_bound(const HeightInequalityParams& p, i64 field_degree, double h) {
  validate(p);
  if (field_degree < 1) fail(Errc::InvalidArgument, "field degree must be at least 1");
  if (h <= p.C0) return {true, 0};
  if (!(h > 1)) fail(Errc::InvalidArgument, "the Claim bound needs h > 1");
  return {false, claim_value(p, field_degree, h)};
}

i64 pi_K_from_pi_Q(i64 pi_Q, i64 base_degree) {
  if (pi_Q < 0 || base_degree < 0) fail(Errc::InvalidArgument, "counts must be nonnegative");
  return checked_mul(base_degree, pi_Q);
}

Threshold solve_height_threshold(double D, double rhs) {
  if (!(D >= 0) || !std::isfinite(D)) fail(Errc::InvalidArgument, "log exponent must be finite and nonnegative");
  if (!(rhs > 0) || !std::isfinite(rhs)) fail(Errc::InvalidArgument, "right-hand side must be finite and positive");
  Threshold t;
  if (D == 0) {
    t.h = rhs;
    t.log_h = std::log(rhs);
    return t;
  }
  // With u = log h the equation is g(u) = u - D log u = log rhs, increasing for u >= D.
  const double target = std::log(rhs);
  auto g = [D](double u) { return u - D * std::log(u); };
  if (target < g(D)) {
    t.no_threshold = true;
    t.log_h = D;
    t.h = std::exp(D);
    return t;
  }
  double lo = D, hi = std::max(2 * D, target + 1);
  while (g(hi) < target) hi *= 2;
  for (int it = 0; it < 400 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  t.log_h = 0.5 * (lo + hi);
  t.h = std::exp(t.log_h);
  return t;
}

const char* pi_source_name(PiSource s) {
  switch (s) {
    case PiSource::Supplied: return "supplied";
    case PiSource::Proximity: return "proximity";
    case PiSource::Scan: return "scan";
    case PiSource::Claim: return "claim";
  }
  return "?";
}

PipelineReport run_pipeline(const PipelineInput& in) {
  validate(in.params);
  PipelineReport r;
  r.theorem = in.theorem;
  r.x = in.x;
  r.x.canonicalize();
  r.params = in.params;
  r.pi_source = in.pi_source;
  r.ledger.c_bad = in.c_bad;
  r.ledger.field_degree = in.field_degree;
  r.ledger.base_degree = in.base_degree;
  validate(r.ledger);
  if (in.pi_source == PiSource::Supplied && in.pi_K_supplied < 0) fail(Errc::InvalidArgument, "pi_K must be nonnegative");

  r.h_x = heights::height_rational(r.x);
  r.h_s = in.h_s.value_or(r.h_x);
  r.records = proximity_places(r.x, in.curves, in.scan);
  r.sigma = decompose_sigma(r.records);
  r.alpha = alpha(in.field_degree, r.h_x);

  const auto& p = in.params;
  const i64 d = in.field_degree;
  r.claim.bounded_branch = r.h_x <= p.C0;
  if (!r.claim.bounded_branch && r.h_s > 1) r.claim.value = claim_value(p, d, r.h_s);

  switch (in.pi_source) {
    case PiSource::Supplied:
      r.pi_K = in.pi_K_supplied;
      break;
    case PiSource::Proximity:
      r.pi_Q = r.sigma.n_ssing;
      r.pi_K = pi_K_from_pi_Q(*r.pi_Q, in.base_degree);
      break;
    case PiSource::Scan: {
      const double cap = static_cast<double>(in.scan_cap);
      r.scan_truncated = r.alpha > cap;
      r.scan_bound = r.scan_truncated ? in.scan_cap : static_cast<std::uint64_t>(std::floor(r.alpha));
      r.pi_Q = 0;
      if (r.scan_bound >= 2) {
        r.pi_Q = static_cast<i64>(langtrotter::scan(in.curves, r.scan_bound, {r.scan_bound}, in.scan).simultaneous.size());
      }
      r.pi_K = pi_K_from_pi_Q(*r.pi_Q, in.base_degree);
      break;
    }
    case PiSource::Claim:
      if (!r.claim.bounded_branch) {
        if (!(r.h_s > 1)) fail(Errc::InvalidArgument, "the Claim bound needs h(s) > 1");
        if (!(r.claim.value < 9.0e18)) fail(Errc::Overflow, "Claim bound on pi_K exceeds 64-bit range");
        r.pi_K = static_cast<i64>(std::floor(r.claim.value));
      }
      break;
  }

  if (r.pi_K) {
    r.n_ssing = in.pi_source == PiSource::Proximity ? r.sigma.n_ssing : checked_mul(d, *r.pi_K);
    r.ledger.pi_K = *r.pi_K;
    r.ledger.n_ssing = *r.n_ssing;
    r.deg_bound = in.theorem == Theorem::Thm1 ? degree_bound_thm1(r.ledger) : degree_bound_thm2(r.ledger);
    r.h_from_degree = p.c1 * std::pow(static_cast<double>(*r.deg_bound), p.c2);
  }

  const double c_bad = static_cast<double>(in.c_bad);
  if (in.theorem == Theorem::Thm1) {
    r.C4 = 2 * (c_bad + 1) + 4 * p.C1 + 4;
    r.c2_prime = p.c2 * (p.D + 1);
  } else {
    r.C4 = 2 * c_bad + 4 * p.C1 + 8;
    r.c2_prime = p.c2 * (p.D + 2);
  }
  r.c1_prime = p.c1 * std::pow(r.C4, p.c2);
  r.log_exponent = p.D * p.c2;
  r.threshold = solve_height_threshold(r.log_exponent, r.c1_prime * std::pow(static_cast<double>(d), r.c2_prime));
  r.h_bound = std::max(p.C0, r.threshold.h);
  return r;
}

}  // namespace zpkit::ledger
