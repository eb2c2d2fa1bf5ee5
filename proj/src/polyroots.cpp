#include "zpkit/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "zpkit/error.hpp"

namespace zpkit::polyroots {

namespace mp = boost::multiprecision;
using upoly::ZPoly;

namespace {

template <unsigned Digits>
using Float = mp::number<mp::cpp_bin_float<Digits>, mp::et_off>;

template <class Real>
struct Cx {
  Real re, im;
  Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
  Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
  Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Cx operator*(const Real& s) const { return {re * s, im * s}; }
  Cx operator/(const Cx& o) const {
    Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Real abs() const { return mp::sqrt(re * re + im * im); }
};

template <class Real>
Real to_real(const mpz_class& v) {
  return Real(v.get_str());
}

template <class Real>
struct Isolation {
  std::vector<Cx<Real>> z;
  std::vector<Real> radius;
  bool disjoint = false;
};

template <class Real>
Isolation<Real> isolate(const ZPoly& f) {
  const int n = upoly::degree(f);
  const unsigned digits = std::numeric_limits<Real>::digits10;
  std::vector<Real> a(n + 1);
  for (int k = 0; k <= n; ++k) a[k] = to_real<Real>(f[k]);
  std::vector<Real> abs_a(n + 1);
  for (int k = 0; k <= n; ++k) abs_a[k] = mp::abs(a[k]);

  auto eval = [&](const Cx<Real>& z, Cx<Real>& val, Cx<Real>& der) {
    val = {a[n], Real(0)};
    der = {Real(0), Real(0)};
    for (int k = n - 1; k >= 0; --k) {
      der = der * z + val;
      val = val * z + Cx<Real>{a[k], Real(0)};
    }
  };

  Isolation<Real> out;
  // Initial points on a circle around the centroid of the roots.
  const Real center = -a[n - 1] / (a[n] * n);
  Real radius(0);
  for (int k = 0; k < n; ++k) {
    if (a[k] == 0) continue;
    Real r = mp::pow(abs_a[k] / abs_a[n], Real(1) / Real(n - k));
    radius = std::max(radius, r);
  }
  if (radius == 0) radius = 1;
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (int k = 0; k < n; ++k) {
    Real theta = two_pi * k / n + Real("0.7");
    out.z.push_back({center + radius * mp::cos(theta), radius * mp::sin(theta)});
  }

  const Real tol = mp::pow(Real(10), -static_cast<int>(digits) + 4);
  for (int iter = 0; iter < 4000; ++iter) {
    Real worst(0);
    for (int i = 0; i < n; ++i) {
      Cx<Real> val, der;
      eval(out.z[i], val, der);
      if (val.re == 0 && val.im == 0) continue;
      Cx<Real> sum{Real(0), Real(0)};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        sum = sum + Cx<Real>{Real(1), Real(0)} / (out.z[i] - out.z[j]);
      }
      Cx<Real> ratio = (der.re == 0 && der.im == 0) ? Cx<Real>{tol, tol} : val / der;
      Cx<Real> w = ratio / (Cx<Real>{Real(1), Real(0)} - ratio * sum);
      out.z[i] = out.z[i] - w;
      const Real rel = w.abs() / std::max(Real(1), out.z[i].abs());
      worst = std::max(worst, rel);
    }
    if (worst < tol) break;
  }

  // Inclusion radii n|W_i| with rounding slack on f(z_i).
  const Real unit = mp::pow(Real(10), 1 - static_cast<int>(digits));
  out.radius.resize(n);
  for (int i = 0; i < n; ++i) {
    Cx<Real> val, der;
    eval(out.z[i], val, der);
    const Real zabs = out.z[i].abs();
    Real magnitude(0), zp(1);
    for (int k = 0; k <= n; ++k) {
      magnitude += abs_a[k] * zp;
      zp *= zabs;
    }
    Real prod = abs_a[n];
    for (int j = 0; j < n; ++j) {
      if (j != i) prod *= (out.z[i] - out.z[j]).abs();
    }
    if (prod == 0) return out;
    out.radius[i] = n * (val.abs() + 4 * n * unit * magnitude) / prod;
  }
  out.disjoint = true;
  for (int i = 0; i < n && out.disjoint; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((out.z[i] - out.z[j]).abs() <= out.radius[i] + out.radius[j]) {
        out.disjoint = false;
        break;
      }
    }
  }
  return out;
}

// Runs `attempt` at increasing precision until it yields a value.
template <class Fn>
auto precision_ladder(Fn&& attempt) {
  if (auto r = attempt.template operator()<Float<30>>()) return *r;
  if (auto r = attempt.template operator()<Float<60>>()) return *r;
  if (auto r = attempt.template operator()<Float<120>>()) return *r;
  if (auto r = attempt.template operator()<Float<240>>()) return *r;
  if (auto r = attempt.template operator()<Float<480>>()) return *r;
  if (auto r = attempt.template operator()<Float<960>>()) return *r;
  fail(Errc::RootIsolationFailure, "root isolation did not reach the requested accuracy");
}

}  // namespace

MahlerMeasure log_mahler_measure(const ZPoly& f_in, double eps) {
  ZPoly f = f_in;
  upoly::trim(f);
  const int n = upoly::degree(f);
  if (n < 1) fail(Errc::InvalidArgument, "Mahler measure needs a polynomial of degree >= 1");
  if (!(eps > 0)) fail(Errc::InvalidArgument, "accuracy target must be positive");

  return precision_ladder([&]<class Real>() -> std::optional<MahlerMeasure> {
    Isolation<Real> iso = isolate<Real>(f);
    if (!iso.disjoint) return std::nullopt;
    Real total = mp::log(mp::abs(to_real<Real>(f[n])));
    Real err(0);
    for (int i = 0; i < n; ++i) {
      const Real m = iso.z[i].abs();
      if (m > 1) total += mp::log(m);
      err += iso.radius[i];  // log max(1, |z|) is 1-Lipschitz
    }
    const double value = static_cast<double>(total);
    const double bound = static_cast<double>(err) + std::abs(value) * 4e-16 + 1e-300;
    if (bound >= eps * n) return std::nullopt;  // caller divides by the degree
    return MahlerMeasure{value, bound, std::numeric_limits<Real>::digits10};
  });
}

std::vector<mpq_class> rational_roots(const ZPoly& f_in) {
  ZPoly g = upoly::squarefree_part(f_in);
  const int n = upoly::degree(g);
  if (n < 1) return {};
  std::set<mpq_class> found;
  ZPoly rest = g;
  // Peel off a zero root so the scaled polynomial below stays well conditioned.
  if (rest.front() == 0) {
    found.insert(0);
    rest.erase(rest.begin());
  }
  const int m = upoly::degree(rest);
  if (m >= 1) {
    // Rational roots c/d have d | L, so L*y is an integer root of the monic H.
    // H(Z) = L^(m-1) g(Z/L): coefficient k is g_k L^(m-1-k).
    const mpz_class L = rest[m];
    ZPoly h(m + 1, 0);
    mpz_class pw = 1;
    for (int k = m - 1; k >= 0; --k) {
      h[k] = rest[k] * pw;
      pw *= L;
    }
    h[m] = 1;
    auto integer_roots = precision_ladder([&]<class Real>() -> std::optional<std::vector<mpz_class>> {
      Isolation<Real> iso = isolate<Real>(h);
      if (!iso.disjoint) return std::nullopt;
      std::vector<mpz_class> roots;
      for (int i = 0; i < m; ++i) {
        if (iso.radius[i] >= Real("0.25")) return std::nullopt;
        if (mp::abs(iso.z[i].im) > iso.radius[i] + Real("0.5")) continue;
        std::string s = mp::floor(iso.z[i].re).str(0, std::ios_base::fixed);
        if (auto dot = s.find('.'); dot != std::string::npos) s.resize(dot);
        const mpz_class base(s);
        for (int delta = -1; delta <= 2; ++delta) {
          mpz_class cand = base + delta;
          if (upoly::evaluate(h, cand) == 0) roots.push_back(cand);
        }
      }
      return roots;
    });
    for (const auto& z : integer_roots) {
      mpq_class y(z, L);
      y.canonicalize();
      found.insert(y);
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace zpkit::polyroots
