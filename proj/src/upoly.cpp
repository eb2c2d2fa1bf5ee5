#include "zpkit/upoly.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "zpkit/arith.hpp"
#include "zpkit/error.hpp"

namespace zpkit::upoly {

using arith::u64;

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const ZPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] != 0) return i;
  }
  return -1;
}

mpz_class content(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive_part(const ZPoly& f_in) {
  ZPoly f = f_in;
  trim(f);
  if (f.empty()) return f;
  mpz_class c = content(f);
  if (f.back() < 0) c = -c;
  for (auto& x : f) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return f;
}

ZPoly derivative(const ZPoly& f) {
  ZPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

ZPoly multiply(const ZPoly& f, const ZPoly& g) {
  if (f.empty() || g.empty()) return {};
  ZPoly h(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
  }
  trim(h);
  return h;
}

mpz_class evaluate(const ZPoly& f, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class evaluate(const ZPoly& f, const mpq_class& x) {
  // Homogenized Horner: sum c_i a^i b^(n-i), divided by b^n.
  const mpz_class& a = x.get_num();
  const mpz_class& b = x.get_den();
  if (f.empty()) return 0;
  mpz_class acc = 0, bpow = 1;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = acc * a + *it * bpow;
    if (it + 1 != f.rend()) bpow *= b;
  }
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), f.size() - 1);
  mpq_class r(acc, den);
  r.canonicalize();
  return r;
}

std::optional<ZPoly> exact_divide(const ZPoly& f_in, const ZPoly& g_in) {
  ZPoly f = f_in, g = g_in;
  trim(f);
  trim(g);
  if (g.empty()) fail(Errc::InvalidArgument, "division by the zero polynomial");
  if (f.empty()) return ZPoly{};
  const int df = degree(f), dg = degree(g);
  if (df < dg) return std::nullopt;
  ZPoly q(df - dg + 1, 0);
  for (int k = df - dg; k >= 0; --k) {
    const mpz_class& top = f[k + dg];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), g.back().get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), g.back().get_mpz_t());
    q[k] = c;
    for (int i = 0; i <= dg; ++i) f[k + i] -= c * g[i];
  }
  trim(f);
  if (!f.empty()) return std::nullopt;
  trim(q);
  return q;
}

namespace {

// Pseudo-remainder of f by g (deg f >= deg g).
ZPoly pseudo_remainder(ZPoly f, const ZPoly& g) {
  const int dg = degree(g);
  while (degree(f) >= dg && !f.empty()) {
    const int df = degree(f);
    const mpz_class lf = f[df];
    for (auto& c : f) c *= g[dg];
    for (int i = 0; i <= dg; ++i) f[df - dg + i] -= lf * g[i];
    trim(f);
  }
  return f;
}

}  // namespace

ZPoly gcd(const ZPoly& f_in, const ZPoly& g_in) {
  ZPoly a = primitive_part(f_in), b = primitive_part(g_in);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = primitive_part(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return primitive_part(a);
}

ZPoly squarefree_part(const ZPoly& f) {
  ZPoly p = primitive_part(f);
  if (degree(p) <= 0) return p;
  ZPoly g = gcd(p, derivative(p));
  if (degree(g) <= 0) return p;
  auto q = exact_divide(p, g);
  // g divides p up to a unit after primitive normalization.
  if (!q) fail(Errc::InvalidArgument, "squarefree_part: inexact division");
  return primitive_part(*q);
}

ZPoly parse_high_to_low(std::string_view text) {
  ZPoly f;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    f.push_back(arith::parse_integer(text.substr(start, comma - start)));
    start = comma + 1;
  }
  std::reverse(f.begin(), f.end());
  trim(f);
  return f;
}

std::string to_string_high_to_low(const ZPoly& f) {
  std::string out;
  for (int i = degree(f); i >= 0; --i) {
    if (!out.empty()) out += ',';
    out += f[i].get_str();
  }
  return out.empty() ? "0" : out;
}

namespace {

using ModPoly = std::vector<u64>;

void trim_mod(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly reduce_mod(const ZPoly& f, u64 p) {
  ModPoly r;
  for (const auto& c : f) r.push_back(arith::mod_of(c, p));
  trim_mod(r);
  return r;
}

void make_monic(ModPoly& f, u64 p) {
  u64 inv = arith::inv_mod(f.back(), p);
  for (auto& c : f) c = arith::mul_mod(c, inv, p);
}

ModPoly rem_mod(ModPoly a, const ModPoly& b, u64 p) {
  const std::size_t db = b.size() - 1;
  const u64 inv = arith::inv_mod(b.back(), p);
  while (a.size() > db && !a.empty()) {
    const u64 c = arith::mul_mod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = arith::sub_mod(a[shift + i], arith::mul_mod(c, b[i], p), p);
    trim_mod(a);
  }
  return a;
}

ModPoly div_mod(ModPoly a, const ModPoly& b, u64 p) {
  const std::size_t db = b.size() - 1;
  const u64 inv = arith::inv_mod(b.back(), p);
  ModPoly q(a.size() >= b.size() ? a.size() - db : 0, 0);
  while (a.size() > db && !a.empty()) {
    const u64 c = arith::mul_mod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - db;
    q[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = arith::sub_mod(a[shift + i], arith::mul_mod(c, b[i], p), p);
    trim_mod(a);
  }
  trim_mod(q);
  return q;
}

ModPoly mulmod_poly(const ModPoly& a, const ModPoly& b, const ModPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly h(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) h[i + j] = arith::add_mod(h[i + j], arith::mul_mod(a[i], b[j], p), p);
  }
  trim_mod(h);
  return rem_mod(std::move(h), m, p);
}

ModPoly gcd_mod(ModPoly a, ModPoly b, u64 p) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    ModPoly r = rem_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) make_monic(a, p);
  return a;
}

ModPoly powmod_poly(ModPoly base, u64 e, const ModPoly& m, u64 p) {
  ModPoly result{1};
  base = rem_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = mulmod_poly(result, base, m, p);
    base = mulmod_poly(base, base, m, p);
    e >>= 1;
  }
  return result;
}

// Degrees of the irreducible factors of a square-free monic f over F_p.
std::vector<int> factor_degrees_mod(ModPoly f, u64 p) {
  std::vector<int> degs;
  ModPoly h{0, 1};
  for (int i = 1; static_cast<int>(f.size()) - 1 >= 2 * i; ++i) {
    h = powmod_poly(h, p, f, p);
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = arith::sub_mod(hx[1], 1, p);
    trim_mod(hx);
    ModPoly g = gcd_mod(f, hx, p);
    const int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0) {
      for (int k = 0; k < dg / i; ++k) degs.push_back(i);
      f = div_mod(f, g, p);
      h = rem_mod(h, f, p);
    }
  }
  if (f.size() > 1) degs.push_back(static_cast<int>(f.size()) - 1);
  return degs;
}

std::set<int> subset_sums(const std::vector<int>& degs) {
  std::set<int> sums{0};
  for (int d : degs) {
    std::set<int> next = sums;
    for (int s : sums) next.insert(s + d);
    sums = std::move(next);
  }
  return sums;
}

// Kronecker: search for an integer factor of exact degree k.
// Returns true when a factor was found; sets cut_off if the search was truncated.
bool kronecker_has_factor(const ZPoly& f, int k, bool& cut_off) {
  struct Sample {
    mpz_class x;
    std::vector<mpz_class> divs;
  };
  std::vector<Sample> pool;
  for (long x = 0; pool.size() < static_cast<std::size_t>(4 * (k + 1)) && x <= 60; x = (x <= 0 ? 1 - x : -x)) {
    mpz_class v = evaluate(f, mpz_class(x));
    if (v == 0) return true;  // linear factor, and k >= 1 factors exist trivially
    pool.push_back({mpz_class(x), arith::divisors(v)});
  }
  std::sort(pool.begin(), pool.end(), [](const Sample& a, const Sample& b) { return a.divs.size() < b.divs.size(); });
  pool.resize(k + 1);

  // Lagrange basis over the chosen nodes.
  std::vector<std::vector<mpq_class>> basis(k + 1);
  for (int i = 0; i <= k; ++i) {
    std::vector<mpq_class> b{1};
    mpq_class denom = 1;
    for (int j = 0; j <= k; ++j) {
      if (j == i) continue;
      std::vector<mpq_class> nb(b.size() + 1, 0);
      for (std::size_t t = 0; t < b.size(); ++t) {
        nb[t + 1] += b[t];
        nb[t] -= b[t] * pool[j].x;
      }
      b = std::move(nb);
      denom *= pool[i].x - pool[j].x;
    }
    for (auto& c : b) c /= denom;
    basis[i] = std::move(b);
  }

  const mpz_class& lead = f.back();
  const mpz_class& constant = f.front();
  constexpr std::size_t kMaxCombinations = 4'000'000;
  std::size_t visited = 0;
  std::vector<mpz_class> values(k + 1);
  bool found = false;
  std::function<void(int)> recurse = [&](int i) {
    if (found || cut_off) return;
    if (i == k + 1) {
      if (++visited > kMaxCombinations) {
        cut_off = true;
        return;
      }
      std::vector<mpq_class> g(k + 1, 0);
      for (int t = 0; t <= k; ++t) {
        for (int c = 0; c <= k; ++c) g[c] += values[t] * basis[t][c];
      }
      if (g[k] == 0) return;
      ZPoly gz;
      for (auto& c : g) {
        if (c.get_den() != 1) return;
        gz.push_back(c.get_num());
      }
      if (!mpz_divisible_p(lead.get_mpz_t(), gz.back().get_mpz_t())) return;
      if (gz.front() == 0 || !mpz_divisible_p(constant.get_mpz_t(), gz.front().get_mpz_t())) return;
      if (exact_divide(f, gz)) found = true;
      return;
    }
    for (const auto& d : pool[i].divs) {
      values[i] = d;
      recurse(i + 1);
      if (i == 0) continue;  // sign of the first value is fixed positive
      values[i] = -d;
      recurse(i + 1);
    }
  };
  recurse(0);
  return found;
}

}  // namespace

IrreducibilityVerdict check_irreducible(const ZPoly& f_in, int max_certified_degree) {
  ZPoly f = f_in;
  trim(f);
  const int d = degree(f);
  if (d <= 0) return {false, true};
  if (d == 1) return {true, true};
  if (content(f) != 1) return {false, true};
  if (f.front() == 0) return {false, true};

  // Candidate degrees of a rational factor, intersected over good primes.
  std::set<int> possible;
  for (int i = 1; i < d; ++i) possible.insert(i);
  const ZPoly df = derivative(f);
  int used = 0;
  for (u64 p = 3; used < 24 && p < 2000 && !possible.empty(); p += 2) {
    if (!arith::is_prime_u64(p)) continue;
    if (arith::mod_of(f.back(), p) == 0) continue;
    ModPoly fm = reduce_mod(f, p);
    ModPoly g = gcd_mod(fm, reduce_mod(df, p), p);
    if (g.size() > 1) continue;
    make_monic(fm, p);
    std::set<int> sums = subset_sums(factor_degrees_mod(fm, p));
    std::set<int> kept;
    for (int s : possible) {
      if (sums.count(s)) kept.insert(s);
    }
    possible = std::move(kept);
    ++used;
  }
  if (possible.empty()) return {true, true};

  if (d > max_certified_degree) return {true, false};
  bool cut_off = false;
  for (int k : possible) {
    if (k > d / 2) break;
    if (kronecker_has_factor(f, k, cut_off)) return {false, true};
  }
  return {true, !cut_off};
}

}  // namespace zpkit::upoly
