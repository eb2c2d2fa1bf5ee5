#include "zpkit/arith.hpp"

#include <algorithm>
#include <cctype>

#include "zpkit/error.hpp"

namespace zpkit {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MalformedCurve: return "MalformedCurve";
    case Errc::AmbiguousOrder: return "AmbiguousOrder";
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::UnsupportedLevel: return "UnsupportedLevel";
    case Errc::OverlappingIndexSets: return "OverlappingIndexSets";
    case Errc::IndexInI: return "IndexInI";
    case Errc::RootIsolationFailure: return "RootIsolationFailure";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::Overflow: return "Overflow";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace zpkit

namespace zpkit::arith {

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) fail(Errc::InvalidArgument, "inv_mod: element is not a unit");
  return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 c = pow_mod(z, q, p);
  u64 x = pow_mod(a, (q + 1) / 2, p);
  u64 t = pow_mod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b = mul_mod(b, b, p);
    x = mul_mod(x, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return x;
}

u64 mod_of(const mpz_class& a, u64 m) {
  static_assert(sizeof(unsigned long) == sizeof(u64));
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<u64>(lo, 2);
  const u64 root = isqrt(hi);
  std::vector<u64> base;
  {
    std::vector<char> small(root + 1, 1);
    for (u64 i = 2; i <= root; ++i) {
      if (!small[i]) continue;
      base.push_back(i);
      for (u64 j = i * i; j <= root; j += i) small[j] = 0;
    }
  }
  constexpr u64 kSegment = 1 << 18;
  std::vector<char> seg;
  for (u64 start = lo; start <= hi; start += kSegment) {
    const u64 end = std::min(hi, start + kSegment - 1);
    seg.assign(end - start + 1, 1);
    for (u64 p : base) {
      if (p * p > end) break;
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      for (u64 j = first; j <= end; j += p) seg[j - start] = 0;
    }
    for (u64 i = start; i <= end; ++i) {
      if (seg[i - start]) out.push_back(i);
    }
    if (end == hi) break;
  }
  return out;
}

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys, diff;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto step = [&](mpz_class& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          step(y);
          diff = abs(x - y);
          q = q * diff % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        step(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const mpz_class& n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    out.push_back(n);
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n_in) {
  if (n_in == 0) fail(Errc::InvalidArgument, "factor: zero has no factorization");
  mpz_class n = abs(n_in);
  std::vector<mpz_class> primes;
  for (unsigned long d = 2; d < 10000 && n > 1; ++d) {
    if (mpz_class(d) * d > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      primes.emplace_back(d);
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<mpz_class, unsigned>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t existing = out.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

unsigned valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) fail(Errc::InvalidArgument, "valuation of zero");
  unsigned v = 0;
  mpz_class m = n;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

mpz_class parse_integer(std::string_view text, bool allow_exponent) {
  std::string_view s = trim(text);
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view mantissa = s;
  unsigned long exponent = 0;
  if (allow_exponent) {
    auto e = s.find_first_of("eE");
    if (e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view ex = s.substr(e + 1);
      if (!all_digits(ex) || ex.size() > 4) fail(Errc::InvalidArgument, "malformed integer '" + original + "'");
      exponent = std::stoul(std::string(ex));
    }
  }
  if (!all_digits(mantissa)) fail(Errc::InvalidArgument, "malformed integer '" + original + "'");
  mpz_class v(std::string(mantissa), 10);
  if (exponent) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, exponent);
    v *= scale;
  }
  return negative ? mpz_class(-v) : v;
}

mpq_class parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  const std::string original(s);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(s.substr(0, slash));
    mpz_class den = parse_integer(s.substr(slash + 1));
    if (den == 0) fail(Errc::InvalidArgument, "zero denominator in '" + original + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      fail(Errc::InvalidArgument, "malformed rational '" + original + "'");
    mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    mpq_class q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return mpq_class(parse_integer(s));
}

std::string to_string(const mpz_class& v) { return v.get_str(); }

std::string to_string(const mpq_class& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace zpkit::arith
