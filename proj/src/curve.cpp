#include "zpkit/curve.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "zpkit/arith.hpp"
#include "zpkit/error.hpp"

namespace zpkit::curve {

using arith::add_mod;
using arith::mul_mod;
using arith::sub_mod;

RationalCurve::RationalCurve(std::array<mpz_class, 5> coefficients, std::string label)
    : a_(std::move(coefficients)) {
  const auto& [a1, a2, a3, a4, a6] = a_;
  const mpz_class b2 = a1 * a1 + 4 * a2;
  const mpz_class b4 = 2 * a4 + a1 * a3;
  const mpz_class b6 = a3 * a3 + 4 * a6;
  const mpz_class b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  c4_ = b2 * b2 - 24 * b4;
  c6_ = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  disc_ = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc_ == 0) fail(Errc::MalformedCurve, "singular Weierstrass model " + coefficient_string());
  j_ = mpq_class(c4_ * c4_ * c4_, disc_);
  j_.canonicalize();
  label_ = label.empty() ? coefficient_string() : std::move(label);
}

std::string RationalCurve::coefficient_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (i) s += ',';
    s += a_[i].get_str();
  }
  return s + "]";
}

namespace {

std::string strip_spaces(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  return s;
}

}  // namespace

RationalCurve parse_curve(std::string_view text) {
  const std::string s = strip_spaces(text);
  try {
    if (!s.empty() && s.front() == '[') {
      if (s.back() != ']') fail(Errc::MalformedCurve, "unterminated coefficient list '" + s + "'");
      std::string_view body(s);
      body = body.substr(1, body.size() - 2);
      std::array<mpz_class, 5> a;
      std::size_t count = 0, start = 0;
      while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        if (comma == std::string_view::npos) comma = body.size();
        if (count == 5) fail(Errc::MalformedCurve, "expected five coefficients in '" + s + "'");
        a[count++] = arith::parse_integer(body.substr(start, comma - start));
        start = comma + 1;
      }
      if (count != 5) fail(Errc::MalformedCurve, "expected five coefficients in '" + s + "'");
      return RationalCurve(std::move(a));
    }
    const std::string prefix = "y^2=x^3";
    if (s.rfind(prefix, 0) != 0) fail(Errc::MalformedCurve, "unrecognized curve syntax '" + s + "'");
    mpz_class A = 0, B = 0;
    bool seen_a = false, seen_b = false;
    std::size_t i = prefix.size();
    while (i < s.size()) {
      if (s[i] != '+' && s[i] != '-') fail(Errc::MalformedCurve, "expected sign in '" + s + "'");
      const bool negative = s[i] == '-';
      ++i;
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      const std::string digits = s.substr(i, j - i);
      if (j < s.size() && s[j] == '*') ++j;
      if (j < s.size() && s[j] == 'x') {
        if (seen_a) fail(Errc::MalformedCurve, "repeated x term in '" + s + "'");
        mpz_class c = digits.empty() ? mpz_class(1) : mpz_class(digits);
        A = negative ? mpz_class(-c) : c;
        seen_a = true;
        ++j;
      } else {
        if (digits.empty() || seen_b) fail(Errc::MalformedCurve, "malformed constant term in '" + s + "'");
        mpz_class c(digits);
        B = negative ? mpz_class(-c) : c;
        seen_b = true;
      }
      i = j;
    }
    return RationalCurve({0, 0, 0, A, B});
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedCurve) throw;
    fail(Errc::MalformedCurve, e.what());
  }
}

const char* reduction_code(ReductionType t) {
  switch (t) {
    case ReductionType::GoodOrdinary: return "O";
    case ReductionType::GoodSupersingular: return "S";
    case ReductionType::Bad: return "B";
  }
  return "?";
}

const char* reduction_name(ReductionType t) {
  switch (t) {
    case ReductionType::GoodOrdinary: return "GoodOrdinary";
    case ReductionType::GoodSupersingular: return "GoodSupersingular";
    case ReductionType::Bad: return "Bad";
  }
  return "?";
}

namespace {

bool singular_mod_p(u64 p, u64 a4, u64 a6) {
  u64 lhs = mul_mod(4, mul_mod(a4, mul_mod(a4, a4, p), p), p);
  u64 rhs = mul_mod(27, mul_mod(a6, a6, p), p);
  return add_mod(lhs, rhs, p) == 0;
}

}  // namespace

PrimeFieldCurve make_prime_field_curve(u64 p, u64 a4, u64 a6) {
  if (p < 5) fail(Errc::InvalidArgument, "prime field curves need p >= 5");
  a4 %= p;
  a6 %= p;
  if (singular_mod_p(p, a4, a6)) fail(Errc::InvalidArgument, "singular curve modulo " + std::to_string(p));
  return {p, a4, a6, std::nullopt};
}

std::optional<PrimeFieldCurve> reduce_mod_p(const RationalCurve& e, u64 p) {
  if (p <= 3) return std::nullopt;
  if (arith::mod_of(e.discriminant(), p) == 0) return std::nullopt;
  // Completing the square and the cube: A = -c4/48, B = -c6/864.
  const u64 c4 = arith::mod_of(e.c4(), p);
  const u64 c6 = arith::mod_of(e.c6(), p);
  const u64 a4 = mul_mod(sub_mod(0, c4, p), arith::inv_mod(48 % p, p), p);
  const u64 a6 = mul_mod(sub_mod(0, c6, p), arith::inv_mod(864 % p, p), p);
  return PrimeFieldCurve{p, a4, a6, std::nullopt};
}

i64 trace_exhaustive(const PrimeFieldCurve& c) {
  const u64 p = c.p;
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 t = 1; t <= p / 2; ++t) chi[mul_mod(t, t, p)] = 1;
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 x2 = mul_mod(x, x, p);
    const u64 f = add_mod(add_mod(mul_mod(x2, x, p), mul_mod(c.a4, x, p), p), c.a6, p);
    sum += chi[f];
  }
  return -sum;
}

namespace {

struct Point {
  u64 x = 0;
  u64 y = 0;
  bool inf = true;
  bool operator==(const Point&) const = default;
};

struct PointHash {
  std::size_t operator()(const Point& q) const noexcept {
    if (q.inf) return 0x51ed27;
    return std::hash<u64>{}(q.x * 0x9E3779B97F4A7C15ULL ^ q.y);
  }
};

class CurveGroup {
 public:
  CurveGroup(u64 p, u64 a, u64 b) : p_(p), a_(a), b_(b) {}

  Point neg(const Point& q) const {
    if (q.inf) return q;
    return {q.x, sub_mod(0, q.y, p_), false};
  }

  Point add(const Point& P, const Point& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lambda;
    if (P.x == Q.x) {
      if (add_mod(P.y, Q.y, p_) == 0) return {};
      const u64 num = add_mod(mul_mod(3, mul_mod(P.x, P.x, p_), p_), a_, p_);
      lambda = mul_mod(num, arith::inv_mod(add_mod(P.y, P.y, p_), p_), p_);
    } else {
      lambda = mul_mod(sub_mod(Q.y, P.y, p_), arith::inv_mod(sub_mod(Q.x, P.x, p_), p_), p_);
    }
    const u64 x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p_), P.x, p_), Q.x, p_);
    const u64 y3 = sub_mod(mul_mod(lambda, sub_mod(P.x, x3, p_), p_), P.y, p_);
    return {x3, y3, false};
  }

  Point mul(u64 k, Point P) const {
    Point R;
    while (k) {
      if (k & 1) R = add(R, P);
      P = add(P, P);
      k >>= 1;
    }
    return R;
  }

  Point random_point(std::mt19937_64& rng) const {
    std::uniform_int_distribution<u64> dist(0, p_ - 1);
    for (;;) {
      const u64 x = dist(rng);
      const u64 f = add_mod(add_mod(mul_mod(mul_mod(x, x, p_), x, p_), mul_mod(a_, x, p_), p_), b_, p_);
      if (f == 0) return {x, 0, false};
      if (arith::legendre(f, p_) == 1) return {x, arith::sqrt_mod(f, p_), false};
    }
  }

  // Replaces the subgroup S by <S, g>.
  void extend_subgroup(std::unordered_set<Point, PointHash>& S, const Point& g) const {
    std::vector<Point> base(S.begin(), S.end());
    Point shift = g;
    while (!S.count(shift)) {
      for (const Point& s : base) S.insert(add(s, shift));
      shift = add(shift, g);
    }
  }

  // Exact order of P, given that some multiple of P in [lo, hi] is zero.
  u64 order(const Point& P, u64 lo, u64 hi) const {
    if (P.inf) return 1;
    const u64 width = hi - lo;
    const u64 m = arith::isqrt(width) + 1;
    std::unordered_map<Point, u64, PointHash> baby;
    baby.reserve(m * 2);
    Point R;
    for (u64 j = 0; j < m; ++j) {
      baby.emplace(R, j);
      R = add(R, P);
    }
    const Point giant = mul(m, P);
    Point S = mul(lo, P);
    u64 multiple = 0;
    for (u64 base = lo; base <= hi; base += m) {
      auto it = baby.find(neg(S));
      if (it != baby.end() && base + it->second <= hi) {
        multiple = base + it->second;
        break;
      }
      S = add(S, giant);
    }
    if (multiple == 0) fail(Errc::InvalidArgument, "point order outside the Hasse interval");
    for (const auto& [q, e] : arith::factor_u64(multiple)) {
      for (unsigned k = 0; k < e; ++k) {
        if (!mul(multiple / q, P).inf) break;
        multiple /= q;
      }
    }
    return multiple;
  }

 private:
  u64 p_, a_, b_;
};

constexpr u64 kSubgroupEnumerationLimit = 100000;

}  // namespace

i64 trace_bsgs(const PrimeFieldCurve& c) {
  const u64 p = c.p;
  if (p < 5) fail(Errc::InvalidArgument, "BSGS counting needs p >= 5");
  const i64 H = static_cast<i64>(arith::isqrt(4 * p));
  const u64 lo = p + 1 - static_cast<u64>(H);
  const u64 hi = p + 1 + static_cast<u64>(H);

  u64 d = 2;
  while (arith::legendre(d, p) != -1) ++d;
  const u64 d2 = mul_mod(d, d, p);
  const CurveGroup curve(p, c.a4, c.a6);
  const CurveGroup twist(p, mul_mod(c.a4, d2, p), mul_mod(c.a6, mul_mod(d2, d, p), p));

  std::mt19937_64 rng(p * 0x9E3779B97F4A7C15ULL ^ (c.a4 << 21) ^ (c.a6 * 0xC2B2AE3D27D4EB4FULL));
  u64 lcm_curve = 1, lcm_twist = 1;
  constexpr int kRounds = 48;
  for (int round = 0; round < kRounds; ++round) {
    // #E = p + 1 - a_p, #E' = p + 1 + a_p.
    i64 candidate = 0;
    int found = 0;
    for (i64 a = -H; a <= H && found < 2; ++a) {
      const u64 n = p + 1 - static_cast<u64>(a);
      const u64 n_twist = p + 1 + static_cast<u64>(a);
      if (n % lcm_curve == 0 && n_twist % lcm_twist == 0) {
        candidate = a;
        ++found;
      }
    }
    if (found == 1) return candidate;
    if (round % 2 == 0) {
      lcm_curve = std::lcm(lcm_curve, curve.order(curve.random_point(rng), lo, hi));
    } else {
      lcm_twist = std::lcm(lcm_twist, twist.order(twist.random_point(rng), lo, hi));
    }
  }
  // Exponents alone can leave several traces for tiny p (below Mestre's bound
  // of 457). Sizes of subgroups generated by random points on the curve and
  // its twist divide the respective orders; once both subgroups are the full
  // groups the trace is unique.
  if (p > kSubgroupEnumerationLimit) {
    fail(Errc::AmbiguousOrder, "group order not determined in the Hasse interval for p = " + std::to_string(p));
  }
  std::unordered_set<Point, PointHash> sub_curve{Point{}}, sub_twist{Point{}};
  for (int round = 0; round < kRounds; ++round) {
    if (round % 2 == 0) {
      curve.extend_subgroup(sub_curve, curve.random_point(rng));
    } else {
      twist.extend_subgroup(sub_twist, twist.random_point(rng));
    }
    i64 candidate = 0;
    int found = 0;
    for (i64 a = -H; a <= H && found < 2; ++a) {
      const u64 n = p + 1 - static_cast<u64>(a);
      const u64 n_twist = p + 1 + static_cast<u64>(a);
      if (n % lcm_curve == 0 && n_twist % lcm_twist == 0 && n % sub_curve.size() == 0 &&
          n_twist % sub_twist.size() == 0) {
        candidate = a;
        ++found;
      }
    }
    if (found == 1) return candidate;
  }
  fail(Errc::AmbiguousOrder, "group order not determined in the Hasse interval for p = " + std::to_string(p));
}

i64 trace_of_frobenius(const PrimeFieldCurve& c, const CountingOptions& opts) {
  if (c.ap) return *c.ap;
  if (c.p < opts.exhaustive_below) return trace_exhaustive(c);
  try {
    return trace_bsgs(c);
  } catch (const Error& e) {
    if (e.code() != Errc::AmbiguousOrder) throw;
    return trace_exhaustive(c);
  }
}

bool is_supersingular(const PrimeFieldCurve& c, const CountingOptions& opts) {
  return trace_of_frobenius(c, opts) == 0;
}

LocalData local_data(const RationalCurve& e, u64 p, const CountingOptions& opts) {
  auto reduced = reduce_mod_p(e, p);
  if (!reduced) return {ReductionType::Bad, 0};
  const i64 ap = trace_of_frobenius(*reduced, opts);
  return {ap == 0 ? ReductionType::GoodSupersingular : ReductionType::GoodOrdinary, ap};
}

}  // namespace zpkit::curve
