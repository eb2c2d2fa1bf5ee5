#pragma once

// Elliptic curves over Q given by integral Weierstrass models, their
// reductions modulo primes, and trace-of-Frobenius computation.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace zpkit::curve {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Integral model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
class RationalCurve {
 public:
  /// Throws Errc::MalformedCurve when the discriminant vanishes.
  explicit RationalCurve(std::array<mpz_class, 5> coefficients, std::string label = {});

  const std::array<mpz_class, 5>& coefficients() const { return a_; }
  const mpz_class& a1() const { return a_[0]; }
  const mpz_class& a2() const { return a_[1]; }
  const mpz_class& a3() const { return a_[2]; }
  const mpz_class& a4() const { return a_[3]; }
  const mpz_class& a6() const { return a_[4]; }
  const mpz_class& c4() const { return c4_; }
  const mpz_class& c6() const { return c6_; }
  const mpz_class& discriminant() const { return disc_; }
  const mpq_class& j_invariant() const { return j_; }
  /// Caller-facing identifier; defaults to the canonical coefficient list.
  const std::string& label() const { return label_; }
  /// "[a1,a2,a3,a4,a6]", the curve's identity.
  std::string coefficient_string() const;

  bool operator==(const RationalCurve& other) const { return a_ == other.a_; }

 private:
  std::array<mpz_class, 5> a_;
  mpz_class c4_, c6_, disc_;
  mpq_class j_;
  std::string label_;
};

/// Accepts "[a1,a2,a3,a4,a6]" or the shorthand "y^2=x^3+Ax+B" (A, B integers,
/// either term may be omitted). Throws Errc::MalformedCurve.
RationalCurve parse_curve(std::string_view text);

/// Short Weierstrass model y^2 = x^3 + a4 x + a6 over F_p, p >= 5.
struct PrimeFieldCurve {
  u64 p = 0;
  u64 a4 = 0;
  u64 a6 = 0;
  std::optional<i64> ap;
};

enum class ReductionType { GoodOrdinary, GoodSupersingular, Bad };

const char* reduction_code(ReductionType t);  // "O", "S", "B"
const char* reduction_name(ReductionType t);

/// Short model mod p when p >= 5 and p does not divide the model discriminant.
/// Primes 2 and 3 are always treated as bad. p must be prime.
std::optional<PrimeFieldCurve> reduce_mod_p(const RationalCurve& e, u64 p);

/// Builds the short model directly; throws Errc::InvalidArgument if singular or p < 5.
PrimeFieldCurve make_prime_field_curve(u64 p, u64 a4, u64 a6);

/// p + 1 - #E(F_p) by the quadratic-character sum over all x in F_p.
i64 trace_exhaustive(const PrimeFieldCurve& c);

/// Trace from baby-step giant-step point orders on the curve and its quadratic
/// twist (#E + #E' = 2p + 2). Throws Errc::AmbiguousOrder when the collected
/// orders leave more than one trace in the Hasse interval.
i64 trace_bsgs(const PrimeFieldCurve& c);

struct CountingOptions {
  /// Exhaustive counting strictly below this prime, BSGS at or above it.
  u64 exhaustive_below = 10000;
};

/// Dispatches between the two counting methods. If BSGS reports an ambiguous
/// order (possible only for very small p) the exhaustive count decides.
i64 trace_of_frobenius(const PrimeFieldCurve& c, const CountingOptions& opts = {});

/// a_p == 0; computes the trace when absent.
bool is_supersingular(const PrimeFieldCurve& c, const CountingOptions& opts = {});

struct LocalData {
  ReductionType type = ReductionType::Bad;
  /// Trace at good primes; zero at bad primes.
  i64 ap = 0;
};

LocalData local_data(const RationalCurve& e, u64 p, const CountingOptions& opts = {});
inline ReductionType reduction_type(const RationalCurve& e, u64 p, const CountingOptions& opts = {}) {
  return local_data(e, p, opts).type;
}

}  // namespace zpkit::curve
