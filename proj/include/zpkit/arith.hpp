#pragma once

// Machine-word modular arithmetic, prime sieving and integer factorization.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace zpkit::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}
inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 pow_mod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; a must be a unit.
u64 inv_mod(u64 a, u64 m);
/// Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}.
int legendre(u64 a, u64 p);
/// A square root of a quadratic residue a modulo the odd prime p (Tonelli-Shanks).
u64 sqrt_mod(u64 a, u64 p);
/// Reduce a signed big integer into [0, m).
u64 mod_of(const mpz_class& a, u64 m);

u64 isqrt(u64 n);
bool is_prime_u64(u64 n);

/// All primes in [lo, hi], produced by a segmented sieve of Eratosthenes.
std::vector<u64> primes_in_range(u64 lo, u64 hi);
inline std::vector<u64> primes_up_to(u64 hi) { return primes_in_range(2, hi); }

/// Trial-division factorization of a machine word, ascending primes.
std::vector<std::pair<u64, unsigned>> factor_u64(u64 n);

/// Factorization of |n| (n != 0): trial division then Pollard-Brent rho.
/// Ascending prime order.
std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n);

/// All positive divisors of |n|, ascending.
std::vector<mpz_class> divisors(const mpz_class& n);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const mpz_class& n, const mpz_class& p);

/// Parse a decimal integer, optional sign. Also accepts 1e5-style shorthand
/// when allow_exponent is set. Throws Errc::InvalidArgument.
mpz_class parse_integer(std::string_view text, bool allow_exponent = false);
/// Parse "p/q", "p" or a finite decimal such as "-0.25" into a canonical rational.
mpq_class parse_rational(std::string_view text);

std::string to_string(const mpz_class& v);
std::string to_string(const mpq_class& v);

}  // namespace zpkit::arith
