#pragma once

// Dense univariate polynomials over Z, coefficients stored low degree first.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace zpkit::upoly {

using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& f);
/// Degree; the zero polynomial has degree -1.
int degree(const ZPoly& f);
mpz_class content(const ZPoly& f);
/// f divided by its content, with positive leading coefficient.
ZPoly primitive_part(const ZPoly& f);
ZPoly derivative(const ZPoly& f);
ZPoly multiply(const ZPoly& f, const ZPoly& g);
mpz_class evaluate(const ZPoly& f, const mpz_class& x);
mpq_class evaluate(const ZPoly& f, const mpq_class& x);

/// Quotient f/g when g divides f in Z[x], nothing otherwise.
std::optional<ZPoly> exact_divide(const ZPoly& f, const ZPoly& g);
/// Primitive gcd in Z[x] (positive leading coefficient).
ZPoly gcd(const ZPoly& f, const ZPoly& g);
/// Primitive square-free part.
ZPoly squarefree_part(const ZPoly& f);

/// Parse "c_d,...,c_0" (highest degree first).
ZPoly parse_high_to_low(std::string_view text);
std::string to_string_high_to_low(const ZPoly& f);

struct IrreducibilityVerdict {
  bool irreducible = false;
  /// False when the degree exceeds the certification cap or the search was cut off.
  bool certified = false;
};

/// Irreducibility over Q of a primitive polynomial: factor-degree patterns
/// modulo small primes, then Kronecker's interpolation search over the
/// surviving candidate factor degrees. Certified for degree <= max_certified_degree.
IrreducibilityVerdict check_irreducible(const ZPoly& f, int max_certified_degree = 8);

}  // namespace zpkit::upoly
