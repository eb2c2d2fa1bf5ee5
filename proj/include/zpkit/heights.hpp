#pragma once

// Absolute logarithmic Weil heights of rationals and algebraic numbers.

#include <gmpxx.h>

#include "zpkit/upoly.hpp"

namespace zpkit::heights {

/// max(|numerator|, |denominator|) of q in lowest terms; 1 for q = 0.
mpz_class height_argument(const mpq_class& q);

/// log max(|numerator|, |denominator|); h(0) = 0.
double height_rational(const mpq_class& q);

/// Natural logarithm of |n| for n != 0, accurate for arbitrarily large n.
double log_abs(const mpz_class& n);

/// An algebraic number represented by its minimal polynomial over Z.
class AlgebraicNumber {
 public:
  /// Normalizes to the primitive part with positive leading coefficient and
  /// checks irreducibility (certified up to degree 8). Throws
  /// Errc::NotIrreducible or Errc::InvalidArgument.
  static AlgebraicNumber from_minimal_polynomial(upoly::ZPoly f);

  const upoly::ZPoly& minimal_polynomial() const { return f_; }
  int degree() const { return upoly::degree(f_); }
  bool irreducibility_certified() const { return certified_; }

 private:
  AlgebraicNumber(upoly::ZPoly f, bool certified) : f_(std::move(f)), certified_(certified) {}
  upoly::ZPoly f_;
  bool certified_ = false;
};

struct HeightEstimate {
  double value = 0;
  /// Certified bound on |value - h(alpha)|, below the requested eps.
  double error_bound = 0;
};

constexpr double kDefaultHeightEpsilon = 1e-12;

/// (1/d) log M(f) for the minimal polynomial f of degree d.
HeightEstimate height_algebraic(const AlgebraicNumber& alpha, double eps = kDefaultHeightEpsilon);

}  // namespace zpkit::heights
