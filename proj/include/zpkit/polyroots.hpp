#pragma once

// Certified complex root isolation for square-free integer polynomials.
//
// Roots are approximated by Aberth-Ehrlich iteration in binary floating point
// with a precision ladder (30, 60, ..., 960 decimal digits). Each approximation
// z_i gets the inclusion radius n |W_i| (Weierstrass correction W_i, plus a
// bound on rounding in evaluating f); when the disks are pairwise disjoint each
// holds exactly one root. Precision is raised until the caller's accuracy
// target is met.

#include <vector>

#include <gmpxx.h>

#include "zpkit/upoly.hpp"

namespace zpkit::polyroots {

struct MahlerMeasure {
  /// log M(f) = log|a_n| + sum log max(1, |root|).
  double log_measure = 0;
  /// Certified bound on |log_measure - true value|.
  double error_bound = 0;
  unsigned digits = 0;
};

/// f must be square-free of degree >= 1. Throws Errc::RootIsolationFailure
/// when the ladder is exhausted before the error bound drops below eps.
MahlerMeasure log_mahler_measure(const upoly::ZPoly& f, double eps);

/// All distinct rational roots of f (any nonzero f), ascending.
std::vector<mpq_class> rational_roots(const upoly::ZPoly& f);

}  // namespace zpkit::polyroots
