#pragma once

// Membership in the special subvarieties of Y(1)^n cut out by modular
// polynomials, on points with rational coordinates.
//
// Index triples are 0-based here; the CLI and C API translate from 1-based.
// In a triple (i1, i2, i3) the first entry is the hub: V(I; N, N') asks for
// Phi_N(x_i1, x_i2) = 0 and Phi_N'(x_i1, x_i3) = 0.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace zpkit::locus {

using JTuple = std::vector<mpq_class>;
using Triple = std::array<int, 3>;

/// Outcome of one membership test. Composite levels are decided through chains
/// of prime-level isogenies with rational intermediate j-invariants; such a
/// verdict is a witness only and carries chain = true.
struct Membership {
  bool member = false;
  bool chain = false;
  explicit operator bool() const { return member; }
};

/// Phi_N(x, y) = 0. Level 1 and primes up to the modular polynomial ceiling are
/// exact; composite N whose prime factors are all supported use the chain
/// fallback. Throws Errc::UnsupportedLevel otherwise.
Membership related(const mpq_class& x, const mpq_class& y, int level);

/// Throws Errc::InvalidArgument for repeated or out-of-range indices.
Membership in_V_I(const JTuple& s, const Triple& I, int N, int N2);
/// Throws Errc::OverlappingIndexSets when I and J share an index.
Membership in_V_IJ(const JTuple& s, const Triple& I, const Triple& J, int N, int N2, int M, int M2);
/// Throws Errc::IndexInI when j is one of the entries of I.
Membership in_V_Ij(const JTuple& s, const Triple& I, int j, int N, int N2, int N3);

enum class Kind { V_I, V_IJ, V_Ij };
const char* kind_name(Kind k);

struct LocusCertificate {
  Kind kind = Kind::V_I;
  Triple I{};
  std::optional<Triple> J;
  std::optional<int> j;
  /// (N, N'), (N, N', M, M') or (N, N', N'') depending on kind.
  std::vector<int> levels;
  bool witnessed = true;
  bool chain = false;
};

struct SearchQuery {
  Kind mode = Kind::V_I;
  Triple I{};
  /// When absent in V_IJ mode every triple disjoint from I is tried (hub
  /// first, the other two ascending); likewise every j outside I in V_Ij mode.
  std::optional<Triple> J;
  std::optional<int> j;
  int bound = 13;
};

/// All certificates whose levels are supported and <= bound, ordered by level
/// tuple, then by J or j. Throws Errc::UnsupportedLevel when the bound exceeds
/// the modular polynomial ceiling.
std::vector<LocusCertificate> search_relations(const JTuple& s, const SearchQuery& q);

/// j is one of the 13 rational j-invariants with complex multiplication.
bool is_singular_modulus(const mpq_class& j);
/// The 13 values, ascending.
const std::vector<mpq_class>& rational_singular_moduli();

/// Necessary conditions for s to be Hodge generic relative to I: no coordinate
/// is a singular modulus and no pair of coordinates outside I satisfies a
/// supported modular relation of level <= bound. Passing these checks does
/// not prove genericity, so the verdict is "not refuted up to B".
struct GenericityReport {
  bool refuted = false;
  std::vector<int> singular_positions;
  /// (a, b, level) with a < b, both outside I.
  std::vector<std::array<int, 3>> relations;
  int bound = 0;
  std::string verdict() const;
};

GenericityReport check_genericity(const JTuple& s, const Triple& I, int bound);

}  // namespace zpkit::locus
