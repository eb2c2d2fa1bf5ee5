#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles/cm_oracle.hpp"
#include "oracles/locus_oracle.hpp"
#include "zpkit/error.hpp"
#include "zpkit/locus.hpp"
#include "zpkit/modpoly.hpp"
#include "zpkit/polyroots.hpp"

using namespace zpkit;
using locus::JTuple;
using locus::Kind;

namespace {

JTuple tuple(std::initializer_list<long> v) {
  JTuple s;
  for (long x : v) s.emplace_back(x);
  return s;
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{};
}

}  // namespace

TEST_SUITE("locus") {
  TEST_CASE("membership examples") {
    CHECK(locus::in_V_I(tuple({7, 7, 7, 0}), {0, 1, 2}, 1, 1));
    CHECK(locus::in_V_I(tuple({1728, 287496, 1728, 5}), {0, 1, 2}, 2, 1));
    CHECK_FALSE(locus::in_V_I(tuple({0, 1, 2, 3}), {0, 1, 2}, 2, 2));

    CHECK(locus::in_V_IJ(tuple({7, 7, 7, 9, 9, 9}), {0, 1, 2}, {3, 4, 5}, 1, 1, 1, 1));
    CHECK_FALSE(locus::in_V_IJ(tuple({7, 7, 7, 9, 9, 8}), {0, 1, 2}, {3, 4, 5}, 1, 1, 1, 1));
    CHECK(locus::in_V_IJ(tuple({1728, 287496, 1728, 0, 54000, 0}), {0, 1, 2}, {3, 4, 5}, 2, 1, 2, 1));

    CHECK(locus::in_V_Ij(tuple({7, 7, 7, 7}), {0, 1, 2}, 3, 1, 1, 1));
    CHECK_FALSE(locus::in_V_Ij(tuple({7, 7, 7, 8}), {0, 1, 2}, 3, 1, 1, 1));
    CHECK(locus::in_V_Ij(tuple({1728, 1728, 1728, 287496}), {0, 1, 2}, 3, 1, 1, 2));
  }

  TEST_CASE("search examples") {
    locus::SearchQuery q;
    q.mode = Kind::V_Ij;
    q.I = {0, 1, 2};
    auto certs = locus::search_relations(tuple({7, 7, 7, 7}), q);
    REQUIRE_FALSE(certs.empty());
    CHECK(certs.front().j == 3);
    CHECK(certs.front().levels == std::vector<int>{1, 1, 1});
    CHECK(certs.front().witnessed);

    CHECK(locus::search_relations(tuple({0, 1, 2, 3}), q).empty());

    q.mode = Kind::V_I;
    certs = locus::search_relations(tuple({1728, 287496, 1728, 5}), q);
    REQUIRE_FALSE(certs.empty());
    CHECK(certs.front().levels == std::vector<int>{2, 1});
    // j = 1728 has CM by Z[i]; it is 2-, 5- and 13-isogenous to itself.
    for (const auto& c : certs) CHECK(c.levels[0] == 2);
  }

  TEST_CASE("invariants on random and constructed tuples") {
    std::mt19937_64 rng(3);
    const std::vector<mpq_class> pool{0, 1728, 287496, 54000, 8000, -3375, 7, mpq_class(1, 2), 16581375};
    for (int trial = 0; trial < 60; ++trial) {
      JTuple s;
      for (int k = 0; k < 6; ++k) s.push_back(pool[rng() % pool.size()]);
      for (int N : {1, 2, 3}) {
        for (int N2 : {1, 2, 3}) {
          const bool a = bool(locus::in_V_I(s, {0, 1, 2}, N, N2));
          CHECK(a == bool(locus::in_V_I(s, {0, 2, 1}, N2, N)));
          for (int M : {1, 2}) {
            const bool b = bool(locus::in_V_I(s, {3, 4, 5}, M, 1));
            CHECK(bool(locus::in_V_IJ(s, {0, 1, 2}, {3, 4, 5}, N, N2, M, 1)) == (a && b));
          }
        }
      }
      JTuple eq = s;
      eq[1] = eq[0];
      eq[2] = eq[0];
      CHECK(locus::in_V_I(eq, {0, 1, 2}, 1, 1));
    }
  }

  TEST_CASE("search agrees with brute force and its certificates re-verify") {
    std::vector<JTuple> points;
    for (long t : {1L, 2L, -8L, 5L}) {
      auto [a, b] = oracle::x0_2(t);
      auto [c, d] = oracle::x0_3(t);
      points.push_back({a, b, a, c, d, c});
      points.push_back({c, d, a, b, a, 1728});
    }
    points.push_back(tuple({1728, 287496, 1728, 0, 54000, 0}));
    points.push_back(tuple({0, 54000, 0, 1728, 1728, 287496}));
    points.push_back(tuple({3, 5, 9, 11, 13, 17}));
    for (const auto& s : points) {
      for (Kind mode : {Kind::V_I, Kind::V_Ij, Kind::V_IJ}) {
        locus::SearchQuery q;
        q.mode = mode;
        q.I = {0, 1, 2};
        q.bound = 7;
        const auto certs = locus::search_relations(s, q);
        CHECK(oracle::as_found(certs) == oracle::brute_force(s, q));
        CHECK(std::is_sorted(certs.begin(), certs.end(),
                             [](const auto& x, const auto& y) { return x.levels < y.levels; }));
        for (const auto& c : certs) {
          const auto& L = c.levels;
          if (mode == Kind::V_I) CHECK(locus::in_V_I(s, c.I, L[0], L[1]));
          if (mode == Kind::V_Ij) CHECK(locus::in_V_Ij(s, c.I, *c.j, L[0], L[1], L[2]));
          if (mode == Kind::V_IJ) CHECK(locus::in_V_IJ(s, c.I, *c.J, L[0], L[1], L[2], L[3]));
        }
      }
    }
  }

  TEST_CASE("composite levels through rational chains") {
    // Look for a non-backtracking rational 2-2 chain a -> b -> c starting on X_0(2).
    std::optional<std::pair<mpq_class, mpq_class>> chain;
    for (long t = -60; t <= 60 && !chain; ++t) {
      if (t == 0) continue;
      const auto [a, b] = oracle::x0_2(t);
      for (const auto& c : polyroots::rational_roots(modpoly::modular_polynomial(2).specialize_x(b))) {
        if (c != a) chain = std::make_pair(a, c);
      }
    }
    REQUIRE(chain);
    const auto m = locus::related(chain->first, chain->second, 4);
    CHECK(m.member);
    CHECK(m.chain);
    CHECK(locus::related(1728, 287496, 2).member);
    CHECK_FALSE(locus::related(1728, 287496, 2).chain);
    CHECK_FALSE(locus::related(3, 5, 6).member);
    CHECK(code_of([] { locus::related(0, 1, 17); }) == Errc::UnsupportedLevel);
    CHECK(code_of([] { locus::related(0, 1, 34); }) == Errc::UnsupportedLevel);
    CHECK(code_of([] { locus::related(0, 1, 0); }) == Errc::UnsupportedLevel);
  }

  TEST_CASE("errors") {
    const auto s = tuple({1, 2, 3, 4, 5, 6});
    CHECK(code_of([&] { locus::in_V_IJ(s, {0, 1, 2}, {2, 3, 4}, 1, 1, 1, 1); }) == Errc::OverlappingIndexSets);
    CHECK(code_of([&] { locus::in_V_Ij(s, {0, 1, 2}, 1, 1, 1, 1); }) == Errc::IndexInI);
    CHECK(code_of([&] { locus::in_V_I(s, {0, 1, 1}, 1, 1); }) == Errc::InvalidArgument);
    CHECK(code_of([&] { locus::in_V_I(s, {0, 1, 6}, 1, 1); }) == Errc::InvalidArgument);
    CHECK(code_of([&] { locus::in_V_I(s, {0, 1, 2}, 1, 19); }) == Errc::UnsupportedLevel);
    locus::SearchQuery q;
    q.bound = 17;
    CHECK(code_of([&] { locus::search_relations(s, q); }) == Errc::UnsupportedLevel);
  }

  TEST_CASE("singular moduli match the numerical CM oracle") {
    std::set<mpq_class> expected;
    for (int D : oracle::class_number_one_discriminants()) expected.insert(mpq_class(oracle::singular_modulus(D)));
    CHECK(expected.size() == 13);
    const auto& values = locus::rational_singular_moduli();
    CHECK(std::set<mpq_class>(values.begin(), values.end()) == expected);
    CHECK(std::is_sorted(values.begin(), values.end()));
    CHECK(locus::is_singular_modulus(0));
    CHECK(locus::is_singular_modulus(1728));
    CHECK_FALSE(locus::is_singular_modulus(5));
    CHECK_FALSE(locus::is_singular_modulus(mpq_class(1, 2)));
    CHECK(oracle::singular_modulus(-163) == mpz_class("-262537412640768000"));
  }

  TEST_CASE("genericity check") {
    auto r = locus::check_genericity(tuple({7, 7, 7, 0, 11}), {0, 1, 2}, 13);
    CHECK(r.refuted);
    CHECK(r.singular_positions == std::vector<int>{3});
    CHECK(r.verdict() == "refuted");

    r = locus::check_genericity(tuple({7, 7, 7, 1728, 287496}), {0, 1, 2}, 13);
    CHECK(r.refuted);

    r = locus::check_genericity(tuple({7, 8, 9, 5, 100}), {0, 1, 2}, 13);
    CHECK_FALSE(r.refuted);
    CHECK(r.relations.empty());
    CHECK(r.verdict() == "not refuted up to 13");
  }
}
