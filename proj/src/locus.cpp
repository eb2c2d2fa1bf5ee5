#include "zpkit/locus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "zpkit/arith.hpp"
#include "zpkit/error.hpp"
#include "zpkit/modpoly.hpp"
#include "zpkit/polyroots.hpp"

namespace zpkit::locus {

namespace {

std::vector<int> prime_steps(int level) {
  if (level < 1) fail(Errc::UnsupportedLevel, "level " + std::to_string(level) + " is not positive");
  std::vector<int> steps;
  for (const auto& [p, e] : arith::factor_u64(static_cast<arith::u64>(level))) {
    if (!modpoly::is_supported_level(static_cast<int>(p))) {
      fail(Errc::UnsupportedLevel, "level " + std::to_string(level) + " has prime factor " + std::to_string(p) +
                                       " above the modular polynomial ceiling");
    }
    for (unsigned k = 0; k < e; ++k) steps.push_back(static_cast<int>(p));
  }
  return steps;
}

void check_levels(std::initializer_list<int> levels) {
  for (int level : levels) prime_steps(level);
}

// Rational neighbours of x under Phi_p.
std::vector<mpq_class> neighbours(const mpq_class& x, int p) {
  return polyroots::rational_roots(modpoly::modular_polynomial(p).specialize_x(x));
}

// Depth-first search for a non-backtracking walk x -> ... -> target through
// rational j-invariants, taking the prime steps in every distinct order.
bool walk(const mpq_class& cur, const std::optional<mpq_class>& prev, int prev_step, std::vector<int>& remaining,
          const mpq_class& target) {
  if (remaining.empty()) return cur == target;
  std::set<int> tried;
  for (std::size_t k = 0; k < remaining.size(); ++k) {
    const int p = remaining[k];
    if (!tried.insert(p).second) continue;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
    for (const auto& next : neighbours(cur, p)) {
      if (p == prev_step && prev && next == *prev) continue;
      if (walk(next, cur, p, remaining, target)) {
        remaining.insert(remaining.begin() + static_cast<std::ptrdiff_t>(k), p);
        return true;
      }
    }
    remaining.insert(remaining.begin() + static_cast<std::ptrdiff_t>(k), p);
  }
  return false;
}

void check_triple(const JTuple& s, const Triple& t, const char* name) {
  const int n = static_cast<int>(s.size());
  for (int k = 0; k < 3; ++k) {
    if (t[k] < 0 || t[k] >= n) {
      fail(Errc::InvalidArgument, std::string("index set ") + name + " has an entry outside 1.." + std::to_string(n));
    }
  }
  if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) {
    fail(Errc::InvalidArgument, std::string("index set ") + name + " repeats an index");
  }
}

bool contains(const Triple& t, int v) { return std::find(t.begin(), t.end(), v) != t.end(); }

Membership both(const Membership& a, const Membership& b) {
  return {a.member && b.member, a.chain || b.chain};
}

}  // namespace

Membership related(const mpq_class& x, const mpq_class& y, int level) {
  const auto steps = prime_steps(level);
  if (steps.size() <= 1) {
    return {modpoly::modular_polynomial(level).vanishes_at(x, y), false};
  }
  std::vector<int> remaining = steps;
  return {walk(x, std::nullopt, 0, remaining, y), true};
}

Membership in_V_I(const JTuple& s, const Triple& I, int N, int N2) {
  check_triple(s, I, "I");
  check_levels({N, N2});
  const Membership first = related(s[I[0]], s[I[1]], N);
  if (!first.member) return first;
  return both(first, related(s[I[0]], s[I[2]], N2));
}

Membership in_V_IJ(const JTuple& s, const Triple& I, const Triple& J, int N, int N2, int M, int M2) {
  check_triple(s, I, "I");
  check_triple(s, J, "J");
  for (int v : J) {
    if (contains(I, v)) fail(Errc::OverlappingIndexSets, "index sets I and J overlap");
  }
  check_levels({N, N2, M, M2});
  const Membership first = in_V_I(s, I, N, N2);
  if (!first.member) return first;
  return both(first, in_V_I(s, J, M, M2));
}

Membership in_V_Ij(const JTuple& s, const Triple& I, int j, int N, int N2, int N3) {
  check_triple(s, I, "I");
  if (j < 0 || j >= static_cast<int>(s.size())) fail(Errc::InvalidArgument, "index j is out of range");
  if (contains(I, j)) fail(Errc::IndexInI, "index j lies in I");
  check_levels({N, N2, N3});
  const Membership first = in_V_I(s, I, N, N2);
  if (!first.member) return first;
  return both(first, related(s[I[0]], s[j], N3));
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::V_I: return "V_I";
    case Kind::V_IJ: return "V_IJ";
    case Kind::V_Ij: return "V_Ij";
  }
  return "?";
}

std::vector<LocusCertificate> search_relations(const JTuple& s, const SearchQuery& q) {
  if (q.bound > modpoly::kDefaultMaxLevel) {
    fail(Errc::UnsupportedLevel, "search bound " + std::to_string(q.bound) + " exceeds the modular polynomial ceiling " +
                                     std::to_string(modpoly::kDefaultMaxLevel));
  }
  check_triple(s, q.I, "I");
  const int n = static_cast<int>(s.size());
  const std::vector<int> levels = modpoly::supported_levels(q.bound);

  // Levels relating each ordered pair, computed once per unordered pair.
  std::map<std::pair<int, int>, std::vector<int>> table;
  auto rel = [&](int a, int b) -> const std::vector<int>& {
    auto key = std::minmax(a, b);
    auto it = table.find(key);
    if (it == table.end()) {
      std::vector<int> hit;
      for (int lv : levels) {
        if (modpoly::modular_polynomial(lv).vanishes_at(s[key.first], s[key.second])) hit.push_back(lv);
      }
      it = table.emplace(key, std::move(hit)).first;
    }
    return it->second;
  };

  std::vector<LocusCertificate> out;
  const auto& a = rel(q.I[0], q.I[1]);
  const auto& b = rel(q.I[0], q.I[2]);
  if (a.empty() || b.empty()) return out;

  auto base = [&](std::vector<int> lv) {
    LocusCertificate c;
    c.kind = q.mode;
    c.I = q.I;
    c.levels = std::move(lv);
    return c;
  };

  switch (q.mode) {
    case Kind::V_I:
      for (int N : a) {
        for (int N2 : b) out.push_back(base({N, N2}));
      }
      break;
    case Kind::V_Ij: {
      std::vector<int> js;
      if (q.j) {
        if (*q.j < 0 || *q.j >= n) fail(Errc::InvalidArgument, "index j is out of range");
        if (contains(q.I, *q.j)) fail(Errc::IndexInI, "index j lies in I");
        js.push_back(*q.j);
      } else {
        for (int v = 0; v < n; ++v) {
          if (!contains(q.I, v)) js.push_back(v);
        }
      }
      for (int v : js) {
        for (int N : a) {
          for (int N2 : b) {
            for (int N3 : rel(q.I[0], v)) {
              auto c = base({N, N2, N3});
              c.j = v;
              out.push_back(std::move(c));
            }
          }
        }
      }
      break;
    }
    case Kind::V_IJ: {
      std::vector<Triple> Js;
      if (q.J) {
        check_triple(s, *q.J, "J");
        for (int v : *q.J) {
          if (contains(q.I, v)) fail(Errc::OverlappingIndexSets, "index sets I and J overlap");
        }
        Js.push_back(*q.J);
      } else {
        std::vector<int> rest;
        for (int v = 0; v < n; ++v) {
          if (!contains(q.I, v)) rest.push_back(v);
        }
        for (int hub : rest) {
          for (int x : rest) {
            for (int y : rest) {
              if (x != hub && y != hub && x < y) Js.push_back({hub, x, y});
            }
          }
        }
      }
      for (const auto& J : Js) {
        const auto& c1 = rel(J[0], J[1]);
        const auto& c2 = rel(J[0], J[2]);
        for (int N : a) {
          for (int N2 : b) {
            for (int M : c1) {
              for (int M2 : c2) {
                auto c = base({N, N2, M, M2});
                c.J = J;
                out.push_back(std::move(c));
              }
            }
          }
        }
      }
      break;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const LocusCertificate& x, const LocusCertificate& y) {
    return std::tie(x.levels, x.J, x.j) < std::tie(y.levels, y.J, y.j);
  });
  return out;
}

const std::vector<mpq_class>& rational_singular_moduli() {
  static const std::vector<mpq_class> values = [] {
    std::vector<mpq_class> v;
    for (const char* s : {"0", "1728", "-3375", "8000", "-32768", "54000", "287496", "-884736", "-12288000",
                          "16581375", "-884736000", "-147197952000", "-262537412640768000"}) {
      v.emplace_back(mpz_class(s));
    }
    std::sort(v.begin(), v.end());
    return v;
  }();
  return values;
}

bool is_singular_modulus(const mpq_class& j) {
  const auto& v = rational_singular_moduli();
  return std::binary_search(v.begin(), v.end(), j);
}

std::string GenericityReport::verdict() const {
  return refuted ? "refuted" : "not refuted up to " + std::to_string(bound);
}

GenericityReport check_genericity(const JTuple& s, const Triple& I, int bound) {
  check_triple(s, I, "I");
  GenericityReport r;
  r.bound = bound;
  const int n = static_cast<int>(s.size());
  for (int k = 0; k < n; ++k) {
    if (is_singular_modulus(s[k])) r.singular_positions.push_back(k);
  }
  for (int x = 0; x < n; ++x) {
    if (contains(I, x)) continue;
    for (int y = x + 1; y < n; ++y) {
      if (contains(I, y)) continue;
      for (int lv : modpoly::isogeny_degree_search(s[x], s[y], bound)) r.relations.push_back({x, y, lv});
    }
  }
  r.refuted = !r.singular_positions.empty() || !r.relations.empty();
  return r;
}

}  // namespace zpkit::locus
