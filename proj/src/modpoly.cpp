#include "zpkit/modpoly.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <sstream>

#include "zpkit/arith.hpp"
#include "zpkit/error.hpp"
#include "zpkit/qseries.hpp"

namespace zpkit::modpoly {

ModularPolynomial::ModularPolynomial(int level, Coefficients coefficients)
    : level_(level), coeffs_(std::move(coefficients)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it = (it->second == 0) ? coeffs_.erase(it) : std::next(it);
  }
}

mpz_class ModularPolynomial::coefficient(int i, int j) const {
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? mpz_class(0) : it->second;
}

int ModularPolynomial::degree_x() const {
  int d = -1;
  for (const auto& [k, c] : coeffs_) d = std::max(d, k.first);
  return d;
}

int ModularPolynomial::degree_y() const {
  int d = -1;
  for (const auto& [k, c] : coeffs_) d = std::max(d, k.second);
  return d;
}

bool ModularPolynomial::is_symmetric() const {
  for (const auto& [k, c] : coeffs_) {
    if (coefficient(k.second, k.first) != c) return false;
  }
  return true;
}

namespace {

// Powers num^0..num^n paired with den^n..den^0.
struct HomogeneousPowers {
  std::vector<mpz_class> num, den;
  HomogeneousPowers(const mpq_class& q, int n) : num(n + 1), den(n + 1) {
    num[0] = 1;
    den[0] = 1;
    for (int i = 1; i <= n; ++i) {
      num[i] = num[i - 1] * q.get_num();
      den[i] = den[i - 1] * q.get_den();
    }
  }
  // a^i b^(n - i)
  mpz_class term(int i) const { return num[i] * den[den.size() - 1 - i]; }
};

mpz_class cleared_value(const ModularPolynomial::Coefficients& coeffs, const mpq_class& x, const mpq_class& y, int n) {
  HomogeneousPowers px(x, n), py(y, n);
  mpz_class acc = 0;
  for (const auto& [k, c] : coeffs) acc += c * px.term(k.first) * py.term(k.second);
  return acc;
}

}  // namespace

mpq_class ModularPolynomial::evaluate(const mpq_class& x, const mpq_class& y) const {
  const int n = std::max(degree_x(), degree_y());
  if (n < 0) return 0;
  mpz_class den = 1;
  for (int i = 0; i < n; ++i) den *= x.get_den() * y.get_den();
  mpq_class r(cleared_value(coeffs_, x, y, n), den);
  r.canonicalize();
  return r;
}

bool ModularPolynomial::vanishes_at(const mpq_class& x, const mpq_class& y) const {
  const int n = std::max(degree_x(), degree_y());
  return n < 0 || cleared_value(coeffs_, x, y, n) == 0;
}

std::vector<mpz_class> ModularPolynomial::specialize_x(const mpq_class& x) const {
  const int n = degree_x();
  HomogeneousPowers px(x, std::max(n, 0));
  std::vector<mpz_class> g(static_cast<std::size_t>(degree_y() + 1), 0);
  for (const auto& [k, c] : coeffs_) g[k.second] += c * px.term(k.first);
  mpz_class content = 0;
  for (const auto& c : g) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (content > 1) {
    for (auto& c : g) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  }
  return g;
}

std::string ModularPolynomial::to_text() const {
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    out += std::to_string(k.first) + ' ' + std::to_string(k.second) + ' ' + c.get_str() + '\n';
  }
  return out;
}

ModularPolynomial ModularPolynomial::from_text(int level, const std::string& text) {
  Coefficients coeffs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    int i = 0, j = 0;
    std::string c;
    if (!(fields >> i >> j >> c)) fail(Errc::InvalidArgument, "malformed golden line '" + line + "'");
    coeffs[{i, j}] = arith::parse_integer(c);
  }
  return {level, std::move(coeffs)};
}

std::size_t default_precision(int level) {
  return static_cast<std::size_t>((level + 1) * (level + 2) + 16);
}

namespace {

bool is_prime_int(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

ModularPolynomial compute_modular_polynomial(int level, std::size_t precision, int max_level) {
  if (level == 1) return {1, {{{1, 0}, 1}, {{0, 1}, -1}}};
  if (!is_prime_int(level) || level > max_level) {
    fail(Errc::UnsupportedLevel, "modular polynomial level " + std::to_string(level) + " is not supported");
  }
  const unsigned l = static_cast<unsigned>(level);
  if (precision == 0) precision = default_precision(level);
  if (precision < l + 3) fail(Errc::InsufficientPrecision, "series precision too small for level " + std::to_string(level));

  const QSeries j = j_q_expansion(precision);
  // Powers j^0 .. j^(l+1); j^m is known through q^(precision - 1 - m).
  std::vector<QSeries> jpow;
  jpow.push_back(QSeries::constant(1, static_cast<std::int64_t>(precision)));
  for (unsigned m = 1; m <= l + 1; ++m) jpow.push_back(m == 1 ? j : jpow.back() * j);

  // Power sums of j((tau + k)/l), k = 0..l-1: only exponents divisible by l survive.
  std::vector<QSeries> power_sums(l + 1);
  for (unsigned m = 1; m <= l; ++m) power_sums[m] = jpow[m].extract_multiples(l) * mpz_class(l);

  // Signed elementary symmetric functions f_m of those l roots (Newton's identities).
  std::vector<QSeries> f(l + 1);
  f[0] = QSeries::constant(1, power_sums[l].top());
  for (unsigned m = 1; m <= l; ++m) {
    QSeries acc = f[m - 1] * power_sums[1];
    for (unsigned i = 2; i <= m; ++i) acc = acc + f[m - i] * power_sums[i];
    f[m] = (acc * mpz_class(-1)).divexact(mpz_class(m));
  }

  // Multiply by the remaining root, X - j(l tau).
  const QSeries j_l = j.substitute_power(l);
  ModularPolynomial::Coefficients coeffs;
  coeffs[{static_cast<int>(l) + 1, 0}] = 1;
  for (unsigned m = 1; m <= l + 1; ++m) {
    QSeries c = (m <= l) ? f[m] - j_l * f[m - 1] : j_l * f[l] * mpz_class(-1);
    // c is a polynomial in j of degree <= l + 1: peel it off from the pole down.
    for (std::int64_t e = c.valuation(); e < -static_cast<std::int64_t>(l + 1); ++e) {
      if (c.coefficient(e) != 0) fail(Errc::InvalidArgument, "unexpected pole order in modular polynomial expansion");
    }
    for (int d = static_cast<int>(l) + 1; d >= 0; --d) {
      const mpz_class a = c.coefficient(-d);
      if (a == 0) continue;
      coeffs[{static_cast<int>(l + 1 - m), d}] = a;
      c = c - jpow[d] * a;
    }
    if (c.top() < 1) {
      fail(Errc::InsufficientPrecision, "series precision " + std::to_string(precision) +
                                            " leaves no verification terms for level " + std::to_string(level));
    }
    for (std::int64_t e = c.valuation(); e <= c.top(); ++e) {
      if (c.coefficient(e) != 0) {
        fail(Errc::InsufficientPrecision, "residual q-series does not vanish at level " + std::to_string(level));
      }
    }
  }
  return {level, std::move(coeffs)};
}

namespace {

constexpr int kMemoCeiling = 31;

struct Memo {
  std::array<std::once_flag, kMemoCeiling + 1> once;
  std::array<std::unique_ptr<ModularPolynomial>, kMemoCeiling + 1> slots;
};

Memo& memo() {
  static Memo m;
  return m;
}

}  // namespace

const ModularPolynomial& modular_polynomial(int level) {
  if (level < 1 || level > kMemoCeiling || (level != 1 && !is_prime_int(level))) {
    fail(Errc::UnsupportedLevel, "modular polynomial level " + std::to_string(level) + " is not supported");
  }
  Memo& m = memo();
  std::call_once(m.once[level], [&] {
    m.slots[level] = std::make_unique<ModularPolynomial>(compute_modular_polynomial(level, 0, kMemoCeiling));
  });
  return *m.slots[level];
}

bool kronecker_check(const ModularPolynomial& phi) {
  const int l = phi.level();
  if (l == 1) return true;
  ModularPolynomial::Coefficients target{{{l + 1, 0}, 1}, {{l, l}, -1}, {{1, 1}, -1}, {{0, l + 1}, 1}};
  ModularPolynomial::Coefficients keys = phi.coefficients();
  for (const auto& [k, c] : target) keys.emplace(k, 0);
  for (const auto& [k, unused] : keys) {
    auto t = target.find(k);
    mpz_class diff = phi.coefficient(k.first, k.second) - (t == target.end() ? mpz_class(0) : t->second);
    if (!mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(l))) return false;
  }
  return true;
}

bool is_supported_level(int level, int max_level) {
  return level == 1 || (level <= max_level && level <= kMemoCeiling && is_prime_int(level));
}

std::vector<int> supported_levels(int bound, int max_level) {
  std::vector<int> out;
  for (int n = 1; n <= bound; ++n) {
    if (is_supported_level(n, max_level)) out.push_back(n);
  }
  return out;
}

mpq_class eval_modpoly(int level, const mpq_class& x, const mpq_class& y) {
  return modular_polynomial(level).evaluate(x, y);
}

std::vector<int> isogeny_degree_search(const mpq_class& j1, const mpq_class& j2, int bound) {
  if (bound > kDefaultMaxLevel) {
    fail(Errc::UnsupportedLevel, "search bound " + std::to_string(bound) + " exceeds the computed level ceiling " +
                                     std::to_string(kDefaultMaxLevel));
  }
  std::vector<int> out;
  for (int n : supported_levels(bound)) {
    if (modular_polynomial(n).vanishes_at(j1, j2)) out.push_back(n);
  }
  return out;
}

}  // namespace zpkit::modpoly
