#include "zpkit/zpkit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "zpkit/arith.hpp"
#include "zpkit/cache.hpp"
#include "zpkit/curve.hpp"
#include "zpkit/error.hpp"
#include "zpkit/heights.hpp"
#include "zpkit/langtrotter.hpp"
#include "zpkit/ledger.hpp"
#include "zpkit/locus.hpp"
#include "zpkit/modpoly.hpp"
#include "zpkit/serialize.hpp"
#include "zpkit/upoly.hpp"

using namespace zpkit;
using serialize::json;

struct zpk_curve {
  curve::RationalCurve e;
};

struct zpk_scan_result {
  langtrotter::SsScanResult r;
  std::vector<std::string> warnings;
};

struct zpk_modpoly {
  modpoly::ModularPolynomial phi;
};

namespace {

thread_local std::string last_error;

template <class F>
zpk_status guard(F&& body) {
  try {
    body();
    return ZPK_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<zpk_status>(static_cast<int>(e.code()));
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON request: ") + e.what();
    return ZPK_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ZPK_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ZPK_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return ZPK_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(Errc::InvalidArgument, what);
}

void put_string(const std::string& s, char** out) {
  require(out != nullptr, "output pointer is null");
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
}

void put_json(const json& j, char** out) { put_string(j.dump(), out); }

locus::JTuple parse_point(const char* text) {
  require(text != nullptr, "point is null");
  locus::JTuple s;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    s.push_back(arith::parse_rational(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return s;
}

locus::Triple parse_triple(const int* t) {
  require(t != nullptr, "index set is null");
  return {t[0] - 1, t[1] - 1, t[2] - 1};
}

langtrotter::ScanOptions scan_options(const zpk_scan_options* opts) {
  langtrotter::ScanOptions o;
  if (opts) {
    o.threads = opts->threads == 0 ? 1 : opts->threads;
    o.counting.exhaustive_below = opts->exhaustive_below;
  }
  return o;
}

std::unique_ptr<cache::TraceCache> open_cache(const char* path) {
  if (!path || !*path) return nullptr;
  return std::make_unique<cache::TraceCache>(path);
}

}  // namespace

extern "C" {

const char* zpk_version(void) { return "0.1.0"; }

const char* zpk_status_name(zpk_status status) {
  if (status == ZPK_OK) return "Ok";
  if (status == ZPK_INTERNAL) return "Internal";
  if (status >= ZPK_INVALID_ARGUMENT && status <= ZPK_IO) return errc_name(static_cast<Errc>(status));
  return "Unknown";
}

const char* zpk_last_error(void) { return last_error.c_str(); }

void zpk_string_free(char* s) { std::free(s); }

zpk_status zpk_curve_parse(const char* text, const char* label, zpk_curve** out) {
  return guard([&] {
    require(text && out, "null argument");
    auto e = curve::parse_curve(text);
    if (label && *label) e = curve::RationalCurve(e.coefficients(), label);
    *out = new zpk_curve{std::move(e)};
  });
}

void zpk_curve_free(zpk_curve* c) { delete c; }

zpk_status zpk_curve_json(const zpk_curve* c, char** out) {
  return guard([&] {
    require(c, "null curve");
    put_json(serialize::to_json(c->e), out);
  });
}

zpk_status zpk_curve_local_data(const zpk_curve* c, uint64_t p, uint64_t exhaustive_below, zpk_reduction* type,
                                int64_t* ap) {
  return guard([&] {
    require(c && type && ap, "null argument");
    require(arith::is_prime_u64(p), "p must be prime");
    const auto d = curve::local_data(c->e, p, {exhaustive_below});
    *type = d.type == curve::ReductionType::GoodOrdinary      ? ZPK_ORDINARY
            : d.type == curve::ReductionType::GoodSupersingular ? ZPK_SUPERSINGULAR
                                                                 : ZPK_BAD;
    *ap = d.ap;
  });
}

zpk_status zpk_trace(uint64_t p, uint64_t a4, uint64_t a6, int method, uint64_t exhaustive_below, int64_t* ap) {
  return guard([&] {
    require(ap, "null argument");
    require(arith::is_prime_u64(p), "p must be prime");
    const auto c = curve::make_prime_field_curve(p, a4 % p, a6 % p);
    switch (method) {
      case 0: *ap = curve::trace_of_frobenius(c, {exhaustive_below}); break;
      case 1: *ap = curve::trace_exhaustive(c); break;
      case 2: *ap = curve::trace_bsgs(c); break;
      default: fail(Errc::InvalidArgument, "method must be 0, 1 or 2");
    }
  });
}

void zpk_scan_options_init(zpk_scan_options* opts) {
  if (!opts) return;
  opts->threads = 1;
  opts->exhaustive_below = curve::CountingOptions{}.exhaustive_below;
  opts->cache_path = nullptr;
}

zpk_status zpk_aps(const zpk_curve* c, uint64_t pmax, const zpk_scan_options* opts, char** out) {
  return guard([&] {
    require(c, "null curve");
    auto o = scan_options(opts);
    auto cache = open_cache(opts ? opts->cache_path : nullptr);
    o.cache = cache.get();
    json rows = json::array();
    for (auto p : arith::primes_up_to(pmax)) {
      const auto d = langtrotter::cached_local_data(c->e, p, o);
      rows.push_back({{"p", p}, {"a_p", d.ap}, {"type", curve::reduction_code(d.type)}});
    }
    put_json({{"label", c->e.label()}, {"primes", rows}}, out);
  });
}

zpk_status zpk_scan(const zpk_curve* const* curves, size_t n, uint64_t xmax, const uint64_t* checkpoints,
                    size_t n_checkpoints, const zpk_scan_options* opts, zpk_scan_result** out) {
  return guard([&] {
    require(out && (curves || n == 0), "null argument");
    std::vector<curve::RationalCurve> es;
    for (size_t k = 0; k < n; ++k) {
      require(curves[k], "null curve");
      es.push_back(curves[k]->e);
    }
    std::vector<uint64_t> cps;
    if (checkpoints) cps.assign(checkpoints, checkpoints + n_checkpoints);
    auto o = scan_options(opts);
    auto cache = open_cache(opts ? opts->cache_path : nullptr);
    o.cache = cache.get();
    auto res = std::make_unique<zpk_scan_result>();
    res->r = langtrotter::scan(es, xmax, std::move(cps), o);
    if (cache) res->warnings = cache->warnings();
    *out = res.release();
  });
}

void zpk_scan_result_free(zpk_scan_result* r) { delete r; }

size_t zpk_scan_result_simultaneous(const zpk_scan_result* r, const uint64_t** primes) {
  if (!r) return 0;
  if (primes) *primes = r->r.simultaneous.data();
  return r->r.simultaneous.size();
}

zpk_status zpk_scan_result_json(const zpk_scan_result* r, char** out) {
  return guard([&] {
    require(r, "null scan result");
    put_json(serialize::to_json(r->r), out);
  });
}

zpk_status zpk_scan_result_csv(const zpk_scan_result* r, char** out) {
  return guard([&] {
    require(r, "null scan result");
    put_string(serialize::checkpoints_csv(r->r), out);
  });
}

zpk_status zpk_scan_fit(const zpk_scan_result* r, const char* model, char** out) {
  return guard([&] {
    require(r && model, "null argument");
    put_json(serialize::to_json(langtrotter::fit_asymptotic(r->r, langtrotter::parse_fit_model(model))), out);
  });
}

zpk_status zpk_scan_margin(const zpk_scan_result* r, int degree, double coefficient, int field_degree, int* holds) {
  return guard([&] {
    require(r && holds, "null argument");
    *holds = langtrotter::conjecture_margin(r->r, degree, coefficient, field_degree) ? 1 : 0;
  });
}

zpk_status zpk_scan_result_warnings(const zpk_scan_result* r, char** out) {
  return guard([&] {
    require(r, "null scan result");
    put_json(r->warnings, out);
  });
}

zpk_status zpk_pair_warnings(const zpk_curve* a, const zpk_curve* b, char** out) {
  return guard([&] {
    require(a && b, "null curve");
    put_json(langtrotter::hypothesis_warnings(a->e, b->e), out);
  });
}

zpk_status zpk_modpoly_compute(int level, zpk_modpoly** out) {
  return guard([&] {
    require(out, "null argument");
    if (!modpoly::is_supported_level(level)) {
      fail(Errc::UnsupportedLevel, "level " + std::to_string(level) + " is not 1 or a prime up to " +
                                       std::to_string(modpoly::kDefaultMaxLevel));
    }
    *out = new zpk_modpoly{modpoly::modular_polynomial(level)};
  });
}

void zpk_modpoly_free(zpk_modpoly* phi) { delete phi; }

zpk_status zpk_modpoly_text(const zpk_modpoly* phi, char** out) {
  return guard([&] {
    require(phi, "null modular polynomial");
    put_string(phi->phi.to_text(), out);
  });
}

zpk_status zpk_modpoly_summary(const zpk_modpoly* phi, char** out) {
  return guard([&] {
    require(phi, "null modular polynomial");
    put_json(serialize::summary(phi->phi), out);
  });
}

zpk_status zpk_modpoly_eval(int level, const char* x, const char* y, char** out) {
  return guard([&] {
    require(x && y, "null argument");
    if (!modpoly::is_supported_level(level)) {
      fail(Errc::UnsupportedLevel, "level " + std::to_string(level) + " is not supported");
    }
    put_string(arith::to_string(modpoly::eval_modpoly(level, arith::parse_rational(x), arith::parse_rational(y))),
               out);
  });
}

zpk_status zpk_isogeny_search(const char* j1, const char* j2, int bound, char** out) {
  return guard([&] {
    require(j1 && j2, "null argument");
    put_json(modpoly::isogeny_degree_search(arith::parse_rational(j1), arith::parse_rational(j2), bound), out);
  });
}

zpk_status zpk_locus_check(const char* point, const int* I, const int* J, int j, const int* levels, size_t n_levels,
                           char** out) {
  return guard([&] {
    require(levels != nullptr, "levels are null");
    const auto s = parse_point(point);
    const auto tI = parse_triple(I);
    json res = {{"I", json::array({I[0], I[1], I[2]})},
                {"levels", std::vector<int>(levels, levels + n_levels)}};
    locus::Membership m;
    if (n_levels == 2) {
      require(!J && j == 0, "two levels select V_I; drop J and j");
      res["kind"] = "V_I";
      m = locus::in_V_I(s, tI, levels[0], levels[1]);
    } else if (n_levels == 4) {
      require(J && j == 0, "four levels select V_IJ, which needs J");
      res["kind"] = "V_IJ";
      res["J"] = json::array({J[0], J[1], J[2]});
      m = locus::in_V_IJ(s, tI, parse_triple(J), levels[0], levels[1], levels[2], levels[3]);
    } else if (n_levels == 3) {
      require(!J && j != 0, "three levels select V_Ij, which needs j");
      res["kind"] = "V_Ij";
      res["j"] = j;
      m = locus::in_V_Ij(s, tI, j - 1, levels[0], levels[1], levels[2]);
    } else {
      fail(Errc::InvalidArgument, "expected 2, 3 or 4 levels");
    }
    res["member"] = m.member;
    res["chain"] = m.chain;
    put_json(res, out);
  });
}

zpk_status zpk_locus_search(const char* point, const int* I, const char* mode, const int* J, int j, int bound,
                            char** out) {
  return guard([&] {
    require(mode != nullptr, "mode is null");
    const auto s = parse_point(point);
    locus::SearchQuery q;
    q.I = parse_triple(I);
    q.bound = bound;
    const std::string m(mode);
    if (m == "V_I") {
      q.mode = locus::Kind::V_I;
    } else if (m == "V_IJ") {
      q.mode = locus::Kind::V_IJ;
    } else if (m == "V_Ij") {
      q.mode = locus::Kind::V_Ij;
    } else {
      fail(Errc::InvalidArgument, "mode must be V_I, V_IJ or V_Ij");
    }
    if (J) q.J = parse_triple(J);
    if (j != 0) q.j = j - 1;
    json certs = json::array();
    for (const auto& c : locus::search_relations(s, q)) certs.push_back(serialize::to_json(c));
    put_json({{"mode", m}, {"bound", bound}, {"certificates", certs}}, out);
  });
}

zpk_status zpk_locus_genericity(const char* point, const int* I, int bound, char** out) {
  return guard([&] {
    put_json(serialize::to_json(locus::check_genericity(parse_point(point), parse_triple(I), bound)), out);
  });
}

zpk_status zpk_is_singular_modulus(const char* j, int* out) {
  return guard([&] {
    require(j && out, "null argument");
    *out = locus::is_singular_modulus(arith::parse_rational(j)) ? 1 : 0;
  });
}

zpk_status zpk_height_rational(const char* q, double* out) {
  return guard([&] {
    require(q && out, "null argument");
    *out = heights::height_rational(arith::parse_rational(q));
  });
}

zpk_status zpk_height_minpoly(const char* coefficients, double eps, char** out) {
  return guard([&] {
    require(coefficients, "null argument");
    const auto alpha = heights::AlgebraicNumber::from_minimal_polynomial(upoly::parse_high_to_low(coefficients));
    auto j = serialize::to_json(heights::height_algebraic(alpha, eps > 0 ? eps : heights::kDefaultHeightEpsilon));
    j["degree"] = alpha.degree();
    j["minimal_polynomial"] = upoly::to_string_high_to_low(alpha.minimal_polynomial());
    j["irreducibility_certified"] = alpha.irreducibility_certified();
    put_json(j, out);
  });
}

zpk_status zpk_degree_bound(int theorem, int64_t c_bad, int64_t pi_K, int64_t n_ssing, int64_t field_degree,
                            int64_t* out) {
  return guard([&] {
    require(out, "null argument");
    ledger::DegreeLedger l;
    l.c_bad = c_bad;
    l.pi_K = pi_K;
    l.n_ssing = n_ssing;
    l.field_degree = field_degree;
    if (theorem == 1) {
      *out = ledger::degree_bound_thm1(l);
    } else if (theorem == 2) {
      *out = ledger::degree_bound_thm2(l);
    } else {
      fail(Errc::InvalidArgument, "theorem must be 1 or 2");
    }
  });
}

zpk_status zpk_height_threshold(double log_exponent, double rhs, double* h, double* log_h, int* no_threshold) {
  return guard([&] {
    require(h && log_h && no_threshold, "null argument");
    const auto t = ledger::solve_height_threshold(log_exponent, rhs);
    *h = t.h;
    *log_h = t.log_h;
    *no_threshold = t.no_threshold ? 1 : 0;
  });
}

zpk_status zpk_ledger_pipeline(const char* request, char** out) {
  return guard([&] {
    require(request, "null request");
    const json q = json::parse(request);
    ledger::PipelineInput in;
    const std::string thm = q.at("theorem").get<std::string>();
    require(thm == "thm1" || thm == "thm2", "theorem must be thm1 or thm2");
    in.theorem = thm == "thm1" ? ledger::Theorem::Thm1 : ledger::Theorem::Thm2;
    in.x = arith::parse_rational(q.at("x").get<std::string>());
    for (const auto& c : q.at("curves")) in.curves.push_back(curve::parse_curve(c.get<std::string>()));
    in.c_bad = q.at("c_bad").get<int64_t>();
    in.field_degree = q.at("field_degree").get<int64_t>();
    in.base_degree = q.value("base_degree", int64_t{1});
    if (q.contains("h_s")) in.h_s = q.at("h_s").get<double>();
    const std::string src = q.value("pi_source", std::string("proximity"));
    if (src == "proximity") {
      in.pi_source = ledger::PiSource::Proximity;
    } else if (src == "supplied") {
      in.pi_source = ledger::PiSource::Supplied;
      in.pi_K_supplied = q.at("pi_K").get<int64_t>();
    } else if (src == "scan") {
      in.pi_source = ledger::PiSource::Scan;
    } else if (src == "claim") {
      in.pi_source = ledger::PiSource::Claim;
    } else {
      fail(Errc::InvalidArgument, "pi_source must be proximity, supplied, scan or claim");
    }
    in.scan_cap = q.value("scan_cap", in.scan_cap);
    in.params.c1 = q.value("c1", in.params.c1);
    in.params.c2 = q.value("c2", in.params.c2);
    in.params.D = q.value("D", in.params.D);
    in.params.C0 = q.value("C0", in.params.C0);
    in.params.C1 = q.value("C1", in.params.C1);
    in.scan.threads = q.value("threads", 1u);
    if (in.scan.threads == 0) in.scan.threads = 1;
    in.scan.counting.exhaustive_below = q.value("exhaustive_below", in.scan.counting.exhaustive_below);
    auto cache = open_cache(q.contains("cache_path") ? q.at("cache_path").get_ref<const std::string&>().c_str()
                                                     : nullptr);
    in.scan.cache = cache.get();
    put_json(serialize::to_json(ledger::run_pipeline(in)), out);
  });
}

}  // extern "C"
