#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zpkit/zpkit.h"

namespace zpkit::cli {

using nlohmann::json;

namespace {

struct ComputationError : std::runtime_error {
  zpk_status status;
  ComputationError(zpk_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(zpk_status s) {
  if (s != ZPK_OK) throw ComputationError(s, zpk_last_error());
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { zpk_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
  json parsed() const { return json::parse(str()); }
};

struct CurveDeleter {
  void operator()(zpk_curve* c) const { zpk_curve_free(c); }
};
using CurvePtr = std::unique_ptr<zpk_curve, CurveDeleter>;

struct ScanDeleter {
  void operator()(zpk_scan_result* r) const { zpk_scan_result_free(r); }
};
using ScanPtr = std::unique_ptr<zpk_scan_result, ScanDeleter>;

CurvePtr load_curve(const std::string& text) {
  zpk_curve* c = nullptr;
  check(zpk_curve_parse(text.c_str(), nullptr, &c));
  return CurvePtr(c);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }
  return s;
}

// key,value rows for the scalar members of an object.
std::string scalar_csv(const json& obj) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : obj.items()) {
    if (v.is_primitive()) out += k + ',' + csv_cell(v) + '\n';
  }
  return out;
}

std::string join(const json& arr, char sep) {
  std::string s;
  for (const auto& v : arr) {
    if (!s.empty()) s += sep;
    s += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content)) throw ComputationError(ZPK_IO, "cannot write " + path);
}

zpk_scan_options scan_options(const RunConfig& cfg) {
  zpk_scan_options o;
  zpk_scan_options_init(&o);
  o.threads = cfg.threads;
  o.exhaustive_below = cfg.exhaustive_below;
  o.cache_path = cfg.cache_path.empty() ? nullptr : cfg.cache_path.c_str();
  return o;
}

void report_warnings(const json& arr, std::ostream& err) {
  for (const auto& w : arr) err << "warning: " << w.get<std::string>() << '\n';
}

int cmd_aps(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto c = load_curve(cfg.curves.at(0));
  const auto o = scan_options(cfg);
  OwnedString s;
  check(zpk_aps(c.get(), cfg.xmax, &o, &s.p));
  if (cfg.format == "csv") {
    const json j = s.parsed();
    out << "p,a_p,type\n";
    for (const auto& r : j.at("primes")) {
      out << r.at("p").get<std::uint64_t>() << ',' << r.at("a_p").get<std::int64_t>() << ','
          << r.at("type").get<std::string>() << '\n';
    }
  } else {
    out << s.str() << '\n';
  }
  (void)err;
  return 0;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<CurvePtr> owned;
  std::vector<const zpk_curve*> curves;
  for (const auto& t : cfg.curves) {
    owned.push_back(load_curve(t));
    curves.push_back(owned.back().get());
  }
  json hyp = json::array();
  if (curves.size() == 2) {
    OwnedString w;
    check(zpk_pair_warnings(curves[0], curves[1], &w.p));
    hyp = w.parsed();
    report_warnings(hyp, err);
  }
  const auto o = scan_options(cfg);
  zpk_scan_result* raw = nullptr;
  check(zpk_scan(curves.data(), curves.size(), cfg.xmax, cfg.checkpoints.empty() ? nullptr : cfg.checkpoints.data(),
                 cfg.checkpoints.size(), &o, &raw));
  ScanPtr res(raw);

  OwnedString js, csv, cw;
  check(zpk_scan_result_json(res.get(), &js.p));
  check(zpk_scan_result_csv(res.get(), &csv.p));
  check(zpk_scan_result_warnings(res.get(), &cw.p));
  json doc = js.parsed();
  report_warnings(cw.parsed(), err);
  doc["cache_warnings"] = cw.parsed();
  if (cfg.command == "pair-scan") doc["hypothesis_warnings"] = hyp;

  json fits = json::array();
  for (const auto& m : cfg.fits) {
    OwnedString f;
    check(zpk_scan_fit(res.get(), m.c_str(), &f.p));
    fits.push_back(f.parsed());
  }
  if (!cfg.fits.empty()) doc["fits"] = fits;
  if (cfg.margin) {
    const auto& m = *cfg.margin;
    const double A = m[0];
    const int D = static_cast<int>(m[1]);
    const int d = m.size() > 2 ? static_cast<int>(m[2]) : 1;
    int holds = 0;
    check(zpk_scan_margin(res.get(), D, A, d, &holds));
    doc["margin"] = {{"A", A}, {"D", D}, {"field_degree", d}, {"holds", holds != 0}};
  }
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv.str());
  if (cfg.format == "csv") {
    out << csv.str();
  } else {
    out << doc.dump() << '\n';
  }
  return 0;
}

int cmd_modpoly(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.subcommand == "compute" || cfg.subcommand == "kronecker") {
    zpk_modpoly* raw = nullptr;
    check(zpk_modpoly_compute(cfg.level, &raw));
    std::unique_ptr<zpk_modpoly, void (*)(zpk_modpoly*)> phi(raw, zpk_modpoly_free);
    OwnedString summary, text;
    check(zpk_modpoly_summary(phi.get(), &summary.p));
    check(zpk_modpoly_text(phi.get(), &text.p));
    json doc = summary.parsed();
    if (!cfg.out_path.empty()) {
      write_file(cfg.out_path, text.str());
      doc["out"] = cfg.out_path;
    }
    if (cfg.format == "csv") {
      if (cfg.subcommand == "kronecker") {
        out << scalar_csv(doc);
      } else {
        out << "i,j,c\n";
        std::istringstream in(text.str());
        std::string i, j, c;
        while (in >> i >> j >> c) out << i << ',' << j << ',' << c << '\n';
      }
    } else {
      out << doc.dump() << '\n';
    }
    return 0;
  }
  if (cfg.subcommand == "eval") {
    OwnedString v;
    check(zpk_modpoly_eval(cfg.level, cfg.x.c_str(), cfg.y.c_str(), &v.p));
    const json doc = {{"level", cfg.level}, {"x", cfg.x}, {"y", cfg.y}, {"value", v.str()}, {"vanishes", v.str() == "0"}};
    out << (cfg.format == "csv" ? scalar_csv(doc) : doc.dump() + '\n');
    return 0;
  }
  OwnedString v;
  check(zpk_isogeny_search(cfg.j1.c_str(), cfg.j2.c_str(), cfg.bound, &v.p));
  const json doc = {{"j1", cfg.j1}, {"j2", cfg.j2}, {"bound", cfg.bound}, {"levels", v.parsed()}};
  if (cfg.format == "csv") {
    out << "level\n";
    for (const auto& l : doc.at("levels")) out << l.get<int>() << '\n';
  } else {
    out << doc.dump() << '\n';
  }
  return 0;
}

int cmd_locus(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const int* J = cfg.J.empty() ? nullptr : cfg.J.data();
  if (cfg.subcommand == "singular") {
    int yes = 0;
    check(zpk_is_singular_modulus(cfg.value.c_str(), &yes));
    const json doc = {{"j", cfg.value}, {"singular_modulus", yes != 0}};
    out << (cfg.format == "csv" ? scalar_csv(doc) : doc.dump() + '\n');
    return 0;
  }
  OwnedString s;
  if (cfg.subcommand == "check") {
    check(zpk_locus_check(cfg.point.c_str(), cfg.I.data(), J, cfg.j, cfg.levels.data(), cfg.levels.size(), &s.p));
    const json doc = s.parsed();
    out << (cfg.format == "csv" ? scalar_csv(doc) : doc.dump() + '\n');
    return 0;
  }
  if (cfg.subcommand == "generic") {
    check(zpk_locus_genericity(cfg.point.c_str(), cfg.I.data(), cfg.bound, &s.p));
    const json doc = s.parsed();
    out << (cfg.format == "csv" ? scalar_csv(doc) : doc.dump() + '\n');
    return 0;
  }
  check(zpk_locus_search(cfg.point.c_str(), cfg.I.data(), cfg.mode.c_str(), J, cfg.j, cfg.bound, &s.p));
  const json doc = s.parsed();
  if (cfg.format == "csv") {
    out << "kind,I,J,j,levels,chain\n";
    for (const auto& c : doc.at("certificates")) {
      out << c.at("kind").get<std::string>() << ',' << join(c.at("I"), ';') << ','
          << (c.contains("J") ? join(c.at("J"), ';') : "") << ',' << (c.contains("j") ? c.at("j").dump() : "") << ','
          << join(c.at("levels"), ';') << ',' << c.at("chain").dump() << '\n';
    }
  } else {
    out << doc.dump() << '\n';
  }
  return 0;
}

int cmd_height(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  json doc;
  if (!cfg.rational.empty()) {
    double h = 0;
    check(zpk_height_rational(cfg.rational.c_str(), &h));
    doc = {{"rational", cfg.rational}, {"height", h}, {"error_bound", 0.0}};
  } else {
    OwnedString s;
    check(zpk_height_minpoly(cfg.minpoly.c_str(), cfg.eps, &s.p));
    doc = s.parsed();
  }
  out << (cfg.format == "csv" ? scalar_csv(doc) : doc.dump() + '\n');
  return 0;
}

int cmd_ledger(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  json req;
  req["theorem"] = cfg.subcommand;
  req["x"] = cfg.x;
  std::vector<std::string> curves = cfg.curves;
  if (!cfg.curves_file.empty()) {
    std::ifstream f(cfg.curves_file);
    if (!f) throw ComputationError(ZPK_IO, "cannot read " + cfg.curves_file);
    for (std::string line; std::getline(f, line);) {
      line = trim(line);
      if (!line.empty() && line[0] != '#') curves.push_back(line);
    }
  }
  req["curves"] = curves;
  req["c_bad"] = cfg.c_bad;
  req["field_degree"] = cfg.field_degree;
  req["base_degree"] = cfg.base_degree;
  if (cfg.h_s) req["h_s"] = *cfg.h_s;
  if (cfg.pi_K) {
    req["pi_source"] = "supplied";
    req["pi_K"] = *cfg.pi_K;
  } else if (cfg.claim) {
    req["pi_source"] = "claim";
    req["C1"] = (*cfg.claim)[0];
    req["D"] = static_cast<int>((*cfg.claim)[1]);
    req["C0"] = (*cfg.claim)[2];
  } else if (cfg.scan) {
    req["pi_source"] = "scan";
  }
  if (!cfg.ab.empty()) {
    req["c1"] = cfg.ab[0];
    req["c2"] = cfg.ab[1];
  }
  req["scan_cap"] = cfg.scan_cap;
  req["threads"] = cfg.threads;
  req["exhaustive_below"] = cfg.exhaustive_below;
  if (!cfg.cache_path.empty()) req["cache_path"] = cfg.cache_path;
  OwnedString s;
  check(zpk_ledger_pipeline(req.dump().c_str(), &s.p));
  const json doc = s.parsed();
  out << (cfg.format == "csv" ? scalar_csv(doc) : doc.dump() + '\n');
  return 0;
}

}  // namespace

std::uint64_t parse_count(const std::string& text_in, const std::string& what) {
  const std::string text = trim(text_in);
  auto bad = [&]() -> UsageError { return UsageError(what + " must be a positive integer, got '" + text_in + "'"); };
  if (text.empty()) throw bad();
  std::string mant = text;
  unsigned exp = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mant = text.substr(0, e);
    const std::string ex = text.substr(e + 1);
    if (ex.empty() || ex.size() > 2 || !std::all_of(ex.begin(), ex.end(), ::isdigit)) throw bad();
    exp = static_cast<unsigned>(std::stoul(ex));
  }
  if (mant.empty() || mant.size() > 19 || !std::all_of(mant.begin(), mant.end(), ::isdigit)) throw bad();
  unsigned __int128 v = std::stoull(mant);
  for (unsigned k = 0; k < exp; ++k) {
    v *= 10;
    if (v > UINT64_MAX) throw bad();
  }
  if (v == 0) throw bad();
  return static_cast<std::uint64_t>(v);
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"zpkit: supersingular primes, modular polynomials, special loci, heights and degree ledgers"};
  app.name("zpkit");
  app.fallthrough();
  app.require_subcommand(1, 1);

  std::string threads = "1", exhaustive = "10000", cache;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache", cache, "Append-only trace cache file (default: $ZPKIT_CACHE)");
  app.add_option("--threads", threads, "Worker threads for prime scans (>= 1)");
  app.add_option("--exhaustive-below", exhaustive,
                 "Count points exhaustively below this prime, baby-step giant-step above");

  std::string xmax, pmax;
  std::vector<std::string> checkpoints;

  auto* aps = app.add_subcommand("aps", "Trace of Frobenius and reduction type for every prime up to --pmax");
  std::string curve;
  aps->add_option("--curve", curve, "Curve as [a1,a2,a3,a4,a6] or y^2=x^3+Ax+B")->required();
  aps->add_option("--pmax", pmax, "Largest prime considered")->required();

  const std::string bad_note =
      "Primes 2 and 3, and primes dividing the discriminant of the model as given, count as bad.";
  auto* ss = app.add_subcommand("ss-scan", "Supersingular primes of one curve up to --xmax");
  ss->footer(bad_note);
  ss->add_option("--curve", curve, "Curve as [a1,a2,a3,a4,a6] or y^2=x^3+Ax+B")->required();
  ss->add_option("--xmax", xmax, "Scan bound, e.g. 1e5")->required();
  ss->add_option("--checkpoints", checkpoints, "Comma-separated sample points (default: powers of 10 and xmax)")
      ->delimiter(',');
  ss->add_option("--fit", cfg.fits, "Fit models: loglog, sqrt_over_log, prime_count")->delimiter(',');
  ss->add_option("--csv", cfg.csv_path, "Also write x,count rows to this file");

  auto* pair = app.add_subcommand("pair-scan", "Primes supersingular for both curves up to --xmax");
  pair->footer(bad_note);
  std::string e1, e2;
  pair->add_option("--e1", e1, "First curve")->required();
  pair->add_option("--e2", e2, "Second curve")->required();
  pair->add_option("--xmax", xmax, "Scan bound, e.g. 1e5")->required();
  pair->add_option("--checkpoints", checkpoints, "Comma-separated sample points (default: powers of 10 and xmax)")
      ->delimiter(',');
  pair->add_option("--fit", cfg.fits, "Fit models: loglog, sqrt_over_log, prime_count")->delimiter(',');
  std::vector<double> margin;
  pair->add_option("--margin", margin, "A,D[,field_degree]: check count <= A (d^D + (log x)^D)")->delimiter(',');
  pair->add_option("--csv", cfg.csv_path, "Also write x,count rows to this file");

  auto* mp = app.add_subcommand("modpoly", "Classical modular polynomials (level 1 and primes up to 13)");
  mp->require_subcommand(1, 1);
  auto* mp_compute = mp->add_subcommand("compute", "Compute Phi_L and print a summary");
  mp_compute->add_option("--level", cfg.level, "Level L")->required();
  mp_compute->add_option("--out", cfg.out_path, "Write 'i j c' coefficient lines to this file");
  auto* mp_eval = mp->add_subcommand("eval", "Exact value Phi_L(x, y)");
  mp_eval->add_option("--level", cfg.level, "Level L")->required();
  mp_eval->add_option("--x", cfg.x, "Rational x")->required();
  mp_eval->add_option("--y", cfg.y, "Rational y")->required();
  auto* mp_kron = mp->add_subcommand("kronecker", "Check Phi_L = (X^L - Y)(X - Y^L) mod L");
  mp_kron->add_option("--level", cfg.level, "Level L")->required();
  auto* mp_search = mp->add_subcommand("search", "Levels N <= bound with Phi_N(j1, j2) = 0");
  mp_search->add_option("--j1", cfg.j1, "Rational j-invariant")->required();
  mp_search->add_option("--j2", cfg.j2, "Rational j-invariant")->required();
  mp_search->add_option("--bound", cfg.bound, "Largest level (<= 13)");

  auto* lc = app.add_subcommand("locus", "Special subvarieties cut out by modular polynomials");
  lc->require_subcommand(1, 1);
  auto add_point = [&](CLI::App* a) {
    a->add_option("--point", cfg.point, "Coordinates j1,...,jn (rationals)")->required();
    a->add_option("--I", cfg.I, "Index triple, hub first (1-based)")->delimiter(',')->expected(3)->required();
  };
  auto* lc_check = lc->add_subcommand("check", "Membership in V(I), V(I,J) or V(I,j)");
  add_point(lc_check);
  auto* optJ = lc_check->add_option("--J", cfg.J, "Second index triple")->delimiter(',')->expected(3);
  auto* optj = lc_check->add_option("--j", cfg.j, "Extra index");
  optJ->excludes(optj);
  lc_check->add_option("--levels", cfg.levels, "N,N' | N,N',M,M' | N,N',N''")->delimiter(',')->required();
  auto* lc_search = lc->add_subcommand("search", "All relations with levels up to --bound");
  add_point(lc_search);
  lc_search->add_option("--mode", cfg.mode, "V_I, V_IJ or V_Ij")
      ->check(CLI::IsMember({"V_I", "V_IJ", "V_Ij"}))
      ->required();
  auto* soptJ = lc_search->add_option("--J", cfg.J, "Fix the second triple")->delimiter(',')->expected(3);
  auto* soptj = lc_search->add_option("--j", cfg.j, "Fix the extra index");
  soptJ->excludes(soptj);
  lc_search->add_option("--bound", cfg.bound, "Largest level (<= 13)");
  auto* lc_generic = lc->add_subcommand("generic", "Necessary conditions for genericity up to --bound");
  add_point(lc_generic);
  lc_generic->add_option("--bound", cfg.bound, "Largest level (<= 13)");
  auto* lc_singular = lc->add_subcommand("singular", "Is j one of the 13 rational singular moduli");
  lc_singular->add_option("--value", cfg.value, "Rational j")->required();

  auto* ht = app.add_subcommand("height", "Absolute logarithmic Weil height");
  auto* o_rat = ht->add_option("--rational", cfg.rational, "p/q");
  auto* o_min = ht->add_option("--minpoly", cfg.minpoly, "Minimal polynomial coefficients c_d,...,c_0");
  o_rat->excludes(o_min);
  ht->add_option("--eps", cfg.eps, "Absolute accuracy for algebraic heights (default 1e-12)");

  auto* lg = app.add_subcommand("ledger", "Degree and height bookkeeping for a point with rational x(s)");
  lg->footer(
      "Places of proximity use a proxy: v_p(x) >= 1 at finite places and |x| < 1 at infinity. " + bad_note);
  lg->require_subcommand(1, 1);
  std::vector<double> claim;
  std::string pi_K;
  for (const char* name : {"thm1", "thm2"}) {
    auto* t = lg->add_subcommand(name, std::string("Pipeline for ") + (name[3] == '1' ? "the first" : "the second") +
                                           " degree bound");
    t->add_option("--x", cfg.x, "Rational x(s)")->required();
    t->add_option("--curves", cfg.curves_file, "File with one reference curve per line");
    t->add_option("--curve", cfg.curves, "Reference curve (repeatable)");
    t->add_option("--c-bad", cfg.c_bad, "Number of bad places of the reference curve")->required();
    t->add_option("--field-degree", cfg.field_degree, "[K(s):Q]");
    t->add_option("--base-degree", cfg.base_degree, "[K:Q]");
    t->add_option("--h-s", cfg.h_s, "h(s), when it differs from h(x(s))");
    auto* a = t->add_option("--pi-K", pi_K, "Supplied pi_K(s)");
    auto* b = t->add_option("--claim", claim, "C1,D,C0: bound pi_K(s) by the Claim")->delimiter(',')->expected(3);
    auto* c = t->add_flag("--scan", cfg.scan, "Bound pi_K(s) by a pair scan up to alpha(s)");
    a->excludes(b)->excludes(c);
    b->excludes(c);
    t->add_option("--ab", cfg.ab, "c1,c2: height-degree constants")->delimiter(',')->expected(2);
    t->add_option("--scan-cap", cfg.scan_cap, "Largest scan bound for --scan");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (args.empty()) msg = "no command given";
    throw UsageError(msg + "\n\n" + app.help());
  }

  const auto subs = app.get_subcommands();
  cfg.command = subs.front()->get_name();
  if (!subs.front()->get_subcommands().empty()) {
    const auto* inner = subs.front()->get_subcommands().front();
    cfg.subcommand = inner->get_name();
  }

  if (cache.empty()) {
    if (const char* env = std::getenv("ZPKIT_CACHE")) cache = env;
  }
  cfg.cache_path = cache;
  cfg.threads = static_cast<unsigned>(parse_count(threads, "--threads"));
  cfg.exhaustive_below = exhaustive == "0" ? 0 : parse_count(exhaustive, "--exhaustive-below");

  if (cfg.command == "aps") {
    cfg.curves = {curve};
    cfg.xmax = parse_count(pmax, "--pmax");
  } else if (cfg.command == "ss-scan" || cfg.command == "pair-scan") {
    cfg.curves = cfg.command == "ss-scan" ? std::vector<std::string>{curve} : std::vector<std::string>{e1, e2};
    cfg.xmax = parse_count(xmax, "--xmax");
    for (const auto& c : checkpoints) cfg.checkpoints.push_back(parse_count(c, "checkpoint"));
    if (!margin.empty()) {
      if (margin.size() < 2 || margin.size() > 3) throw UsageError("--margin expects A,D or A,D,field_degree");
      cfg.margin = margin;
    }
  } else if (cfg.command == "locus" && cfg.subcommand == "check") {
    if (cfg.levels.size() < 2 || cfg.levels.size() > 4) throw UsageError("--levels expects 2, 3 or 4 entries");
  } else if (cfg.command == "height") {
    if (cfg.rational.empty() && cfg.minpoly.empty()) throw UsageError("height needs --rational or --minpoly");
  } else if (cfg.command == "ledger") {
    if (cfg.curves.empty() && cfg.curves_file.empty()) throw UsageError("ledger needs --curves FILE or --curve");
    if (cfg.c_bad < 0) throw UsageError("--c-bad must be nonnegative");
    if (cfg.field_degree < 1 || cfg.base_degree < 1) throw UsageError("field degrees must be at least 1");
    if (!pi_K.empty()) {
      const std::uint64_t v = pi_K == "0" ? 0 : parse_count(pi_K, "--pi-K");
      cfg.pi_K = static_cast<std::int64_t>(v);
    }
    if (!claim.empty()) cfg.claim = claim;
  }
  return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "aps") return cmd_aps(cfg, out, err);
    if (cfg.command == "ss-scan" || cfg.command == "pair-scan") return cmd_scan(cfg, out, err);
    if (cfg.command == "modpoly") return cmd_modpoly(cfg, out, err);
    if (cfg.command == "locus") return cmd_locus(cfg, out, err);
    if (cfg.command == "height") return cmd_height(cfg, out, err);
    if (cfg.command == "ledger") return cmd_ledger(cfg, out, err);
    err << "error: unknown command " << cfg.command << '\n';
    return 2;
  } catch (const ComputationError& e) {
    err << "error: " << zpk_status_name(e.status) << ": " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: malformed library output: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what();
    return 2;
  }
  return execute(cfg, out, err);
}

}  // namespace zpkit::cli
