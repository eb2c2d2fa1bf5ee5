#include "zpkit/serialize.hpp"

#include "zpkit/arith.hpp"

namespace zpkit::serialize {

namespace {

json triple(const locus::Triple& t) { return json::array({t[0] + 1, t[1] + 1, t[2] + 1}); }

template <class T>
json optional_value(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const curve::RationalCurve& e) {
  json coeffs = json::array();
  for (const auto& a : e.coefficients()) coeffs.push_back(a.get_str());
  return {{"label", e.label()},
          {"coefficients", coeffs},
          {"discriminant", e.discriminant().get_str()},
          {"j_invariant", arith::to_string(e.j_invariant())}};
}

json to_json(const langtrotter::SsScanResult& r) {
  json cps = json::array();
  for (const auto& c : r.checkpoints) cps.push_back({{"x", c.x}, {"count", c.count}, {"primes", c.primes}});
  json per = json::array();
  for (const auto& l : r.ss_primes) per.push_back(l);
  return {{"labels", r.labels},
          {"x_max", r.x_max},
          {"ss_primes", per},
          {"simultaneous", r.simultaneous},
          {"checkpoints", cps}};
}

langtrotter::SsScanResult scan_from_json(const json& j) {
  langtrotter::SsScanResult r;
  r.labels = j.at("labels").get<std::vector<std::string>>();
  r.x_max = j.at("x_max").get<std::uint64_t>();
  r.ss_primes = j.at("ss_primes").get<std::vector<std::vector<std::uint64_t>>>();
  r.simultaneous = j.at("simultaneous").get<std::vector<std::uint64_t>>();
  for (const auto& c : j.at("checkpoints")) {
    r.checkpoints.push_back({c.at("x").get<std::uint64_t>(), c.at("count").get<std::uint64_t>(),
                             c.at("primes").get<std::uint64_t>()});
  }
  return r;
}

json to_json(const langtrotter::FitReport& f) {
  return {{"model", langtrotter::fit_model_name(f.model)},
          {"constant", f.constant},
          {"residual", f.residual},
          {"points", f.points},
          {"degenerate", f.degenerate}};
}

json to_json(const locus::LocusCertificate& c) {
  json out = {{"kind", locus::kind_name(c.kind)},
              {"I", triple(c.I)},
              {"levels", c.levels},
              {"witnessed", c.witnessed},
              {"chain", c.chain}};
  if (c.J) out["J"] = triple(*c.J);
  if (c.j) out["j"] = *c.j + 1;
  return out;
}

json to_json(const locus::GenericityReport& g) {
  std::vector<int> singular;
  for (int k : g.singular_positions) singular.push_back(k + 1);
  json rel = json::array();
  for (const auto& r : g.relations) rel.push_back({{"a", r[0] + 1}, {"b", r[1] + 1}, {"level", r[2]}});
  return {{"verdict", g.verdict()},
          {"refuted", g.refuted},
          {"bound", g.bound},
          {"singular_positions", singular},
          {"relations", rel}};
}

json to_json(const heights::HeightEstimate& h) { return {{"height", h.value}, {"error_bound", h.error_bound}}; }

json to_json(const ledger::ProximityRecord& r) {
  json out = {{"class", ledger::place_class_name(r.cls)}, {"status", "proxy-proximate"}};
  if (r.prime) {
    out["place"] = r.prime->get_str();
    out["valuation"] = r.valuation;
  } else {
    out["place"] = "infinity";
    out["abs_x"] = r.abs_value;
  }
  return out;
}

json to_json(const ledger::PipelineReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  const auto& p = r.params;
  return {
      {"theorem", r.theorem == ledger::Theorem::Thm1 ? "thm1" : "thm2"},
      {"x", arith::to_string(r.x)},
      {"h_x", r.h_x},
      {"h_s", r.h_s},
      {"Sigma", records},
      {"n_ord", r.sigma.n_ord},
      {"n_ssing_proximate", r.sigma.n_ssing},
      {"n_bad", r.sigma.n_bad},
      {"n_inf", r.sigma.n_inf},
      {"pi_K_source", ledger::pi_source_name(r.pi_source)},
      {"pi_Q", optional_value(r.pi_Q)},
      {"pi_K", optional_value(r.pi_K)},
      {"n_ssing", optional_value(r.n_ssing)},
      {"c_bad", r.ledger.c_bad},
      {"field_degree", r.ledger.field_degree},
      {"base_degree", r.ledger.base_degree},
      {"local_degree_cap", ledger::DegreeLedger::local_degree_cap},
      {"ordinary_factor_degree", ledger::DegreeLedger::ordinary_factor_degree},
      {"deg_bound", optional_value(r.deg_bound)},
      {"h_from_deg_bound", optional_value(r.h_from_degree)},
      {"alpha", r.alpha},
      {"scan_bound", r.scan_bound},
      {"scan_truncated", r.scan_truncated},
      {"claim_bounded_branch", r.claim.bounded_branch},
      {"claim_pi_bound", r.claim.bounded_branch ? json(nullptr) : json(r.claim.value)},
      {"c1", p.c1},
      {"c2", p.c2},
      {"D", p.D},
      {"C0", p.C0},
      {"C1", p.C1},
      {"C4", r.C4},
      {"c1_prime", r.c1_prime},
      {"c2_prime", r.c2_prime},
      {"log_exponent", r.log_exponent},
      {"h_threshold", r.threshold.h},
      {"log_h_threshold", r.threshold.log_h},
      {"no_threshold", r.threshold.no_threshold},
      {"h_bound", r.h_bound},
  };
}

json summary(const modpoly::ModularPolynomial& phi) {
  return {{"level", phi.level()},
          {"degree_x", phi.degree_x()},
          {"degree_y", phi.degree_y()},
          {"terms", phi.coefficients().size()},
          {"symmetric", phi.is_symmetric()},
          {"kronecker", modpoly::kronecker_check(phi)}};
}

std::string checkpoints_csv(const langtrotter::SsScanResult& r) {
  std::string out = "x,count\n";
  for (const auto& c : r.checkpoints) out += std::to_string(c.x) + ',' + std::to_string(c.count) + '\n';
  return out;
}

}  // namespace zpkit::serialize
