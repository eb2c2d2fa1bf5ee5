#pragma once

// JSON and CSV renderings of results. Index sets are 1-based on output.

#include <string>

#include <json.hpp>

#include "zpkit/curve.hpp"
#include "zpkit/heights.hpp"
#include "zpkit/langtrotter.hpp"
#include "zpkit/ledger.hpp"
#include "zpkit/locus.hpp"
#include "zpkit/modpoly.hpp"

namespace zpkit::serialize {

using nlohmann::json;

json to_json(const curve::RationalCurve& e);
json to_json(const langtrotter::SsScanResult& r);
json to_json(const langtrotter::FitReport& f);
json to_json(const locus::LocusCertificate& c);
json to_json(const locus::GenericityReport& g);
json to_json(const heights::HeightEstimate& h);
json to_json(const ledger::ProximityRecord& r);
json to_json(const ledger::PipelineReport& r);
/// Level, degrees, coefficient count, symmetry and Kronecker verdicts.
json summary(const modpoly::ModularPolynomial& phi);

/// "x,count" header followed by one row per checkpoint.
std::string checkpoints_csv(const langtrotter::SsScanResult& r);

/// Rebuilds a scan result from to_json output.
langtrotter::SsScanResult scan_from_json(const json& j);

}  // namespace zpkit::serialize
