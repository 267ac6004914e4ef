// JSON renderings shared by the CLI and tests.
#pragma once

#include "arithdyn/heights.hpp"
#include "arithdyn/nonarch.hpp"
#include "arithdyn/prep.hpp"
#include "arithdyn/survey.hpp"

#include "json.hpp"

namespace adyn {

using json = nlohmann::ordered_json;

json to_json(const Rat& x);
json to_json(const LogValue& v);
json to_json(const MonicPoly& f);
json to_json(const HeightValue& h);
json to_json(const PairingReport& r);
json to_json(const BoundReport& b);
json to_json(const PrepCertificate& c);
json to_json(const BerkSetDescriptor& b);
json to_json(const AdelicSet& a);
json to_json(const SurveyResult& r);
json to_json(const Constants& k);

// {"schema": 1, "kind": kind, ...body}
json envelope(const std::string& kind, const json& body);

}  // namespace adyn
