#include "arithdyn/json_io.hpp"

namespace adyn {

json to_json(const Rat& x) { return x.to_string(); }

json to_json(const LogValue& v) {
  json c = json::object();
  for (auto& [p, q] : v.terms()) c[std::to_string(p)] = q.to_string();
  return {{"coeffs", c}, {"float", v.value()}};
}

json to_json(const MonicPoly& f) {
  json coeffs = json::array();
  for (auto& a : f.lower()) coeffs.push_back({a.num().get_str(), a.den().get_str()});
  return {{"d", f.degree()}, {"coeffs", coeffs}, {"text", f.to_string()}};
}

json to_json(const HeightValue& h) {
  return {{"value", h.value()}, {"exact", to_json(h.exact)}, {"numeric", h.numeric}, {"err", h.err},
          {"preperiodic", h.preperiodic}};
}

json to_json(const PairingReport& r) {
  json places = json::array();
  for (auto& e : r.entries) {
    json j = {{"place", e.v.to_string()}, {"tag", to_string(e.tag)}, {"provenance", to_string(e.provenance)}};
    if (e.assoc) j["assoc"] = e.assoc->to_string();
    if (e.v.is_archimedean()) {
      j["value"] = e.value;
      j["err"] = e.err;
    } else {
      j["lo"] = to_json(e.lo);
      j["hi"] = to_json(e.hi);
    }
    places.push_back(j);
  }
  return {{"total", r.estimate()},
          {"total_lo", r.total_lo},
          {"total_hi", r.total_hi},
          {"finite_lo", to_json(r.finite_lo)},
          {"finite_hi", to_json(r.finite_hi)},
          {"arch", {{"value", r.arch.value}, {"se", r.arch.se}, {"bias", r.arch.bias}}},
          {"places", places}};
}

json to_json(const BoundReport& b) {
  return {{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"satisfied", b.satisfied}, {"shape_only", b.shape_only}};
}

json to_json(const PrepCertificate& c) {
  json j = {{"verdict", to_string(c.verdict)}};
  if (c.witness) j["witness_place"] = c.witness->to_string();
  json pts = json::array();
  for (auto& p : c.points)
    pts.push_back({{"minpoly", p.minpoly.to_string()},
                   {"degree", p.minpoly.degree()},
                   {"rational", p.rational},
                   {"hf", p.hf},
                   {"hg", p.hg},
                   {"tag_f", {p.f_m, p.f_n}},
                   {"tag_g", {p.g_m, p.g_n}}});
  j["points"] = pts;
  j["shared_count"] = c.shared_count();
  j["caps"] = {{"m_cap", c.caps.m_cap},
               {"degree_budget", c.caps.degree_budget},
               {"tol", c.caps.tol},
               {"force_search", c.caps.force_search},
               {"m_used_f", c.m_used_f},
               {"m_used_g", c.m_used_g},
               {"caps_hit", c.caps_hit}};
  j["numeric_matches"] = c.numeric_matches;
  j["uncertified"] = c.uncertified;
  j["matches_by_level"] = c.matches_by_level;
  j["suspected_equal"] = c.suspected_equal;
  return j;
}

json to_json(const BerkSetDescriptor& b) {
  LogValue V;
  if (!b.capacity.is_zero()) V = LogValue::log_prime(b.p, b.capacity);
  json j = {{"p", b.p}, {"set", b.to_string()}, {"V", to_json(V)}};
  if (b.log_radius) j["log_radius"] = b.log_radius->to_string();
  return j;
}

json to_json(const AdelicSet& a) {
  json places = json::array();
  for (auto& [p, e] : a.entries) {
    json j = to_json(e.set);
    if (e.assoc) j["assoc"] = e.assoc->to_string();
    if (!e.note.empty()) j["note"] = e.note;
    places.push_back(j);
  }
  return {{"c", a.c}, {"V", to_json(a.V)}, {"places", places}, {"default", "unit disk; unit circle at infinity"}};
}

json to_json(const SurveyResult& r) {
  json cases = json::object();
  for (auto& [c, k] : r.case_count)
    cases[std::to_string(c)] = {{"count", k}, {"freq", r.case_freq.at(c)}, {"mean", r.case_mean.at(c)}};
  return {{"mean", r.mean},
          {"ci", {r.ci.lo, r.ci.hi}},
          {"rows", r.rows.size()},
          {"failures", r.failures},
          {"failure_log", r.failure_log},
          {"cases", cases}};
}

json to_json(const Constants& k) {
  return {{"ln2", k.ln2},
          {"C", k.C},
          {"C_closed", k.C_closed},
          {"identity", {{"lhs", k.identity_lhs}, {"rhs", k.identity_rhs}, {"log_2alpha", k.identity_literal_rhs}}},
          {"integrals", {k.integral_left, k.integral_right}}};
}

json envelope(const std::string& kind, const json& body) {
  json j = {{"schema", 1}, {"kind", kind}};
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

}  // namespace adyn
