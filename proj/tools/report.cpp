#include "report.hpp"

namespace krieger::report {

namespace {

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

Json indices(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto i : v) out.push_back(i);
  return out;
}

}  // namespace

Json to_json(const Real& x) { return x.str(); }

Json to_json(const SummabilityVerdict& v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  j["rule"] = v.rule;
  j["sum"] = optional_json(v.sum);
  j["bound"] = v.bound ? Json(*v.bound) : Json(nullptr);
  j["partial_sum"] = v.partial_sum ? Json(*v.partial_sum) : Json(nullptr);
  j["partial_terms"] = v.partial_terms;
  j["evidence"] = v.evidence;
  return j;
}

Json to_json(const ClusterReport& r) {
  Json j;
  Json points = Json::array();
  for (const auto& p : r.points) {
    Json q;
    q["value"] = to_json(p.value);
    q["classes"] = indices(p.classes);
    q["source"] = p.source == ClusterSource::Asymptotic ? "asymptotic" : "finite-data";
    points.push_back(std::move(q));
  }
  j["points"] = std::move(points);
  j["unbounded"] = r.unbounded;
  j["contains_zero"] = r.contains_zero;
  j["liminf"] = to_json(r.liminf);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const GroupStructure& g) {
  Json j;
  j["kind"] = std::string(to_string(g.kind));
  j["generator"] = g.kind == GroupStructure::Kind::Cyclic ? to_json(g.generator) : Json(nullptr);
  j["confidence"] = std::string(to_string(g.confidence));
  j["denominator_bound"] = g.bound;
  Json pairs = Json::array();
  for (const auto& p : g.evidence) {
    Json q;
    q["generator"] = to_json(p.generator);
    q["point"] = to_json(p.point);
    q["relation"] = p.relation ? Json{{"p", p.relation->p}, {"q", p.relation->q}} : Json(nullptr);
    pairs.push_back(std::move(q));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Json to_json(const Evidence& e) {
  Json j;
  j["mode"] = std::string(to_string(e.mode));
  j["C"] = to_string(e.C);
  j["type_i"] = to_json(e.type_i);
  j["type_ii1"] = to_json(e.type_ii1);
  j["type_iii"] = to_json(e.type_iii);
  j["branch"] = e.branch ? Json(std::string(to_string(*e.branch))) : Json(nullptr);
  j["recurring_clusters"] = optional_json(e.recurring_clusters);
  j["inf_liminf"] = optional_json(e.inf_liminf);
  j["lambda_set"] = optional_json(e.lambda_set);
  Json devs = Json::array();
  for (const auto& d : e.deviations) {
    devs.push_back(Json{{"limit", to_json(d.limit)}, {"classes", indices(d.classes)}, {"verdict", to_json(d.verdict)}});
  }
  j["deviations"] = std::move(devs);
  j["group"] = optional_json(e.group);
  j["finite_clusters"] = optional_json(e.finite_clusters);
  j["errors"] = e.errors;
  return j;
}

Json to_json(const TypeVerdict& v) {
  Json j;
  j["label"] = std::string(to_string(v.label));
  j["lambda"] = optional_json(v.lambda);
  Json cert;
  cert["fired"] = v.certificate.fired;
  cert["warnings"] = v.certificate.warnings;
  cert["evidence"] = to_json(v.certificate.evidence);
  j["certificate"] = std::move(cert);
  return j;
}

std::string word_string(const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

Json to_json(const Witness& w) {
  Json j;
  j["start"] = w.start;
  j["length"] = w.length;
  j["x"] = indices(w.x);
  j["y"] = indices(w.y);
  j["D"] = to_json(w.ratio);
  j["log_D"] = w.log;
  j["target"] = to_json(w.target);
  j["tolerance"] = to_json(w.tolerance);
  j["distance"] = to_json(w.distance());
  return j;
}

Json to_json(const WitnessSearchResult& r) {
  Json j;
  j["found"] = r.witness.has_value();
  j["witness"] = optional_json(r.witness);
  j["blocks_searched"] = r.blocks_searched;
  j["states"] = r.states;
  j["closest_distance"] = optional_json(r.closest_distance);
  j["scope"] = r.scope;
  return j;
}

Json to_json(const OracleHit& h) {
  Json j;
  j["target"] = to_json(h.target);
  j["distance"] = to_json(h.distance);
  j["D"] = to_json(h.ratio);
  j["x"] = indices(h.x);
  j["y"] = indices(h.y);
  return j;
}

Json to_json(const LatticeResult& l) {
  Json j;
  j["kind"] = std::string(to_string(l.kind));
  j["period"] = l.kind == LatticeResult::Kind::Lattice ? Json(l.period) : Json(nullptr);
  j["nonzero"] = l.nonzero;
  j["max_residual"] = l.max_residual;
  j["euclid_steps"] = l.euclid_steps;
  return j;
}

Json to_json(const RatioSetEstimate& e) {
  Json j;
  j["label"] = std::string(to_string(e.label));
  j["lambda"] = e.lambda ? Json(*e.lambda) : Json(nullptr);
  j["lattice"] = to_json(e.lattice);
  j["probe_hits"] = e.probe_hits;
  j["probe_trials"] = e.probe_trials;
  j["evidence"] = e.evidence;
  return j;
}

}  // namespace krieger::report
