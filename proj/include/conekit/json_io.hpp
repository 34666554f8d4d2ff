#pragma once

#include <json.hpp>

#include "conekit/moments.hpp"
#include "conekit/topology.hpp"

namespace conekit {

using json = nlohmann::json;

// -- sample sets ----------------------------------------------------------

inline json to_json(const SampleSet& s) {
  json j;
  j["seed"] = s.seed;
  json box = json::array();
  for (const auto& iv : s.box) box.push_back(json::array({iv[0], iv[1]}));
  j["box"] = box;
  j["tol"] = s.tol;
  j["points"] = s.points;
  j["possibly_empty"] = s.possibly_empty;
  return j;
}

inline SampleSet sample_set_from_json(const json& j) {
  SampleSet s;
  s.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& iv : j.at("box")) s.box.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
  s.tol = j.at("tol").get<double>();
  for (const auto& p : j.at("points")) s.points.push_back(p.get<Point>());
  s.possibly_empty = j.value("possibly_empty", s.points.empty());
  return s;
}

// -- certificates ----------------------------------------------------------

inline json to_json(const GramCertificate& c) {
  json j;
  j["degree"] = c.degree;
  j["residual"] = c.residual;
  json blocks = json::array();
  for (const auto& b : c.blocks) {
    json jb;
    jb["generator_index"] = b.generator_index;
    jb["basis"] = b.basis;
    jb["Q"] = b.q.data();  // row-major
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = blocks;
  return j;
}

inline GramCertificate certificate_from_json(const json& j) {
  GramCertificate c;
  c.degree = j.at("degree").get<int>();
  c.residual = j.at("residual").get<double>();
  for (const auto& jb : j.at("blocks")) {
    GramBlock b;
    b.generator_index = jb.at("generator_index").get<int>();
    for (const auto& e : jb.at("basis")) b.basis.push_back(e.get<MultiIndex>());
    const auto q = jb.at("Q").get<std::vector<double>>();
    const int dim = static_cast<int>(b.basis.size());
    if (q.size() != static_cast<std::size_t>(dim) * dim)
      throw std::invalid_argument("certificate Q size does not match basis");
    b.q = Matrix(dim, dim);
    b.q.data() = q;
    c.blocks.push_back(std::move(b));
  }
  return c;
}

// -- moment functionals -----------------------------------------------------

inline json to_json(const MomentFunctional& l) {
  json j;
  j["nvars"] = l.nvars;
  j["degree"] = l.degree;
  json moments = json::array();
  for (const auto& [mono, v] : l.moments) moments.push_back(json::array({mono, v}));
  j["moments"] = moments;
  return j;
}

inline MomentFunctional moment_functional_from_json(const json& j) {
  MomentFunctional l;
  l.nvars = j.at("nvars").get<int>();
  l.degree = j.at("degree").get<int>();
  for (const auto& e : j.at("moments"))
    l.moments[e.at(0).get<MultiIndex>()] = e.at(1).get<double>();
  return l;
}

// -- seminorm intervals ------------------------------------------------------

inline json to_json(const Interval& iv) {
  json j;
  j["lb"] = iv.lb;
  if (iv.ub_finite)
    j["ub"] = iv.ub;
  else
    j["ub"] = nullptr;  // the bracket failed to certify at this degree
  j["degree"] = iv.degree;
  j["samples"] = iv.lb_samples;
  j["seed"] = iv.lb_seed;
  if (iv.certificate_plus.has_value() && iv.certificate_minus.has_value()) {
    j["certificates"] = json{{"plus", to_json(*iv.certificate_plus)},
                             {"minus", to_json(*iv.certificate_minus)}};
  }
  return j;
}

// -- seminorm families --------------------------------------------------------

inline json to_json(const SeminormFamily& f) {
  json j;
  json members = json::array();
  for (const auto& m : f.members)
    members.push_back(json{{"label", m.label}, {"sampleset", to_json(m.set)}});
  j["members"] = members;
  j["saturated"] = f.saturated;
  return j;
}

inline SeminormFamily family_from_json(const json& j) {
  SeminormFamily f;
  for (const auto& jm : j.at("members"))
    f.members.push_back({jm.at("label").get<std::string>(), sample_set_from_json(jm.at("sampleset"))});
  f.saturated = j.at("saturated").get<bool>();
  return f;
}

// -- closure verdicts ----------------------------------------------------------

inline json to_json(const ClosureVerdict& v) {
  json j;
  switch (v.kind) {
    case ClosureVerdict::Kind::in_closure: j["verdict"] = "InClosure"; break;
    case ClosureVerdict::Kind::not_in_closure: j["verdict"] = "NotInClosure"; break;
    case ClosureVerdict::Kind::unknown: j["verdict"] = "Unknown"; break;
  }
  if (v.witness.has_value()) {
    j["witness"] = *v.witness;
    j["witness_value"] = v.witness_value;
  }
  if (!v.eps_to_degree.empty()) {
    json map = json::array();
    for (const auto& [eps, d] : v.eps_to_degree) map.push_back(json::array({eps, d}));
    j["eps_to_degree"] = map;
  }
  return j;
}

}  // namespace conekit
