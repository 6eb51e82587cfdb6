#include "oqt/gateset/serialization.hpp"

#include <stdexcept>

namespace oqt {

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kBasis = "pauli-normalized";

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& a) {
  Eigen::VectorXd v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a.at(i).get<double>();
  return v;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.at(0).size() : 0;
  Eigen::MatrixXd m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows.at(i).size() != c) throw std::invalid_argument("json matrix: ragged rows");
    for (std::size_t j = 0; j < c; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows.at(i).at(j).get<double>();
  }
  return m;
}

Eigen::MatrixXi int_matrix_from_json(const nlohmann::json& rows) {
  return matrix_from_json(rows).cast<int>();
}

void check_header(const nlohmann::json& j, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": not an object");
  if (j.value("version", -1) != kSchemaVersion)
    throw std::invalid_argument(std::string(what) + ": unsupported version");
  if (j.value("basis", "") != kBasis)
    throw std::invalid_argument(std::string(what) + ": unexpected basis tag");
}

}  // namespace

nlohmann::json gate_set_to_json(const GateSet& gs) {
  nlohmann::json j;
  j["version"] = kSchemaVersion;
  j["basis"] = kBasis;
  j["state"] = vector_to_json(gs.rho.c);
  j["effect"] = vector_to_json(gs.effect.c);
  j["labels"] = gs.labels;
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : gs.gates) gates.push_back(matrix_to_json(g.m));
  j["gates"] = std::move(gates);
  return j;
}

GateSet gate_set_from_json(const nlohmann::json& j) {
  check_header(j, "gate set json");
  GateSet gs;
  gs.rho.c = vector_from_json(j.at("state"));
  gs.effect.c = vector_from_json(j.at("effect"));
  gs.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& g : j.at("gates")) {
    SuperOperator op;
    op.m = matrix_from_json(g);
    gs.gates.push_back(std::move(op));
  }
  gs.validate();
  return gs;
}

nlohmann::json rep_template_to_json(const RepTemplate& t) {
  nlohmann::json j;
  j["version"] = kSchemaVersion;
  j["labels"] = t.labels;
  nlohmann::json fids = nlohmann::json::array();
  for (const auto& f : t.fiducials) fids.push_back(f);
  j["fiducials"] = std::move(fids);
  return j;
}

RepTemplate rep_template_from_json(const nlohmann::json& j) {
  if (j.value("version", -1) != kSchemaVersion)
    throw std::invalid_argument("rep template json: unsupported version");
  std::vector<Sequence> fids;
  for (const auto& f : j.at("fiducials")) fids.push_back(f.get<Sequence>());
  // slot maps are canonical given labels and fiducials, so rebuild them
  return minimal_parameterization(j.at("labels").get<std::vector<std::string>>(), std::move(fids));
}

nlohmann::json operational_rep_to_json(const OperationalRep& rep) {
  nlohmann::json j;
  j["version"] = kSchemaVersion;
  j["basis"] = kBasis;
  j["gauge"] = "none";  // entries are observable probabilities
  j["template"] = rep_template_to_json(*rep.tmpl);
  j["params"] = vector_to_json(rep.params);
  return j;
}

OperationalRep operational_rep_from_json(const nlohmann::json& j) {
  check_header(j, "operational rep json");
  OperationalRep rep;
  rep.tmpl = std::make_shared<RepTemplate>(rep_template_from_json(j.at("template")));
  rep.params = vector_from_json(j.at("params"));
  if (rep.params.size() != rep.tmpl->slot_count)
    throw std::invalid_argument("operational rep json: parameter count mismatch");
  return rep;
}

}  // namespace oqt
