#include "ddero/frontend/json_output.hpp"

#include "ddero/frontend/operator_io.hpp"
#include "ddero/frontend/printer.hpp"
#include "json.hpp"

namespace ddero::frontend {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json header(const char* schema, const std::vector<std::string>& names) {
  ordered_json j;
  j["schema"] = std::string("ddero/") + schema;
  j["version"] = kJsonVersion;
  j["variables"] = names;
  return j;
}

ordered_json vec(const VectorExpression& v, const std::vector<std::string>& names) {
  ordered_json a = ordered_json::array();
  for (const auto& e : v) a.push_back(to_text(e, names));
  return a;
}

std::string finish(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::action: return "action";
    case VerifyMode::operator_identity: return "operator";
    case VerifyMode::both: return "both";
  }
  return "both";
}

std::string weights_json(const std::vector<std::string>& names,
                         const WeightAssignment& w) {
  ordered_json j = header("weights", names);
  ordered_json ws = ordered_json::object();
  for (std::size_t i = 0; i < names.size(); ++i) ws[names[i]] = w.of(i).get_str();
  j["weights"] = std::move(ws);
  j["time_weight"] = w.time_weight.get_str();
  j["all_positive"] = w.all_positive();
  return finish(j);
}

std::string densities_json(const std::vector<std::string>& names,
                           const Rational& rank,
                           const std::vector<DensityFluxPair>& pairs) {
  ordered_json j = header("densities", names);
  j["rank"] = rank.get_str();
  ordered_json a = ordered_json::array();
  for (const auto& p : pairs) {
    ordered_json x;
    x["density"] = to_text(p.rho, names);
    x["flux"] = to_text(p.flux, names);
    x["rank"] = p.rank.get_str();
    a.push_back(std::move(x));
  }
  j["densities"] = std::move(a);
  return finish(j);
}

std::string symmetries_json(const std::vector<std::string>& names, int level,
                            const std::vector<Symmetry>& syms) {
  ordered_json j = header("symmetries", names);
  j["level"] = level;
  ordered_json a = ordered_json::array();
  for (const auto& s : syms) {
    ordered_json x;
    x["components"] = vec(s.g, names);
    ordered_json ranks = ordered_json::array();
    for (const auto& r : s.ranks) ranks.push_back(r ? ordered_json(r->get_str()) : ordered_json());
    x["ranks"] = std::move(ranks);
    a.push_back(std::move(x));
  }
  j["symmetries"] = std::move(a);
  return finish(j);
}

namespace {

ordered_json report_json(const VerificationReport& r, const std::vector<std::string>& names) {
  ordered_json x;
  x["mode"] = to_string(r.mode);
  if (r.operator_verdict)
    x["operator_verdict"] = to_string(r.operator_verdict->kind);
  else
    x["operator_verdict"] = nullptr;
  x["operator_note"] = r.operator_verdict ? r.operator_verdict->note : r.operator_note;
  x["action_checked"] = r.action_checked;
  x["action_ok"] = r.action_ok;
  ordered_json steps = ordered_json::array();
  for (const auto& s : r.steps) {
    ordered_json y;
    y["ok"] = s.ok;
    y["image"] = vec(s.image, names);
    y["diagnostic"] = s.diagnostic;
    steps.push_back(std::move(y));
  }
  x["steps"] = std::move(steps);
  x["passed"] = r.passed;
  return x;
}

}  // namespace

std::string recursion_json(const std::vector<std::string>& names,
                           const RecursionResult& r) {
  ordered_json j = header("recursion", names);
  j["gap"] = r.gap;
  ordered_json ranks = ordered_json::array();
  for (const auto& row : r.ranks) {
    ordered_json jr = ordered_json::array();
    for (const auto& v : row) jr.push_back(v.get_str());
    ranks.push_back(std::move(jr));
  }
  j["rank_matrix"] = std::move(ranks);
  ordered_json syms = ordered_json::array();
  for (const auto& s : r.symmetries) {
    ordered_json x;
    x["level"] = s.level;
    x["components"] = vec(s.g, names);
    syms.push_back(std::move(x));
  }
  j["symmetries"] = std::move(syms);
  ordered_json covs = ordered_json::array();
  for (const auto& c : r.covariants) covs.push_back(vec(c.gamma, names));
  j["covariants"] = std::move(covs);
  j["candidate_parameters"] = r.candidate.parameters.size();
  j["scale"] = r.solved.scale.get_str();
  j["operator_conditions_used"] = r.solved.used_operator_conditions;
  j["operator"] = ordered_json::parse(save_operator(r.solved.op, names));
  j["verification"] = report_json(r.report, names);
  return finish(j);
}

std::string hierarchy_json(const std::vector<std::string>& names,
                           const Hierarchy& h) {
  ordered_json j = header("hierarchy", names);
  ordered_json a = ordered_json::array();
  for (const auto& m : h.members) a.push_back(vec(m, names));
  j["members"] = std::move(a);
  j["complete"] = h.complete();
  j["failure"] = h.failure;
  return finish(j);
}

std::string verify_json(const std::vector<std::string>& names,
                        const VerificationReport& r) {
  ordered_json j = header("verify", names);
  j["report"] = report_json(r, names);
  return finish(j);
}

std::string error_json(const std::string& kind, const std::string& message) {
  ordered_json j;
  j["schema"] = "ddero/error";
  j["version"] = kJsonVersion;
  j["kind"] = kind;
  j["message"] = message;
  return finish(j);
}

}  // namespace ddero::frontend
