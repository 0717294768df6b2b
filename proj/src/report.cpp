#include "nis/report.hpp"

#include <cmath>
#include <fstream>

namespace nis {

using nlohmann::json;

json covariates_json(const std::vector<int>& indices, const std::vector<std::string>& names) {
  json out = json::array();
  for (const int j : indices) {
    json item;
    item["index"] = j + 1;
    if (j >= 0 && j < static_cast<int>(names.size())) item["name"] = names[j];
    out.push_back(item);
  }
  return out;
}

json coef_json(const VCCoef& coef, const std::vector<std::string>& names) {
  json out;
  out["intercept"] = std::vector<double>(coef.gamma0.data(), coef.gamma0.data() + coef.gamma0.size());
  json groups = json::array();
  for (std::size_t m = 0; m < coef.members.size(); ++m) {
    json g;
    const int j = coef.members[m];
    g["index"] = j + 1;
    if (j >= 0 && j < static_cast<int>(names.size())) g["name"] = names[j];
    const auto col = coef.gammas.col(static_cast<int>(m));
    g["coef"] = std::vector<double>(col.data(), col.data() + col.size());
    groups.push_back(g);
  }
  out["groups"] = groups;
  return out;
}

json model_json(const ScadModel& model, const std::vector<std::string>& names) {
  json out = coef_json(model.coef, names);
  out["lambda"] = model.lambda;
  out["bic"] = model.bic;
  out["sigma2"] = model.sigma2;
  return out;
}

json screen_json(const ScreenReport& report, const std::vector<std::string>& names) {
  json out;
  out["u"] = report.u;
  out["v"] = report.v;
  json ranking = json::array();
  for (const int j : report.ranking) ranking.push_back(j + 1);
  out["ranking"] = ranking;
  out["ranking_names"] = [&] {
    json arr = json::array();
    for (const int j : report.ranking)
      arr.push_back(j < static_cast<int>(names.size()) ? names[j] : std::to_string(j + 1));
    return arr;
  }();
  out["flagged"] = covariates_json(report.flagged, names);
  out["ynorm2"] = report.ynorm2;
  out["null_norm2"] = report.null_norm2;
  return out;
}

json inis_json(const InisResult& result, const std::vector<std::string>& names) {
  json out;
  out["selected"] = covariates_json(result.selected, names);
  out["termination"] = to_string(result.termination);
  out["zeta"] = result.zeta;
  out["iterations"] = result.iterations;
  json trace = json::array();
  for (const auto& step : result.trace) {
    json s;
    s["iter"] = step.iter;
    if (std::isfinite(step.tau)) s["tau"] = step.tau;
    s["num_recruits"] = step.num_recruits;
    s["truncated"] = step.truncated;
    s["candidates"] = covariates_json(step.candidates, names);
    s["selected"] = covariates_json(step.selected, names);
    s["lambda"] = step.lambda;
    s["bic"] = step.bic;
    trace.push_back(s);
  }
  out["trace"] = trace;
  out["model"] = model_json(result.model, names);
  return out;
}

json report_envelope(const std::string& command, const Dataset& data, const json& config) {
  json out;
  out["report_version"] = kReportVersion;
  out["command"] = command;
  out["config"] = config;
  out["data"] = json{{"n", data.n()}, {"p", data.p()}};
  return out;
}

void write_report(const std::string& path, const json& report) {
  std::ofstream out(path);
  if (!out) throw NisError("cannot open '" + path + "' for writing");
  out << report.dump(2) << '\n';
  if (!out.flush()) throw NisError("write to '" + path + "' failed");
}

}  // namespace nis
