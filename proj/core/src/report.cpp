#include "noiselab/report.hpp"

#include <algorithm>
#include <sstream>

namespace noiselab {

bool ExperimentReport::pass() const { return failures() == 0; }

std::size_t ExperimentReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

void ExperimentReport::add(std::string id, Json lhs, Json rhs, bool ok) {
  checks.push_back({std::move(id), std::move(lhs), std::move(rhs), ok});
}

void ExperimentReport::add_exact(std::string id, const Rational& lhs, const Rational& rhs) {
  add(std::move(id), rational_json(lhs), rational_json(rhs), lhs == rhs);
}

void ExperimentReport::add_at_most(std::string id, double value, double threshold) {
  add(std::move(id), value, threshold, value <= threshold);
}

void ExperimentReport::add_at_least(std::string id, double value, double threshold) {
  add(std::move(id), value, threshold, value >= threshold);
}

Json to_json(const ExperimentReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back({{"id", c.id}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  Json j;
  j["name"] = report.name;
  j["params"] = report.params;
  j["seed"] = report.seed;
  if (report.samples > 0) j["samples"] = report.samples;
  j["checks"] = std::move(checks);
  j["stats"] = report.stats;
  j["pass"] = report.pass();
  return j;
}

namespace {

std::string csv_cell(const Json& v) {
  std::string text;
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    text = v["num"].get<std::string>() + "/" + v["den"].get<std::string>();
  } else if (v.is_string()) {
    text = v.get<std::string>();
  } else {
    text = v.dump();
  }
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "check_id,lhs,rhs,pass\n";
  for (const auto& c : report.checks) {
    out << csv_cell(c.id) << ',' << csv_cell(c.lhs) << ',' << csv_cell(c.rhs) << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

ExperimentReport merge_reports(std::string name, const std::vector<ExperimentReport>& parts) {
  ExperimentReport merged;
  merged.name = std::move(name);
  for (const auto& part : parts) {
    merged.seed = part.seed;
    merged.params[part.name] = part.params;
    merged.stats[part.name] = part.stats;
    for (const auto& c : part.checks) merged.checks.push_back({part.name + "." + c.id, c.lhs, c.rhs, c.pass});
  }
  return merged;
}

}  // namespace noiselab
