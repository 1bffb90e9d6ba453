#pragma once

// Machine-readable reports shared by verifications and experiments.
//
//   {"name", "params", "seed", "checks": [{"id", "lhs", "rhs", "pass"}], "stats"}
//
// Rationals appear as {"num": "...", "den": "..."} so no precision is lost.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "noiselab/rational.hpp"

namespace noiselab {

using Json = nlohmann::ordered_json;

struct Check {
  std::string id;
  Json lhs;
  Json rhs;
  bool pass = false;
};

struct ExperimentReport {
  std::string name;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<Check> checks;
  Json stats = Json::object();

  bool pass() const;
  std::size_t failures() const;

  void add(std::string id, Json lhs, Json rhs, bool pass);
  void add_exact(std::string id, const Rational& lhs, const Rational& rhs);
  /// Passes iff value <= threshold.
  void add_at_most(std::string id, double value, double threshold);
  /// Passes iff value >= threshold.
  void add_at_least(std::string id, double value, double threshold);
};

Json to_json(const ExperimentReport& report);

/// One row per check: check_id,lhs,rhs,pass. Rationals are written as num/den.
std::string to_csv(const ExperimentReport& report);

/// Merges several reports into one named report; check ids are prefixed by the part's name.
ExperimentReport merge_reports(std::string name, const std::vector<ExperimentReport>& parts);

}  // namespace noiselab
