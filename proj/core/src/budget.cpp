#include "noiselab/budget.hpp"

#include <charconv>
#include <cstdlib>

#include "noiselab/errors.hpp"

namespace noiselab {

namespace {

template <class T>
T parse_count(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw InvalidParameter("budget key '" + std::string(key) + "' expects a non-negative integer, got '" +
                           std::string(value) + "'");
  }
  return out;
}

}  // namespace

Budget parse_budget(std::string_view spec, Budget base) {
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidParameter("budget entry '" + std::string(item) + "' is not key=value");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "dense") {
      base.dense_limit = parse_count<int>(key, value);
    } else if (key == "support") {
      base.support_cap = parse_count<std::size_t>(key, value);
    } else if (key == "exhaustive_t") {
      base.exhaustive_t = parse_count<int>(key, value);
    } else if (key == "path_t") {
      base.path_t = parse_count<int>(key, value);
    } else if (key == "subset_n") {
      base.subset_n = parse_count<int>(key, value);
    } else {
      throw InvalidParameter("unknown budget key '" + std::string(key) + "'");
    }
  }
  return base;
}

Budget budget_from_env() {
  const char* env = std::getenv(kBudgetEnvVar);
  return env == nullptr ? Budget{} : parse_budget(env);
}

std::string to_string(const Budget& b) {
  return "dense=" + std::to_string(b.dense_limit) + ",support=" + std::to_string(b.support_cap) +
         ",exhaustive_t=" + std::to_string(b.exhaustive_t) + ",path_t=" + std::to_string(b.path_t) +
         ",subset_n=" + std::to_string(b.subset_n);
}

}  // namespace noiselab
