#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace noiselab {

/// Resource caps shared by every exact (enumerative or dynamic-programming) routine.
struct Budget {
  /// Largest n for which a dense 2^n table is materialized.
  int dense_limit = 24;
  /// Largest support of an exact law produced by dynamic programming.
  std::size_t support_cap = 1'000'000;
  /// Largest horizon for exhaustive conditional-law checks.
  int exhaustive_t = 12;
  /// Largest horizon for enumeration over all 2^t lattice paths.
  int path_t = 20;
  /// Largest n for checks that enumerate all 2^n subsets.
  int subset_n = 20;

  bool operator==(const Budget&) const = default;
};

inline constexpr const char* kBudgetEnvVar = "NOISELAB_BUDGET";

/// Overrides fields of `base` from "key=value[,key=value...]" with keys
/// dense, support, exhaustive_t, path_t, subset_n. Unknown keys throw InvalidParameter.
Budget parse_budget(std::string_view spec, Budget base = {});

/// Defaults, overridden by $NOISELAB_BUDGET when set.
Budget budget_from_env();

std::string to_string(const Budget& b);

}  // namespace noiselab
