#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace zetterberg::verify {

enum class Tier { fast, standard, longrun };

Tier tier_from_name(const std::string& name);  // "fast" | "standard" | "long"

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;  // not part of the selected tier
  std::string detail;
  double elapsed_ms = 0;
};

struct Summary {
  Tier tier = Tier::standard;
  std::vector<CheckResult> checks;
  bool all_passed = false;

  nlohmann::json to_json() const;
};

/// Runs the numbered reproduction checks; `standard` covers all of them,
/// `fast` skips the q0=7, s=3 syndrome searches, `long` adds the large
/// I(q0) scans (hours).
Summary run_verification(Tier tier, uint32_t workers = 1);

}  // namespace zetterberg::verify
