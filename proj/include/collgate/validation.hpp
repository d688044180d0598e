#pragma once
#include <functional>
#include <string>
#include <vector>

namespace collgate {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values vs the accepted window
};

// the nine release criteria; `quick` skips the two long-running ones
// (thermal ensemble, grid-solver comparison)
std::vector<CriterionResult> run_validation(bool quick = false,
                                            const std::function<void(const CriterionResult&)>&
                                                on_result = {});

}  // namespace collgate
