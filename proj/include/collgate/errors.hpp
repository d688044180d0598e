#pragma once
#include <stdexcept>

namespace collgate {

// numerical integration failed its accuracy contract (norm drift, step failure, ...)
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// basis truncation tail grew beyond tolerance; rerun with a larger n_max
struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// caller violated an API contract (mismatched bases, schedule misuse, ...)
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

// a result left its mathematically guaranteed range; indicates a transcription bug
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace collgate
