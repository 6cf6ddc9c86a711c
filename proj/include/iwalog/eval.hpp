#pragma once

#include <string>
#include <vector>

#include "iwalog/json_io.hpp"

namespace iwalog::io {

struct EvalOptions {
  Defaults defaults;
  std::int64_t k = 1;          // binomial index
  std::string h0;              // exp-h0: group element as "(1,0)"
  bool determined = false;     // decompose / xi-split: report determined digits only
};

const std::vector<std::string>& operation_names();
// Runs a named operation on parsed operands; throws Error on bad input.
json evaluate(const std::string& op, const std::vector<json>& operands, const EvalOptions& opt);

// 2 for domain errors, 3 for precision and window exhaustion.
int exit_code_for(ErrorCode code);

}  // namespace iwalog::io
