#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace iwalog::verify {

struct JobConfig {
  std::int64_t l = 3;
  int prec = 6;    // N
  int trunc = 40;  // M
  std::vector<std::int64_t> group;  // invariant factors; empty means Z/l
  std::uint64_t seed = 20240601;
  int samples = 100;
};

// Throws DomainViolation unless l is an odd prime, N >= 2 and M >= 2l.
void validate(const JobConfig& cfg);

struct CheckResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::string first_failure;

  bool ok() const { return failed == 0 && passed > 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool ok() const;
};

// lemma1, corollary1, corollary2, lemma2, propA, cokerA, lemma3, propB, lemma4.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const JobConfig& cfg);
// Hand-derived fixed values, independent of the configuration.
SuiteReport run_selftest();

nlohmann::json to_json(const SuiteReport& r);
std::string to_text(const SuiteReport& r);

}  // namespace iwalog::verify
