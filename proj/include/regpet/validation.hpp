#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace regpet {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string summary;
  std::map<std::string, double> metrics;
  double seconds = 0;
};

struct ValidationOptions {
  long c_max = 100000;
  long c_max_coarse = 10000;
  int threads = 0;
};

CriterionResult criterion_A1(const ValidationOptions& opt);
CriterionResult criterion_A2(const ValidationOptions& opt);
CriterionResult criterion_A3(const ValidationOptions& opt);
CriterionResult criterion_A4(const ValidationOptions& opt);
CriterionResult criterion_A5(const ValidationOptions& opt);
CriterionResult criterion_A6(const ValidationOptions& opt);
CriterionResult criterion_A7(const ValidationOptions& opt);
CriterionResult criterion_A8(const ValidationOptions& opt);
CriterionResult criterion_A9(const ValidationOptions& opt);
CriterionResult criterion_A10(const ValidationOptions& opt);

using CriterionFn = std::function<CriterionResult(const ValidationOptions&)>;
const std::vector<std::pair<std::string, CriterionFn>>& all_criteria();

// runs fn, catching exceptions into a failing result and timing it
CriterionResult run_criterion(const std::string& id, const CriterionFn& fn, const ValidationOptions& opt);

}  // namespace regpet
