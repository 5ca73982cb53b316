#pragma once

#include <string>
#include <vector>

namespace phi3 {

// one CSV row of a lemma/property check
struct CheckRow {
  std::string check;
  double N = 0.0;       // scan coordinate (N, M, or t as applicable)
  double estimate = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;   // comparison value, 0 if unused
  bool pass = true;
};

struct CheckReport {
  std::vector<CheckRow> rows;
  bool pass = true;
};

}  // namespace phi3
