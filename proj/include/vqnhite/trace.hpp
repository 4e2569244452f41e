#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vqnhite {

struct TraceRecord {
  double beta = 0.0;
  std::string method;
  int sample = 0;
  double fidelity = 0.0;
  double energy = 0.0;
};

// Per-beta records of one or more runs. Beta values lie on the arithmetic
// grid dbeta * {1..ceil(beta_max/dbeta)}.
struct FidelityTrace {
  std::vector<TraceRecord> records;
};

}  // namespace vqnhite
