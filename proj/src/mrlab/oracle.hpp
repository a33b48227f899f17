#pragma once

#include "mrlab/family.hpp"

namespace mrlab {

struct OracleResult {
  double value = 0.0;
  int levels = 0;        // refinement levels after the base grid
  long evaluations = 0;
};

// Grid search for mr(S) over square orthogonal systems (M = d, d <= 3,
// parameterized by rotation angles and a reflection) and unit coefficient
// vectors (spherical angles). `resolution` is the number of base grid
// points per 2*pi; the best cells are then refined until successive maxima
// differ by less than `tolerance`. The result is a lower bound for mr(S).
OracleResult brute_force_oracle(const Family& family, int resolution = 64, double tolerance = 1e-4);

}  // namespace mrlab
