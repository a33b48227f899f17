#pragma once

#include <string>
#include <string_view>

#include "mrlab/mr_operator.hpp"

namespace mrlab {

inline constexpr const char* kInstanceHeader = "# mrlab-instance v1";

struct Instance {
  Family family;
  OrthonormalSystem system;
  CoefficientVector coeffs;
};

// Line-oriented text:
//   # mrlab-instance v1
//   family kind=tri n=4 mode=integer-grid
//   points <M>
//   weights uniform | weights w_1 ... w_M
//   coefficients a_1 ... a_d          (ground-set order, row-major)
//   system                            (then M rows of d values)
// Blank lines and further '#' lines are ignored. Syntax errors throw
// kInvalidArgument; inconsistent sizes, bad weights or a Gram residual above
// tol throw kInvalidInstance.
Instance parse_instance(std::string_view text, double tol = kOrthonormalityTolerance);
Instance load_instance(const std::string& path, double tol = kOrthonormalityTolerance);

std::string format_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

// Shortest decimal that round-trips ("%.17g" style).
std::string format_double(double v);

}  // namespace mrlab
