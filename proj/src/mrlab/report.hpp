#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrlab/certificates.hpp"
#include "mrlab/decomposition.hpp"
#include "mrlab/estimator.hpp"

namespace mrlab {

// Every emitted table starts with a "# mrlab <table> v1" comment line
// followed by a fixed header row.
inline constexpr const char* kFamiliesHeader = "member_id,size,points";
inline constexpr const char* kFamilyPointsHeader = "i,j,member_id";
inline constexpr const char* kDecompositionHeader = "piece,role,case,reflected,shape,dx,dy,size,points";
inline constexpr const char* kEstimateHeader = "family,kind,n,mode,restart,iters,value,gram_residual,seed";
inline constexpr const char* kCertifyHeader = "k,n,B,envelope";
inline constexpr const char* kHtriHeader = "k,n,m,bound";
inline constexpr const char* kScalingHeader =
    "kind,n,mode,family_size,dimension,lower_bound,restart,log2_n,log2_lower_bound";

// One row per member; points as "i:j" joined by ';'.
std::string families_csv(const Family& family);
// One row per lattice point of every member.
std::string family_points_csv(const Family& family);

std::string decomposition_csv(const Decomposition& d);

// Rows in restart order, then "# summary ..." with the best lower bound.
std::string estimate_csv(const Family& family, const EstimateResult& result);

std::string certify_csv(const TriBoundTable& table, const BoundCertificate& cert);
std::string htri_csv(int max_k, std::int64_t m, const BoundCertificate& cert);

struct ScalingPoint {
  std::int64_t n = 0;
  std::size_t family_size = 0;
  std::size_t dimension = 0;
  double value = 0.0;
  int restart = 0;
};

struct ScalingStudy {
  FamilyKind kind = FamilyKind::kRightTriangles;
  EnumerationMode mode = EnumerationMode::kIntegerGrid;
  std::vector<ScalingPoint> points;
  double empirical_slope = 0.0;   // least squares of log2 value on log2 n; NaN below two points
  double reference_slope = 0.0;   // master-theorem exponent of the triangle recurrence
};

// Family for a scaling step: n is the single size parameter (m = n for
// rectangles and htri).
FamilyDescriptor scaling_descriptor(FamilyKind kind, EnumerationMode mode, std::int64_t n);

// Estimates each n in order; a step is warm-started from the previous best
// when the previous family is included in the current one.
ScalingStudy run_scaling(FamilyKind kind, EnumerationMode mode, const std::vector<std::int64_t>& ns,
                         const EstimatorOptions& options);

std::string scaling_csv(const ScalingStudy& study);
// Static line chart of log2(lower bound) against log2(n) with the reference
// slope drawn through the first point.
std::string scaling_svg(const ScalingStudy& study);

}  // namespace mrlab
