#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrlab/mr_operator.hpp"

namespace mrlab {

// Pointwise witness of the sup: member index and sign per measure point.
struct SelectorAssignment {
  std::vector<std::uint32_t> member;
  std::vector<std::int8_t> sign;
};

// Picks (I, sigma) maximizing sigma * partial_sum(I)(x) at each x. Ties go to
// the smallest member index, then to sigma = +1.
SelectorAssignment improve_selector(const OrthonormalSystem& system,
                                    const CoefficientVector& coeffs, const MemberSweep& sweep);
SelectorAssignment improve_selector(const OrthonormalSystem& system,
                                    const CoefficientVector& coeffs, const Family& family);

// sum_x w_x (sigma(x) partial_sum(I(x))(x))^2.
double selector_objective(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                          const Family& family, const SelectorAssignment& selector);

struct SystemAscent {
  OrthonormalSystem system;
  std::vector<double> objective;  // selectorized objective after each accepted step
  int steps = 0;
  double gradient_norm = 0.0;     // Riemannian gradient norm at the returned point
};

// Gradient ascent of the selectorized objective over orthonormal systems,
// with polar retraction and backtracking. Throws kNumerical on non-finite
// values.
SystemAscent ascend_system(const SelectorAssignment& selector, const CoefficientVector& coeffs,
                           const OrthonormalSystem& system, const Family& family,
                           int max_steps = 50, double gradient_tolerance = 1e-10);

struct CoefficientStep {
  CoefficientVector coeffs;
  bool stalled = false;  // zero subgradient; coeffs returned unchanged
};

// One conditional-gradient step a <- g / |g| for the convex, positively
// homogeneous map a -> operator_value, g a subgradient at a.
CoefficientStep ascend_coeffs(const OrthonormalSystem& system, const Family& family,
                              const CoefficientVector& coeffs);
CoefficientStep ascend_coeffs(const OrthonormalSystem& system, const MemberSweep& sweep,
                              const CoefficientVector& coeffs);

struct EstimatorOptions {
  Eigen::Index measure_points = 0;  // 0 selects twice the ground-set size
  int restarts = 16;
  int iterations = 200;
  int inner_steps = 50;
  double relative_tolerance = 1e-9;
  std::uint64_t seed = 1;
  int workers = 1;
  std::function<void(const std::string&)> progress;  // optional, may be called concurrently
};

// A point of the search space, labelled by the ground set it lives on.
// Systems use unit weights.
struct Candidate {
  LatticeSet ground;
  OrthonormalSystem system;
  CoefficientVector coeffs;
};

struct EstimateRecord {
  std::string family;
  int restart = 0;
  int iterations = 0;
  double value = 0.0;  // lower bound on mr(S)
  double gram_residual = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> trace;  // operator value after every phase
  bool aborted = false;
  std::string diagnostic;
  Candidate candidate;
};

struct EstimateResult {
  std::vector<EstimateRecord> records;  // by restart id
  std::size_t best = 0;                 // index into records

  const EstimateRecord& best_record() const { return records.at(best); }
};

// Restart seed for restart r: a SplitMix64 step on (seed + r).
std::uint64_t restart_seed(std::uint64_t seed, int restart);

// Re-embeds a candidate into a family's ground set: shared points keep their
// coefficient and function, new points get zero coefficients and functions
// completing the orthonormal system. Rows are padded with zeros up to
// measure_points.
Candidate extend_candidate(const Candidate& from, const Family& family, Eigen::Index measure_points);

// Best of `restarts` alternating-maximization runs (plus one warm-started
// run when warm_start is given, with restart id = restarts). Deterministic
// for fixed options regardless of the worker count.
EstimateResult estimate_mr(const Family& family, const EstimatorOptions& options,
                           const Candidate* warm_start = nullptr);

// True when every member of `inner` is also a member of `outer`.
bool family_included(const Family& inner, const Family& outer);

}  // namespace mrlab
