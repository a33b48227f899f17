#pragma once

#include <vector>

#include "mrlab/family.hpp"
#include "mrlab/system.hpp"

namespace mrlab {

using CoefficientVector = Vector;

enum class EvaluationPath { kIncremental, kNaive };

// x -> sum_{i in member} a_i f_i(x). Indices refer to the system's columns.
Vector partial_sum(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                   const IndexSet& member);

// Partial sums of every member of a family, reusing member k-1's sum when it
// is a subset of member k. The enumeration orders produced by
// enumerate_family make this the common case.
class MemberSweep {
 public:
  explicit MemberSweep(const Family& family);

  const Family& family() const { return *family_; }
  bool extends_previous(std::size_t k) const { return extends_[k]; }
  const IndexSet& delta(std::size_t k) const { return deltas_[k]; }

  // Calls visit(k, sum) for k = 0..|S|-1 in order. `scaled` holds a_i f_i
  // in column i.
  template <class Visit>
  void run(const Matrix& scaled, EvaluationPath path, Visit&& visit) const {
    Vector sum = Vector::Zero(scaled.rows());
    for (std::size_t k = 0; k < deltas_.size(); ++k) {
      if (path == EvaluationPath::kNaive || !extends_[k]) {
        sum.setZero();
        for (auto i : family_->members[k]) sum += scaled.col(i);
      } else {
        for (auto i : deltas_[k]) sum += scaled.col(i);
      }
      visit(k, static_cast<const Vector&>(sum));
    }
  }

 private:
  const Family* family_;
  std::vector<bool> extends_;
  std::vector<IndexSet> deltas_;
};

// x -> max_{I in S} |partial_sum(I)(x)|.
Vector maximal_function(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                        const Family& family, EvaluationPath path = EvaluationPath::kIncremental);

// sqrt(sum_x w_x g(x)^2) with compensated summation.
double weighted_l2_norm(const Vector& weights, const Vector& g);

// L2 norm of the maximal function.
double operator_value(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                      const Family& family, EvaluationPath path = EvaluationPath::kIncremental);

// Checks that system, coefficients and family describe one instance.
void check_compatible(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                      const Family& family);

// Collapses each column i of a full rectangle instance into
// g_i = sum_j a_ij f_ij. The interval instance has a'_i = |a_i.| and
// f'_i = g_i / a'_i (an orthonormal completion where a'_i = 0); its maximal
// function over intervals equals the rectangle family's pointwise.
struct IntervalInstance {
  OrthonormalSystem system;
  CoefficientVector coeffs;
  Family family;
};

IntervalInstance reduce_rectangles_to_intervals(const OrthonormalSystem& system,
                                                const CoefficientVector& coeffs,
                                                const LatticeSet& ground);

}  // namespace mrlab
