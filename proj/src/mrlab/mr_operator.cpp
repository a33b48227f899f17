#include "mrlab/mr_operator.hpp"

#include <algorithm>
#include <cmath>

#include "mrlab/error.hpp"

namespace mrlab {

Vector partial_sum(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                   const IndexSet& member) {
  Vector sum = Vector::Zero(system.points());
  for (auto i : member) {
    if (i >= static_cast<std::uint32_t>(system.functions()) ||
        i >= static_cast<std::uint32_t>(coeffs.size()))
      fail(ErrorCode::kInvalidInstance, "index " + std::to_string(i) + " outside the ground set");
    sum += coeffs(i) * system.values.col(i);
  }
  return sum;
}

MemberSweep::MemberSweep(const Family& family)
    : family_(&family), extends_(family.members.size(), false), deltas_(family.members.size()) {
  for (std::size_t k = 0; k < family.members.size(); ++k) {
    const IndexSet& cur = family.members[k];
    if (k > 0) {
      const IndexSet& prev = family.members[k - 1];
      if (std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) {
        extends_[k] = true;
        std::set_difference(cur.begin(), cur.end(), prev.begin(), prev.end(),
                            std::back_inserter(deltas_[k]));
        continue;
      }
    }
    deltas_[k] = cur;
  }
}

void check_compatible(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                      const Family& family) {
  const auto d = static_cast<Eigen::Index>(family.dimension());
  if (system.functions() != d || coeffs.size() != d)
    fail(ErrorCode::kInvalidInstance,
         "instance dimension mismatch: family ground set has " + std::to_string(d) +
             " points, system has " + std::to_string(system.functions()) + " functions, " +
             std::to_string(coeffs.size()) + " coefficients");
  if (system.weights.size() != system.points())
    fail(ErrorCode::kInvalidInstance, "weight count does not match the number of measure points");
}

Vector maximal_function(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                        const Family& family, EvaluationPath path) {
  check_compatible(system, coeffs, family);
  if (family.members.empty()) fail(ErrorCode::kInvalidArgument, "maximal function over an empty family");
  const Matrix scaled = system.values * coeffs.asDiagonal();
  Vector best = Vector::Zero(system.points());
  MemberSweep(family).run(scaled, path, [&](std::size_t, const Vector& s) {
    best = best.cwiseMax(s.cwiseAbs());
  });
  return best;
}

double weighted_l2_norm(const Vector& weights, const Vector& g) {
  std::vector<double> terms(static_cast<std::size_t>(g.size()));
  for (Eigen::Index x = 0; x < g.size(); ++x) terms[static_cast<std::size_t>(x)] = weights(x) * g(x) * g(x);
  return std::sqrt(compensated_sum(terms));
}

double operator_value(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                      const Family& family, EvaluationPath path) {
  return weighted_l2_norm(system.weights, maximal_function(system, coeffs, family, path));
}

IntervalInstance reduce_rectangles_to_intervals(const OrthonormalSystem& system,
                                                const CoefficientVector& coeffs,
                                                const LatticeSet& ground) {
  if (ground.empty()) fail(ErrorCode::kInvalidInstance, "empty rectangle ground set");
  const std::int64_t m = ground.back().i;
  const std::int64_t n = ground.back().j;
  if (static_cast<std::int64_t>(ground.size()) != m * n)
    fail(ErrorCode::kInvalidInstance, "ground set is not a full rectangle lattice");
  for (std::size_t k = 0; k < ground.size(); ++k) {
    const GridPoint expect{static_cast<std::int64_t>(k) / n + 1, static_cast<std::int64_t>(k) % n + 1};
    if (ground[k] != expect) fail(ErrorCode::kInvalidInstance, "ground set is not a full rectangle lattice");
  }
  if (system.functions() != m * n || coeffs.size() != m * n)
    fail(ErrorCode::kInvalidInstance, "system does not match the rectangle ground set");
  if (system.points() < m) fail(ErrorCode::kInvalidInstance, "too few measure points for the reduction");

  const Vector root = system.weights.cwiseSqrt();
  Vector b(m);
  // Work with q = W^{1/2} f so that orthonormality is the Euclidean one.
  Matrix q(system.points(), m);
  std::vector<Eigen::Index> degenerate;
  for (std::int64_t i = 0; i < m; ++i) {
    Vector g = Vector::Zero(system.points());
    double mass = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const auto col = i * n + j;
      g += coeffs(col) * system.values.col(col);
      mass += coeffs(col) * coeffs(col);
    }
    b(i) = std::sqrt(mass);
    if (b(i) > 0) {
      q.col(i) = root.cwiseProduct(g) / b(i);
    } else {
      degenerate.push_back(i);
    }
  }
  if (!degenerate.empty()) {
    // Orthonormal completion against the nondegenerate columns.
    std::vector<Eigen::Index> live;
    for (Eigen::Index i = 0; i < m; ++i)
      if (b(i) > 0) live.push_back(i);
    Matrix base(system.points(), static_cast<Eigen::Index>(live.size()));
    for (std::size_t k = 0; k < live.size(); ++k) base.col(static_cast<Eigen::Index>(k)) = q.col(live[k]);
    const Matrix full = complete_orthonormal(base, m);
    for (std::size_t k = 0; k < degenerate.size(); ++k)
      q.col(degenerate[k]) = full.col(static_cast<Eigen::Index>(live.size() + k));
  }

  IntervalInstance out;
  out.system.weights = system.weights;
  out.system.values = root.cwiseInverse().asDiagonal() * q;
  out.coeffs = b;
  out.family = enumerate_family(FamilyDescriptor::intervals(m));
  return out;
}

}  // namespace mrlab
