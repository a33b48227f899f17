#include "mrlab/system.hpp"

#include <cmath>
#include <vector>

#include "mrlab/error.hpp"

namespace mrlab {

OrthonormalSystem OrthonormalSystem::unit_weights(Matrix values) {
  OrthonormalSystem s;
  s.weights = Vector::Ones(values.rows());
  s.values = std::move(values);
  return s;
}

double gram_residual(const OrthonormalSystem& system) {
  const Matrix g = system.values.transpose() * system.weights.asDiagonal() * system.values;
  return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

void validate(const OrthonormalSystem& system, double tol) {
  if (system.weights.size() != system.values.rows())
    fail(ErrorCode::kInvalidInstance, "weight count does not match the number of measure points");
  for (Eigen::Index x = 0; x < system.weights.size(); ++x)
    if (!(system.weights(x) > 0) || !std::isfinite(system.weights(x)))
      fail(ErrorCode::kInvalidInstance, "measure weights must be positive and finite");
  if (!system.values.allFinite()) fail(ErrorCode::kInvalidInstance, "system has non-finite values");
  if (system.functions() > system.points())
    fail(ErrorCode::kInvalidInstance, "an orthonormal system of " +
                                          std::to_string(system.functions()) +
                                          " functions needs at least that many measure points");
  if (system.functions() == 0) return;
  const double r = gram_residual(system);
  if (!(r <= tol))
    fail(ErrorCode::kInvalidInstance,
         "system is not orthonormal: max |Gram - I| = " + std::to_string(r));
}

Matrix nearest_orthonormal(const Matrix& a) {
  if (a.cols() == 0) return a;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a.transpose() * a);
  const Vector& lambda = eig.eigenvalues();
  if (!(lambda.minCoeff() > 0) || !lambda.allFinite())
    fail(ErrorCode::kNumerical, "polar retraction of a rank-deficient matrix");
  const Matrix inv_sqrt =
      eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  return a * inv_sqrt;
}

void reorthonormalize(OrthonormalSystem& system, double tol) {
  const Vector root = system.weights.cwiseSqrt();
  Matrix q = root.asDiagonal() * system.values;
  for (int pass = 0; pass < 4; ++pass) {
    q = nearest_orthonormal(q);
    system.values = root.cwiseInverse().asDiagonal() * q;
    if (gram_residual(system) <= tol) return;
  }
}

Matrix complete_orthonormal(const Matrix& q, Eigen::Index columns) {
  const Eigen::Index rows = q.rows();
  if (columns > rows) fail(ErrorCode::kInvalidArgument, "cannot complete beyond the row count");
  Matrix out(rows, columns);
  out.leftCols(q.cols()) = q;
  Eigen::Index filled = q.cols();
  for (Eigen::Index e = 0; e < rows && filled < columns; ++e) {
    Vector v = Vector::Unit(rows, e);
    // two Gram-Schmidt passes
    for (int pass = 0; pass < 2; ++pass)
      v -= out.leftCols(filled) * (out.leftCols(filled).transpose() * v);
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    out.col(filled++) = v / norm;
  }
  if (filled < columns) fail(ErrorCode::kNumerical, "orthonormal completion failed");
  return out;
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace mrlab
