#pragma once

#include <span>

#include <Eigen/Dense>

namespace mrlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kOrthonormalityTolerance = 1e-8;

// Functions f_i sampled on a finite weighted measure space:
// values(x, i) = f_i(x), weights(x) = measure of point x.
struct OrthonormalSystem {
  Vector weights;
  Matrix values;

  Eigen::Index points() const { return values.rows(); }
  Eigen::Index functions() const { return values.cols(); }

  static OrthonormalSystem unit_weights(Matrix values);
};

// max |G - I| for the weighted Gram matrix G = F^T W F.
double gram_residual(const OrthonormalSystem& system);

// Throws kInvalidInstance unless weights are positive and the Gram residual
// is within tol.
void validate(const OrthonormalSystem& system, double tol = kOrthonormalityTolerance);

// Nearest matrix with orthonormal columns (polar factor A (A^T A)^{-1/2}).
// Requires full column rank.
Matrix nearest_orthonormal(const Matrix& a);

// Re-orthonormalizes a weighted system in place: W^{1/2} F is replaced by its
// polar factor, repeated until the Gram residual is at most tol (max 4 passes).
void reorthonormalize(OrthonormalSystem& system, double tol = 1e-13);

// Appends unit-weight orthonormal columns until q has `columns` columns.
// Each new column is orthogonal to all previous ones.
Matrix complete_orthonormal(const Matrix& q, Eigen::Index columns);

// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

}  // namespace mrlab
