#include "mrlab/certificates.hpp"

#include <cmath>

#include "mrlab/error.hpp"

namespace mrlab {

double quadratic_form(const MassSplit& p) {
  const double s = p.p1 + p.p2 + p.p4;
  return p.p1 * p.p1 + p.p2 * p.p2 + p.p3 * p.p3 + s * s;
}

Eigen::Matrix4d mass_split_matrix() {
  Eigen::Matrix4d q;
  q << 2, 1, 0, 1,
       1, 2, 0, 1,
       0, 0, 1, 0,
       1, 1, 0, 1;
  return q;
}

double gamma_constant() {
  static const double value = static_cast<double>(2.0L + std::sqrt(3.0L));
  return value;
}

double sqrt_gamma_constant() {
  // sqrt(2 + sqrt 3) = (sqrt 6 + sqrt 2) / 2
  static const double value = static_cast<double>((std::sqrt(6.0L) + std::sqrt(2.0L)) / 2.0L);
  return value;
}

double tri_growth_exponent() {
  static const double value =
      static_cast<double>(std::log(2.0L + std::sqrt(3.0L)) / (2.0L * std::log(2.0L)));
  return value;
}

GammaCertificate gamma_eigenvalue() {
  const Eigen::Matrix4d q = mass_split_matrix();
  Eigen::Vector4d v(1.0, 1.0, 1.0, 1.0);
  v.normalize();
  GammaCertificate out;
  double lambda = v.dot(q * v);
  for (int it = 1; it <= 500; ++it) {
    Eigen::Vector4d w = q * v;
    v = w.normalized();
    lambda = v.dot(q * v);
    out.iterations = it;
    if ((q * v - lambda * v).norm() <= 4e-16 * lambda) break;
  }
  if (v(0) < 0) v = -v;
  out.value = lambda;
  for (int i = 0; i < 4; ++i) out.eigenvector[static_cast<std::size_t>(i)] = v(i);
  out.closed_form_residual = std::abs(lambda - gamma_constant());
  out.charpoly_residual = std::abs((q - lambda * Eigen::Matrix4d::Identity()).determinant());
  out.eigen_residual = (q * v - lambda * v).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(q);
  out.solver_value = eig.eigenvalues().maxCoeff();
  return out;
}

MasterSolution master_exponent(const Recurrence& r) {
  if (!(r.a > 0)) fail(ErrorCode::kInvalidArgument, "recurrence needs a > 0");
  if (!(r.b > 1)) fail(ErrorCode::kInvalidArgument, "recurrence needs b > 1");
  if (r.log_power < 0) fail(ErrorCode::kInvalidArgument, "log power must be nonnegative");
  if (!std::isfinite(r.c)) fail(ErrorCode::kInvalidArgument, "recurrence exponent must be finite");
  const double critical = std::log(r.a) / std::log(r.b);
  if (std::abs(r.c - critical) <= 1e-12 * std::max(1.0, std::abs(critical)))
    fail(ErrorCode::kUnsupported, kMasterBoundaryMessage);
  MasterSolution out;
  out.log_power = r.log_power;
  if (r.c < critical) {
    out.case_id = 1;
    out.exponent = critical;
  } else {
    out.case_id = 2;
    out.exponent = r.c;
  }
  return out;
}

double BoundCertificate::base_bound(std::int64_t m) const {
  if (m < 1) fail(ErrorCode::kInvalidArgument, "base bound needs m >= 1");
  const double log_part = alpha_hat * std::log(static_cast<double>(m));
  return base_kind == BaseBoundKind::kLogPlusOne ? log_part + 1.0 : log_part;
}

double BoundCertificate::rec_bound(std::int64_t m) const {
  return rec_factor * base_bound(m);
}

void BoundCertificate::validate() const {
  if (!(alpha_hat > 0 && alpha_hat <= 1.0 / 3.0))
    fail(ErrorCode::kInvalidArgument, "alpha_hat must lie in (0, 1/3]");
  if (!(rec_factor > 0)) fail(ErrorCode::kInvalidArgument, "rec_factor must be positive");
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!(c[i] >= 0) || !std::isfinite(c[i]))
      fail(ErrorCode::kInvalidArgument, "constant c" + std::to_string(i + 1) + " must be nonnegative");
  if (!(tri_base > 0) || !std::isfinite(tri_base))
    fail(ErrorCode::kInvalidArgument, "B(1) must be positive");
}

double unroll_htri(int k, std::int64_t m, const BoundCertificate& cert) {
  if (k < 0) fail(ErrorCode::kInvalidArgument, "unroll_htri needs k >= 0");
  if (m < 1) fail(ErrorCode::kInvalidArgument, "unroll_htri needs m >= 1");
  const double root2 = std::sqrt(2.0);
  double sum = std::pow(root2, k) * cert.base_bound(m);
  const double rho = cert.rec_bound(m);
  for (int l = 1; l <= k - 1; ++l) sum += std::pow(root2, k - 1 - l) * rho;
  return sum;
}

double tri_step_bound(const MassSplit& p, double A, double R, double H) {
  if (A < 0 || R < 0 || H < 0) fail(ErrorCode::kInvalidArgument, "tri_step_bound needs A, R, H >= 0");
  if (p.p1 < 0 || p.p2 < 0 || p.p3 < 0 || p.p4 < 0)
    fail(ErrorCode::kInvalidArgument, "mass split components must be nonnegative");
  const double s = std::sqrt(p.p3 * p.p3 + p.p4 * p.p4);
  const double t1 = p.p3 * A;
  const double t2 = p.p1 * A + s * (R + H);
  const double t3 = p.p2 * A + s * (R + H);
  const double t4 = (p.p1 + p.p2 + p.p4) * A + s;
  return std::sqrt(t1 * t1 + t2 * t2 + t3 * t3 + t4 * t4);
}

TriBoundTable tri_bound_table(int max_k, const BoundCertificate& cert) {
  if (max_k < 0 || max_k > 60) fail(ErrorCode::kInvalidArgument, "table size K must be in [0, 60]");
  cert.validate();
  TriBoundTable table;
  table.exponent = tri_growth_exponent();
  const double root_gamma = sqrt_gamma_constant();
  double b = cert.tri_base;
  for (int k = 0; k <= max_k; ++k) {
    const double n = std::ldexp(1.0, k);
    if (k > 0) b = root_gamma * b + cert.c5() * std::sqrt(n) * std::log(n);
    table.rows.push_back({k, std::uint64_t{1} << k, b, 0.0});
  }
  for (const auto& row : table.rows)
    table.envelope_constant = std::max(table.envelope_constant,
                                       row.bound / std::pow(static_cast<double>(row.n), table.exponent));
  for (auto& row : table.rows)
    row.envelope = table.envelope_constant * std::pow(static_cast<double>(row.n), table.exponent);
  return table;
}

int ceil_log2(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "ceil_log2 of zero");
  int k = 0;
  while ((std::uint64_t{1} << k) < n) {
    ++k;
    if (k > 63) fail(ErrorCode::kInvalidArgument, "n too large");
  }
  return k;
}

double mr_trivial_envelope(std::size_t family_size) {
  return std::sqrt(static_cast<double>(family_size));
}

}  // namespace mrlab
