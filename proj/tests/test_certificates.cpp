#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mrlab/certificates.hpp"
#include "mrlab/error.hpp"

using mrlab::BoundCertificate;
using mrlab::MassSplit;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kGamma = 2.0 + kSqrt3;

MassSplit unit_split(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double p[4];
  double s = 0;
  for (double& x : p) {
    x = g(rng);
    s += x * x;
  }
  s = std::sqrt(s);
  return {p[0] / s, p[1] / s, p[2] / s, p[3] / s};
}

MassSplit eigen_direction() {
  const double s = std::sqrt(3.0 + (kSqrt3 - 1) * (kSqrt3 - 1) - 1.0);
  return {1 / s, 1 / s, 0.0, (kSqrt3 - 1) / s};
}

}  // namespace

TEST_CASE("gamma certificate") {
  const auto g = mrlab::gamma_eigenvalue();
  CHECK(std::abs(g.value - 3.732050807568877) <= 1e-12);
  CHECK(g.closed_form_residual <= 1e-12);
  CHECK(g.charpoly_residual <= 1e-10);
  CHECK(g.eigen_residual <= 1e-10);
  CHECK(std::abs(g.solver_value - g.value) <= 1e-12);
  const auto e = eigen_direction();
  CHECK(std::abs(g.eigenvector[0] - e.p1) <= 1e-10);
  CHECK(std::abs(g.eigenvector[1] - e.p2) <= 1e-10);
  CHECK(std::abs(g.eigenvector[2]) <= 1e-10);
  CHECK(std::abs(g.eigenvector[3] - e.p4) <= 1e-10);
  CHECK(std::abs(mrlab::gamma_constant() * mrlab::gamma_constant() -
                 (4 * mrlab::gamma_constant() - 1)) <= 1e-13);
  CHECK(mrlab::mass_split_matrix().isApprox(mrlab::mass_split_matrix().transpose()));
}

TEST_CASE("quadratic form examples") {
  CHECK(mrlab::quadratic_form({1, 0, 0, 0}) == 2.0);
  CHECK(mrlab::quadratic_form({0, 0, 1, 0}) == 1.0);
  CHECK(std::abs(mrlab::quadratic_form(eigen_direction()) - kGamma) <= 1e-12);
  std::mt19937_64 rng(31);
  double best = 0;
  for (int k = 0; k < 100000; ++k) {
    const double v = mrlab::quadratic_form(unit_split(rng));
    CHECK(v <= kGamma + 1e-12);
    best = std::max(best, v);
  }
  CHECK(best >= kGamma - 1e-2);
  const Eigen::Vector4d p(0.3, -0.2, 0.5, 0.7);
  CHECK(std::abs(p.dot(mrlab::mass_split_matrix() * p) - mrlab::quadratic_form({0.3, -0.2, 0.5, 0.7})) <= 1e-15);
}

TEST_CASE("master theorem") {
  auto s = mrlab::master_exponent({4, 2, 1, 0});
  CHECK(s.case_id == 1);
  CHECK(s.exponent == doctest::Approx(2.0).epsilon(1e-15));
  s = mrlab::master_exponent({2, 2, 2, 0});
  CHECK(s.case_id == 2);
  CHECK(s.exponent == 2.0);
  s = mrlab::master_exponent({std::sqrt(kGamma), 2, 0.5, 1});
  CHECK(s.case_id == 1);
  CHECK(s.log_power == 1);
  CHECK(std::abs(s.exponent - std::log(kGamma) / (2 * std::log(2.0))) <= 1e-14);
  CHECK(std::abs(s.exponent - 0.9499843) <= 1e-7);
  CHECK(std::abs(mrlab::tri_growth_exponent() - s.exponent) <= 1e-14);

  try {
    mrlab::master_exponent({2, 2, 1, 0});
    FAIL("boundary case accepted");
  } catch (const mrlab::Error& e) {
    CHECK(e.code() == mrlab::ErrorCode::kUnsupported);
    CHECK(std::string(e.what()) == mrlab::kMasterBoundaryMessage);
  }
  CHECK_THROWS_AS(mrlab::master_exponent({0, 2, 1, 0}), mrlab::Error);
  CHECK_THROWS_AS(mrlab::master_exponent({2, 1, 1, 0}), mrlab::Error);
  CHECK_THROWS_AS(mrlab::master_exponent({2, 2, 0, -1}), mrlab::Error);
}

TEST_CASE("unrolled hypotenuse recursion") {
  BoundCertificate unit;
  unit.alpha_hat = 1.0 / 3.0;
  CHECK(mrlab::unroll_htri(0, 5, unit) == unit.base_bound(5));
  CHECK(unit.base_bound(1) == 1.0);
  CHECK(std::abs(unit.base_bound(8) - (std::log(8.0) / 3 + 1)) <= 1e-15);
  CHECK(unit.rec_bound(8) == unit.base_bound(8));
  // m = 1 gives beta = rho = 1
  CHECK(std::abs(mrlab::unroll_htri(3, 1, unit) - (3 * std::sqrt(2.0) + 1)) <= 1e-12);
  CHECK(mrlab::unroll_htri(3, 1, unit) == doctest::Approx(5.242640).epsilon(1e-6));
  const double ratio = mrlab::unroll_htri(21, 7, unit) / mrlab::unroll_htri(20, 7, unit);
  CHECK(std::abs(ratio / std::sqrt(2.0) - 1) <= 0.01);
  for (int k = 0; k < 30; ++k) CHECK(mrlab::unroll_htri(k + 1, 3, unit) >= mrlab::unroll_htri(k, 3, unit));
  CHECK_THROWS_AS(mrlab::unroll_htri(-1, 3, unit), mrlab::Error);
  CHECK_THROWS_AS(mrlab::unroll_htri(2, 0, unit), mrlab::Error);
}

TEST_CASE("two-term weakening inequality") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0, 1);
  std::exponential_distribution<double> e(0.01);
  for (int k = 0; k < 100000; ++k) {
    const double a = k % 2 ? u(rng) : e(rng);
    const double b = k % 3 ? u(rng) : e(rng);
    // (A+B)^2 + A^2 <= (sqrt2 A + B)^2 is 2AB <= 2 sqrt2 AB
    CHECK((a + b) * (a + b) + a * a <= (std::sqrt(2.0) * a + b) * (std::sqrt(2.0) * a + b));
  }
}

TEST_CASE("triangle step bound") {
  CHECK(std::abs(mrlab::tri_step_bound({0, 0, 1, 0}, 3.0, 0, 0) - std::sqrt(10.0)) <= 1e-14);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0, 5);
  for (int k = 0; k < 20000; ++k) {
    auto p = unit_split(rng);
    // masses are nonnegative
    p = {std::abs(p.p1), std::abs(p.p2), std::abs(p.p3), std::abs(p.p4)};
    const double a = u(rng);
    const double b0 = mrlab::tri_step_bound(p, a, 0, 0);
    const double t = std::sqrt(p.p3 * p.p3 + p.p4 * p.p4);
    const double expanded = mrlab::quadratic_form(p) * a * a + 2 * a * t * (p.p1 + p.p2 + p.p4) + t * t;
    CHECK(std::abs(b0 * b0 - expanded) <= 1e-10 * (1 + expanded));
    CHECK(b0 * b0 <= kGamma * a * a + (1 + kSqrt3) * a + 1 + 1e-10);
    // A^2 coefficient: second difference in A
    const double h = 0.5;
    const double f0 = std::pow(mrlab::tri_step_bound(p, 0, 0, 0), 2);
    const double f1 = std::pow(mrlab::tri_step_bound(p, h, 0, 0), 2);
    const double f2 = std::pow(mrlab::tri_step_bound(p, 2 * h, 0, 0), 2);
    CHECK(std::abs((f2 - 2 * f1 + f0) / (2 * h * h) - mrlab::quadratic_form(p)) <= 1e-9);
    CHECK(mrlab::tri_step_bound(p, a, 1, 1) >= b0);
  }
  CHECK_THROWS_AS(mrlab::tri_step_bound({0, 0, 1, 0}, -1, 0, 0), mrlab::Error);
  CHECK_THROWS_AS(mrlab::tri_step_bound({0, 0, 1, 0}, 1, -1, 0), mrlab::Error);
}

TEST_CASE("cross term maximum") {
  // max over unit p >= 0 of sqrt(p3^2+p4^2)(p1+p2+p4) is (1 + sqrt 3)/2, attained
  // at p3 = 0, p1 = p2; a plain 2A + 1 envelope is too small.
  double best = 0;
  const int n = 60;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k) {
        const double t1 = M_PI / 2 * i / n, t2 = M_PI / 2 * j / n, t3 = M_PI / 2 * k / n;
        const double p1 = std::cos(t1), p2 = std::sin(t1) * std::cos(t2);
        const double p3 = std::sin(t1) * std::sin(t2) * std::cos(t3);
        const double p4 = std::sin(t1) * std::sin(t2) * std::sin(t3);
        best = std::max(best, std::sqrt(p3 * p3 + p4 * p4) * (p1 + p2 + p4));
      }
  CHECK(best <= (1 + kSqrt3) / 2 + 1e-12);
  CHECK(best >= (1 + kSqrt3) / 2 - 1e-3);
  CHECK(best > 1.0);
  const double u = std::sqrt((1 - 1 / kSqrt3) / 4), p4 = std::sqrt(1 - 2 * u * u);
  CHECK(std::abs(p4 * (2 * u + p4) - (1 + kSqrt3) / 2) <= 1e-12);
}

TEST_CASE("triangle bound table") {
  BoundCertificate cert;
  const auto t = mrlab::tri_bound_table(20, cert);
  REQUIRE(t.rows.size() == 21);
  CHECK(t.rows[0].bound == 1.0);
  CHECK(t.rows[0].n == 1);
  CHECK(std::abs(t.rows[1].bound - (std::sqrt(kGamma) + std::sqrt(2.0) * std::log(2.0))) <= 1e-12);
  CHECK(t.rows[1].bound == doctest::Approx(2.912110).epsilon(1e-6));
  for (const auto& r : t.rows) {
    CHECK(r.bound <= r.envelope * (1 + 1e-12));
    CHECK(std::abs(r.envelope - t.envelope_constant * std::pow(double(r.n), t.exponent)) <= 1e-9 * r.envelope);
  }
  for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(t.rows[k].bound >= t.rows[k - 1].bound);

  const auto big = mrlab::tri_bound_table(60, cert);
  const double target = std::pow(2.0, mrlab::tri_growth_exponent());
  for (int k = 16; k < 60; ++k) {
    const double r = big.rows[k + 1].bound / big.rows[k].bound;
    CHECK(std::abs(r / target - 1) <= 0.01);
  }
  CHECK(big.rows[60].n == (std::uint64_t{1} << 60));
  CHECK_THROWS_AS(mrlab::tri_bound_table(61, cert), mrlab::Error);
  CHECK_THROWS_AS(mrlab::tri_bound_table(-1, cert), mrlab::Error);

  BoundCertificate homog;
  homog.c[4] = 0.0;
  homog.tri_base = 1.0;
  const auto h = mrlab::tri_bound_table(12, homog);
  for (const auto& r : h.rows) CHECK(std::abs(r.bound - std::pow(kGamma, r.k / 2.0)) <= 1e-12 * r.bound);
}

TEST_CASE("certificate validation and helpers") {
  BoundCertificate c;
  CHECK_NOTHROW(c.validate());
  c.alpha_hat = 0.5;
  CHECK_THROWS_AS(c.validate(), mrlab::Error);
  c.alpha_hat = 0.0;
  CHECK_THROWS_AS(c.validate(), mrlab::Error);
  c = BoundCertificate{};
  c.c[2] = -1;
  CHECK_THROWS_AS(c.validate(), mrlab::Error);
  c = BoundCertificate{};
  c.tri_base = 0;
  CHECK_THROWS_AS(c.validate(), mrlab::Error);

  CHECK(mrlab::ceil_log2(1) == 0);
  CHECK(mrlab::ceil_log2(2) == 1);
  CHECK(mrlab::ceil_log2(1000) == 10);
  CHECK(mrlab::ceil_log2(1024) == 10);
  CHECK(mrlab::ceil_log2(1025) == 11);
  CHECK(mrlab::mr_trivial_envelope(1) == 1.0);
  CHECK(mrlab::mr_trivial_envelope(3) == std::sqrt(3.0));
}
