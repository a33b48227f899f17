#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mrlab {

// Coefficient masses on the four pieces of a triangle split.
struct MassSplit {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;
};

// p1^2 + p2^2 + p3^2 + (p1 + p2 + p4)^2
double quadratic_form(const MassSplit& p);

// Symmetric matrix of quadratic_form.
Eigen::Matrix4d mass_split_matrix();

// 2 + sqrt(3), and friends, each evaluated once.
double gamma_constant();
double sqrt_gamma_constant();
// ln(2 + sqrt 3) / (2 ln 2), the growth exponent of the triangle bound.
double tri_growth_exponent();

struct GammaCertificate {
  double value = 0.0;                  // power-iteration eigenvalue
  std::array<double, 4> eigenvector{}; // unit, first component positive
  int iterations = 0;
  double closed_form_residual = 0.0;   // |value - (2 + sqrt 3)|
  double charpoly_residual = 0.0;      // |det(Q - value I)|
  double eigen_residual = 0.0;         // |Q v - value v|
  double solver_value = 0.0;           // largest eigenvalue from a dense symmetric solver
};

GammaCertificate gamma_eigenvalue();

// T(n) <= a T(n/b) + f(n), f(n) = O(n^c ln^logPower n).
struct Recurrence {
  double a = 1.0;
  double b = 2.0;
  double c = 0.0;
  int log_power = 0;
};

struct MasterSolution {
  int case_id = 0;  // 1: c < log_b a, 2: c > log_b a
  double exponent = 0.0;
  int log_power = 0;
};

inline constexpr const char* kMasterBoundaryMessage =
    "boundary case c = log_b a not covered by the strict-case Master Theorem statement";

// Throws kUnsupported (message kMasterBoundaryMessage) when c = log_b a to
// within 1e-12 relative, kInvalidArgument for a <= 0 or b <= 1.
MasterSolution master_exponent(const Recurrence& r);

enum class BaseBoundKind { kLogPlusOne, kLog };

// Configured constants of the upper-bound recursion. All outputs hold only
// up to these constants.
struct BoundCertificate {
  double alpha_hat = 1.0 / 3.0;   // classical constant
  BaseBoundKind base_kind = BaseBoundKind::kLogPlusOne;
  double rec_factor = 1.0;        // rho(m) = rec_factor * beta(m)
  std::array<double, 5> c = {1.0, 1.0, 1.0, 1.0, 1.0};  // c1..c5
  double tri_base = 1.0;          // B(1)

  double c5() const { return c[4]; }

  // beta(m): bound for mr(S_m).
  double base_bound(std::int64_t m) const;
  // rho(m): bound for mr(REC_{m,n}), uniform in n.
  double rec_bound(std::int64_t m) const;

  // Throws kInvalidArgument on out-of-range constants.
  void validate() const;
};

// (sqrt 2)^k beta(m) + sum_{l=1}^{k-1} (sqrt 2)^{k-1-l} rho(m).
double unroll_htri(int k, std::int64_t m, const BoundCertificate& cert);

// Square root of the four-term triangle-step estimate for mr(TRI_n) given
// bounds A, R, H for mr(TRI_{n/2}), mr(REC_{n/2,n/2}), mr(HTRI_{n/2,n/2}).
double tri_step_bound(const MassSplit& p, double A, double R, double H);

struct TriBoundRow {
  int k = 0;
  std::uint64_t n = 1;
  double bound = 0.0;     // B(2^k)
  double envelope = 0.0;  // C n^{tri_growth_exponent()}
};

struct TriBoundTable {
  std::vector<TriBoundRow> rows;
  double envelope_constant = 0.0;
  double exponent = 0.0;
};

// B(1) = tri_base, B(2^k) = sqrt(gamma) B(2^{k-1}) + c5 sqrt(2^k) ln(2^k),
// k = 0..K. Throws for K > 60.
TriBoundTable tri_bound_table(int max_k, const BoundCertificate& cert);

// Smallest K with 2^K >= n.
int ceil_log2(std::uint64_t n);

// sqrt(|S|).
double mr_trivial_envelope(std::size_t family_size);

}  // namespace mrlab
