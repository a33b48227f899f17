// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mrlab/certificates.hpp"
#include "mrlab/decomposition.hpp"
#include "mrlab/estimator.hpp"
#include "mrlab/oracle.hpp"
#include "test_support.hpp"

namespace {

using mrlab::FamilyDescriptor;
using mrlab::GridPoint;
using mrlab::LatticeSet;
using Eigen::VectorXd;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string run_cli(const std::string& args, int* code) {
  const std::string cmd = std::string(MRLAB_CLI) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    *code = -1;
    return out;
  }
  char buf[4096];
  for (size_t n; (n = fread(buf, 1, sizeof(buf), p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

// 1. gamma = 2 + sqrt 3, its eigenvector, and a Monte Carlo sweep.
void criterion_gamma(Verdict& v) {
  const auto t0 = Clock::now();
  const double gamma = 2.0 + std::sqrt(3.0);
  const auto g = mrlab::gamma_eigenvalue();
  v.require(std::abs(g.value - gamma) <= 1e-12, "eigenvalue");
  const double r = std::sqrt(3.0) - 1.0;
  const double norm = std::sqrt(2.0 + r * r);
  const double expected[4] = {1 / norm, 1 / norm, 0.0, r / norm};
  double err = 0;
  for (int k = 0; k < 4; ++k) err = std::max(err, std::abs(g.eigenvector[k] - expected[k]));
  v.require(err <= 1e-10, "eigenvector");

  int code = 0;
  const std::string out = run_cli("gamma", &code);
  v.require(code == 0 && out.find("gamma=3.732050807568877") != std::string::npos, "gamma subcommand");

  std::mt19937_64 rng(101);
  std::normal_distribution<double> normal;
  double worst = 0;
  for (int k = 0; k < 1000000; ++k) {
    double p[4], s = 0;
    for (double& x : p) {
      x = normal(rng);
      s += x * x;
    }
    s = std::sqrt(s);
    worst = std::max(worst, mrlab::quadratic_form({p[0] / s, p[1] / s, p[2] / s, p[3] / s}));
  }
  v.require(worst <= gamma + 1e-12, "Monte Carlo maximum above gamma");
  const double secs = seconds_since(t0);
  v.require(secs < 5.0, "runtime");
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.15f", g.value);
  v.detail << "gamma=" << buf << " |err|=" << std::abs(g.value - gamma)
           << " eigvec_err=" << err << " mc_max=" << worst << " time=" << secs << "s";
}

// 2. Master-theorem exponent of the triangle recurrence.
void criterion_exponent(Verdict& v) {
  const auto s = mrlab::master_exponent({std::sqrt(2.0 + std::sqrt(3.0)), 2.0, 0.5, 1});
  const long double exact = std::log(2.0L + std::sqrt(3.0L)) / (2.0L * std::log(2.0L));
  const double err = std::abs(static_cast<double>(s.exponent - exact));
  v.require(s.case_id == 1, "case");
  v.require(err <= 1e-14, "exponent");
  char buf[96];
  std::snprintf(buf, sizeof(buf), "exponent=%.16f err=%.2e", s.exponent, err);
  v.detail << buf;
}

// 3. Exact lattice partitions on the integer grid.
bool exact_partition(const mrlab::Decomposition& d, const std::set<GridPoint>& parent) {
  std::map<GridPoint, int> count;
  for (const auto& p : d.pieces)
    for (const auto& g : p.points) ++count[g];
  for (const auto& [g, c] : count)
    if (c != 1 || !parent.count(g)) return false;
  return count.size() == parent.size();
}

// Parents recomputed from the defining inequalities.
std::set<GridPoint> right_triangle(std::int64_t a, std::int64_t b) {
  std::set<GridPoint> s;
  for (std::int64_t i = 1; i <= a; ++i)
    for (std::int64_t j = 1; j <= b; ++j)
      if (i * b + j * a <= a * b) s.insert({i, j});
  return s;
}

std::set<GridPoint> hyp_triangle(std::int64_t a, std::int64_t b, std::int64_t c) {
  std::set<GridPoint> s;
  for (std::int64_t i = std::max<std::int64_t>(a, 1); i <= b; ++i)
    for (std::int64_t j = 1; j <= c; ++j)
      if ((i - a) * c + j * (b - a) <= c * (b - a)) s.insert({i, j});
  return s;
}

void criterion_partition(Verdict& v) {
  const auto t0 = Clock::now();
  long checked = 0;
  for (std::int64_t n = 2; n <= 64; n += 2) {
    v.require(exact_partition(mrlab::split_tri(n), right_triangle(n, n)), "split_tri n=" + std::to_string(n));
    ++checked;
    for (std::int64_t a = 0; a <= n; ++a) {
      for (std::int64_t b = 0; b <= n; ++b) {
        const auto d = mrlab::classify_tri_member(a, b, n);
        v.require(exact_partition(d, right_triangle(a, b)),
                  "classify n=" + std::to_string(n) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
        ++checked;
        if (a <= b) {
          const auto h = mrlab::split_htri(mrlab::make_triangle(a, b, n), n);
          v.require(exact_partition(h, hyp_triangle(a, b, n)),
                    "split_htri n=" + std::to_string(n) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
          ++checked;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 60.0, "runtime");
  v.detail << checked << " decompositions, time=" << secs << "s";
}

// 4. Rectangle-to-interval reduction, pointwise.
void criterion_reduction(Verdict& v) {
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<int> side(1, 6);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = side(rng), n = side(rng);
    const auto rec = mrlab::enumerate_family(FamilyDescriptor::rectangles(m, n));
    const auto d = static_cast<Eigen::Index>(rec.dimension());
    const auto sys = testing_support::random_system(rng, 2 * m * n, d, trial % 2 == 1);
    const VectorXd a = testing_support::random_unit(rng, d);
    const auto red = mrlab::reduce_rectangles_to_intervals(sys, a, rec.ground);
    v.require(mrlab::gram_residual(red.system) <= 1e-10, "reduced system not orthonormal");
    const VectorXd lhs = mrlab::maximal_function(sys, a, rec, mrlab::EvaluationPath::kNaive);
    const VectorXd rhs = mrlab::maximal_function(red.system, red.coeffs, red.family, mrlab::EvaluationPath::kNaive);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  v.require(worst <= 1e-12, "pointwise mismatch");
  v.detail << "100 instances, max pointwise diff=" << worst;
}

// 5. Operator invariants.
void criterion_operator(Verdict& v) {
  std::mt19937_64 rng(105);
  double bessel = 0, seminorm = 0, paths = 0;
  bool monotone = true, union_bound = true;

  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index d = 1 + trial % 9;
    const auto sys = testing_support::random_system(rng, d + trial % 4, d, trial % 2 == 0);
    const VectorXd a = testing_support::random_unit(rng, d) * (0.5 + trial % 3);
    LatticeSet member;
    double mass = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      if (rng() % 2) {
        member.push_back({i + 1, 1});
        mass += a(i) * a(i);
      }
    LatticeSet ground;
    for (Eigen::Index i = 0; i < d; ++i) ground.push_back({i + 1, 1});
    const auto single = mrlab::make_family(FamilyDescriptor::explicit_sets({member, ground}), {member, ground});
    mrlab::Family only = single;
    only.members = {only.members[0]};
    bessel = std::max(bessel, std::abs(mrlab::operator_value(sys, a, only) - std::sqrt(mass)));
  }

  const auto tri = mrlab::enumerate_family(FamilyDescriptor::right_triangles(8));
  const auto d = static_cast<Eigen::Index>(tri.dimension());
  for (int trial = 0; trial < 100; ++trial) {
    const auto sys = testing_support::random_system(rng, d + 1 + trial % 7, d, trial % 2 == 0);
    const VectorXd a = testing_support::random_unit(rng, d);
    const VectorXd b = testing_support::random_unit(rng, d);
    const double fa = mrlab::operator_value(sys, a, tri);
    const double naive = mrlab::operator_value(sys, a, tri, mrlab::EvaluationPath::kNaive);
    const VectorXd inc_mf = mrlab::maximal_function(sys, a, tri);
    const VectorXd naive_mf = mrlab::maximal_function(sys, a, tri, mrlab::EvaluationPath::kNaive);
    paths = std::max({paths, std::abs(fa - naive), (inc_mf - naive_mf).cwiseAbs().maxCoeff()});

    mrlab::Family sub = tri;
    sub.members.clear();
    for (std::size_t k = 0; k < tri.size(); ++k)
      if (rng() % 3) sub.members.push_back(tri.members[k]);
    if (!sub.members.empty()) monotone = monotone && mrlab::operator_value(sys, a, sub) <= fa + 1e-12;
    union_bound = union_bound && fa <= std::sqrt(static_cast<double>(tri.size())) + 1e-12;

    const double t = std::uniform_real_distribution<double>(-3, 3)(rng);
    seminorm = std::max(seminorm, std::abs(mrlab::operator_value(sys, VectorXd(t * a), tri) - std::abs(t) * fa));
    const double fab = mrlab::operator_value(sys, VectorXd(a + b), tri);
    seminorm = std::max(seminorm, fab - fa - mrlab::operator_value(sys, b, tri));
  }
  v.require(bessel <= 1e-12, "Bessel identity");
  v.require(monotone, "family monotonicity");
  v.require(union_bound, "union bound");
  v.require(seminorm <= 1e-10, "seminorm");
  v.require(paths <= 1e-12, "incremental vs naive");
  v.detail << "bessel_err=" << bessel << " seminorm_err=" << seminorm << " path_diff=" << paths;
}

// 6. Estimator at default settings.
void criterion_estimator(Verdict& v) {
  const auto t0 = Clock::now();
  const mrlab::EstimatorOptions opts;  // defaults
  const auto single = mrlab::enumerate_family(FamilyDescriptor::explicit_sets({{{1, 1}}}));
  const double one = mrlab::estimate_mr(single, opts).best_record().value;
  v.require(std::abs(one - 1.0) <= 1e-6, "singleton");

  const auto i2 = mrlab::enumerate_family(FamilyDescriptor::intervals(2));
  const double est = mrlab::estimate_mr(i2, opts).best_record().value;
  const double oracle = mrlab::brute_force_oracle(i2).value;
  v.require(std::abs(est - oracle) <= 1e-3, "Intervals(2) vs oracle");

  std::size_t runs = 0;
  for (const auto& desc :
       {FamilyDescriptor::intervals(2), FamilyDescriptor::intervals(6), FamilyDescriptor::rectangles(3, 2),
        FamilyDescriptor::hyp_triangles(3, 3), FamilyDescriptor::right_triangles(4),
        FamilyDescriptor::right_triangles(8), FamilyDescriptor::right_triangles(6, mrlab::EnumerationMode::kLineCut),
        FamilyDescriptor::explicit_sets({{{1, 1}}, {}, {{1, 1}, {2, 2}}})}) {
    const auto f = mrlab::enumerate_family(desc);
    const auto res = mrlab::estimate_mr(f, opts);
    const double hi = mrlab::mr_trivial_envelope(f.size());
    for (const auto& rec : res.records) {
      ++runs;
      const std::string tag = desc.to_string() + " restart " + std::to_string(rec.restart);
      v.require(!rec.aborted, tag + " aborted");
      v.require(rec.value >= 1.0 - 1e-6 && rec.value <= hi + 1e-9, tag + " value out of range");
      for (std::size_t k = 1; k < rec.trace.size(); ++k)
        v.require(rec.trace[k] >= rec.trace[k - 1] - 1e-12, tag + " trace decreases");
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 120.0, "runtime");
  char buf[160];
  std::snprintf(buf, sizeof(buf), "singleton=%.9f intervals2=%.9f oracle=%.9f, %zu restarts checked, time=%.1fs",
                one, est, oracle, runs, secs);
  v.detail << buf;
}

// 7. Certificate arithmetic.
void criterion_certificate(Verdict& v) {
  mrlab::BoundCertificate cert;  // c5 = 1, B(1) = 1
  const auto table = mrlab::tri_bound_table(60, cert);
  const double b2 = std::sqrt(2.0 + std::sqrt(3.0)) + std::sqrt(2.0) * std::log(2.0);
  const double b2_err = std::abs(table.rows[1].bound - b2);
  v.require(b2_err <= 1e-12, "B(2)");

  const double target = std::pow(2.0, mrlab::tri_growth_exponent());
  int first_within = -1;
  double dev10 = 0;
  for (int k = 10; k < 60; ++k) {
    const double dev = std::abs(table.rows[k + 1].bound / table.rows[k].bound / target - 1.0);
    if (k == 10) dev10 = dev;
    if (dev > 0.01) {
      v.require(false, "ratio B(2^" + std::to_string(k + 1) + ")/B(2^" + std::to_string(k) + ") off by " +
                           std::to_string(100 * dev) + "%");
      first_within = -1;
    } else if (first_within < 0) {
      first_within = k;
    }
  }

  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0, 1);
  std::exponential_distribution<double> e(0.1);
  bool weakening = true;
  for (int k = 0; k < 100000; ++k) {
    const double a = k % 2 ? u(rng) : e(rng);
    const double b = k % 3 ? u(rng) : e(rng);
    const double lhs = (a + b) * (a + b) + a * a;
    const double rhs = (std::sqrt(2.0) * a + b) * (std::sqrt(2.0) * a + b);
    weakening = weakening && lhs <= rhs;
  }
  v.require(weakening, "two-term weakening");
  v.detail << "B(2) err=" << b2_err << " ratio dev at k=10: " << 100 * dev10 << "%, within 1% from k="
           << first_within << ", weakening " << (weakening ? "holds" : "violated");
}

// 8. Byte-identical CLI output across repeats and worker counts.
void criterion_determinism(Verdict& v) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"estimate --family tri --n 4 --restarts 32 --seed 7 --quiet", "estimate"},
      {"scaling --kind tri --ns 2,4,8 --seed 7 --quiet", "scaling"},
  };
  for (const auto& [args, name] : runs) {
    std::string reference;
    for (int workers : {1, 1, 4, 3}) {
      int code = 0;
      const std::string out = run_cli(args + " --workers " + std::to_string(workers), &code);
      v.require(code == 0 && !out.empty(), name + " exit code");
      if (reference.empty()) reference = out;
      v.require(out == reference, name + " differs with --workers " + std::to_string(workers));
    }
  }
  v.detail << "estimate and scaling x4 runs (workers 1,1,4,3), time=" << seconds_since(t0) << "s";
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"gamma eigenvalue certificate", criterion_gamma},
      {"master-theorem exponent", criterion_exponent},
      {"exact lattice partitions, n = 2..64", criterion_partition},
      {"rectangle-to-interval reduction", criterion_reduction},
      {"operator invariants", criterion_operator},
      {"estimator validity and oracle agreement", criterion_estimator},
      {"certificate arithmetic", criterion_certificate},
      {"CLI determinism", criterion_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      criteria[k].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %s  %s  [%s]\n", k + 1, v.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                v.detail.str().c_str());
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
