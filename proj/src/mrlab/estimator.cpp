#include "mrlab/estimator.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "mrlab/error.hpp"

namespace mrlab {

SelectorAssignment improve_selector(const OrthonormalSystem& system,
                                    const CoefficientVector& coeffs, const MemberSweep& sweep) {
  check_compatible(system, coeffs, sweep.family());
  const auto points = static_cast<std::size_t>(system.points());
  SelectorAssignment sel;
  sel.member.assign(points, 0);
  sel.sign.assign(points, 1);
  std::vector<double> best(points, -std::numeric_limits<double>::infinity());
  const Matrix scaled = system.values * coeffs.asDiagonal();
  sweep.run(scaled, EvaluationPath::kIncremental, [&](std::size_t k, const Vector& s) {
    for (std::size_t x = 0; x < points; ++x) {
      const double v = s(static_cast<Eigen::Index>(x));
      if (v > best[x]) {
        best[x] = v;
        sel.member[x] = static_cast<std::uint32_t>(k);
        sel.sign[x] = 1;
      }
      if (-v > best[x]) {
        best[x] = -v;
        sel.member[x] = static_cast<std::uint32_t>(k);
        sel.sign[x] = -1;
      }
    }
  });
  return sel;
}

SelectorAssignment improve_selector(const OrthonormalSystem& system,
                                    const CoefficientVector& coeffs, const Family& family) {
  return improve_selector(system, coeffs, MemberSweep(family));
}

namespace {

// Row x of the returned matrix is sigma(x) a_i [i in I(x)].
Matrix selector_weights(const SelectorAssignment& selector, const CoefficientVector& coeffs,
                        const Family& family, Eigen::Index points) {
  if (selector.member.size() != static_cast<std::size_t>(points) ||
      selector.sign.size() != static_cast<std::size_t>(points))
    fail(ErrorCode::kInvalidArgument, "selector does not cover every measure point");
  Matrix h = Matrix::Zero(points, coeffs.size());
  for (Eigen::Index x = 0; x < points; ++x) {
    const auto k = selector.member[static_cast<std::size_t>(x)];
    if (k >= family.members.size()) fail(ErrorCode::kInvalidArgument, "selector member out of range");
    const double sigma = selector.sign[static_cast<std::size_t>(x)];
    for (auto i : family.members[k]) h(x, i) = sigma * coeffs(i);
  }
  return h;
}

double quadratic_objective(const Matrix& h, const Matrix& q) {
  return h.cwiseProduct(q).rowwise().sum().squaredNorm();
}

}  // namespace

double selector_objective(const OrthonormalSystem& system, const CoefficientVector& coeffs,
                          const Family& family, const SelectorAssignment& selector) {
  check_compatible(system, coeffs, family);
  const Matrix h = selector_weights(selector, coeffs, family, system.points());
  const Vector r = h.cwiseProduct(system.values).rowwise().sum();
  const double norm = weighted_l2_norm(system.weights, r);
  return norm * norm;
}

SystemAscent ascend_system(const SelectorAssignment& selector, const CoefficientVector& coeffs,
                           const OrthonormalSystem& system, const Family& family, int max_steps,
                           double gradient_tolerance) {
  check_compatible(system, coeffs, family);
  const Vector root = system.weights.cwiseSqrt();
  const Matrix h = selector_weights(selector, coeffs, family, system.points());

  // Euclidean orthonormality in q = W^{1/2} F.
  Matrix q = root.asDiagonal() * system.values;
  double value = quadratic_objective(h, q);
  if (!std::isfinite(value)) fail(ErrorCode::kNumerical, "non-finite objective in system ascent");

  SystemAscent out;
  out.objective.push_back(value);
  double step = 1.0;
  for (int it = 0; it < max_steps; ++it) {
    const Vector r = h.cwiseProduct(q).rowwise().sum();
    const Matrix euclid = 2.0 * r.asDiagonal() * h;
    const Matrix qtg = q.transpose() * euclid;
    const Matrix grad = euclid - q * (0.5 * (qtg + qtg.transpose()));
    const double gnorm2 = grad.squaredNorm();
    out.gradient_norm = std::sqrt(gnorm2);
    if (!std::isfinite(gnorm2)) fail(ErrorCode::kNumerical, "non-finite gradient in system ascent");
    if (out.gradient_norm <= gradient_tolerance) break;

    // q'q = I and q'grad is skew, so (q + t grad)'(q + t grad) = I + t^2 grad'grad
    // and one eigensolve serves every backtracking trial.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(grad.transpose() * grad);
    const Vector mu = eig.eigenvalues().cwiseMax(0.0);
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      const Vector scale = (1.0 + step * step * mu.array()).rsqrt().matrix();
      const Matrix trial =
          (q + step * grad) * (eig.eigenvectors() * scale.asDiagonal() * eig.eigenvectors().transpose());
      const double trial_value = quadratic_objective(h, trial);
      if (!std::isfinite(trial_value)) fail(ErrorCode::kNumerical, "non-finite objective in system ascent");
      if (trial_value >= value + 1e-4 * step * gnorm2) {
        q = trial;
        // the closed form assumes q'q = I exactly; drift would otherwise compound
        const Matrix gram = q.transpose() * q;
        if ((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-13)
          q = nearest_orthonormal(q);
        value = quadratic_objective(h, q);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    out.objective.push_back(value);
    ++out.steps;
    step *= 2.0;
  }

  out.system.weights = system.weights;
  out.system.values = out.steps == 0 ? system.values : Matrix(root.cwiseInverse().asDiagonal() * q);
  return out;
}

CoefficientStep ascend_coeffs(const OrthonormalSystem& system, const MemberSweep& sweep,
                              const CoefficientVector& coeffs) {
  const Family& family = sweep.family();
  const SelectorAssignment sel = improve_selector(system, coeffs, sweep);
  const Matrix h = selector_weights(sel, coeffs, family, system.points());
  // m(x) = sigma(x) partial_sum(I(x))(x) >= 0 is the maximal function.
  const Vector m = h.cwiseProduct(system.values).rowwise().sum();
  const double value = weighted_l2_norm(system.weights, m);

  CoefficientStep out;
  out.coeffs = coeffs;
  if (!(value > 0)) {
    out.stalled = true;
    return out;
  }
  const Vector wm = system.weights.cwiseProduct(m);
  Vector g = Vector::Zero(coeffs.size());
  for (Eigen::Index x = 0; x < system.points(); ++x) {
    const auto k = sel.member[static_cast<std::size_t>(x)];
    const double factor = wm(x) * sel.sign[static_cast<std::size_t>(x)];
    for (auto i : family.members[k]) g(i) += factor * system.values(x, i);
  }
  g /= value;
  const double gnorm = g.norm();
  if (!std::isfinite(gnorm)) fail(ErrorCode::kNumerical, "non-finite coefficient subgradient");
  if (!(gnorm > 0)) {
    out.stalled = true;
    return out;
  }
  out.coeffs = g / gnorm;
  return out;
}

CoefficientStep ascend_coeffs(const OrthonormalSystem& system, const Family& family,
                              const CoefficientVector& coeffs) {
  return ascend_coeffs(system, MemberSweep(family), coeffs);
}

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  std::uint64_t z = seed + static_cast<std::uint64_t>(restart) + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Candidate extend_candidate(const Candidate& from, const Family& family, Eigen::Index measure_points) {
  const auto d = static_cast<Eigen::Index>(family.dimension());
  const Eigen::Index rows = std::max({measure_points, from.system.points(), d});
  const Matrix q_old = from.system.weights.cwiseSqrt().asDiagonal() * from.system.values;

  std::vector<Eigen::Index> source(static_cast<std::size_t>(d), -1);
  std::vector<Eigen::Index> kept;
  for (std::size_t k = 0; k < from.ground.size(); ++k) {
    const auto idx = family.index_of(from.ground[k]);
    if (idx >= 0) {
      source[static_cast<std::size_t>(idx)] = static_cast<Eigen::Index>(k);
      kept.push_back(static_cast<Eigen::Index>(k));
    }
  }
  Matrix base = Matrix::Zero(rows, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c)
    base.col(static_cast<Eigen::Index>(c)).head(q_old.rows()) = q_old.col(kept[c]);
  const Matrix full = complete_orthonormal(base, d);

  Candidate out;
  out.ground = family.ground;
  out.system.weights = Vector::Ones(rows);
  out.system.values.resize(rows, d);
  out.coeffs = Vector::Zero(d);
  Eigen::Index next_fresh = static_cast<Eigen::Index>(kept.size());
  Eigen::Index next_kept = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto src = source[static_cast<std::size_t>(i)];
    if (src >= 0) {
      out.system.values.col(i) = full.col(next_kept++);
      out.coeffs(i) = from.coeffs(src);
    } else {
      out.system.values.col(i) = full.col(next_fresh++);
    }
  }
  const double norm = out.coeffs.norm();
  if (norm > 0) out.coeffs /= norm;
  return out;
}

bool family_included(const Family& inner, const Family& outer) {
  std::set<LatticeSet> members;
  for (std::size_t k = 0; k < outer.size(); ++k) members.insert(outer.member_points(k));
  for (std::size_t k = 0; k < inner.size(); ++k)
    if (!members.count(inner.member_points(k))) return false;
  return true;
}

namespace {

EstimateRecord run_restart(const Family& family, const MemberSweep& sweep,
                           const EstimatorOptions& options, Eigen::Index points, int restart,
                           const Candidate* start) {
  EstimateRecord rec;
  rec.family = family.descriptor.to_string();
  rec.restart = restart;
  rec.seed = options.seed + static_cast<std::uint64_t>(restart);
  const auto d = static_cast<Eigen::Index>(family.dimension());

  OrthonormalSystem system;
  CoefficientVector a;
  if (start != nullptr) {
    system = start->system;
    a = start->coeffs;
  } else {
    std::mt19937_64 rng(restart_seed(options.seed, restart));
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(points, d);
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index x = 0; x < points; ++x) g(x, c) = normal(rng);
    system = OrthonormalSystem::unit_weights(nearest_orthonormal(g));
    a = Vector::Zero(d);
    if (restart == 0) {
      // uniform on the largest member: value >= 1 from the start
      std::size_t largest = 0;
      for (std::size_t k = 1; k < family.size(); ++k)
        if (family.members[k].size() > family.members[largest].size()) largest = k;
      for (auto i : family.members[largest]) a(i) = 1.0;
    } else {
      for (Eigen::Index i = 0; i < d; ++i) a(i) = normal(rng);
    }
    if (!(a.norm() > 0)) a.setConstant(1.0);
    a /= a.norm();
  }

  try {
    double value = operator_value(system, a, family);
    rec.trace.push_back(value);
    for (int it = 0; it < options.iterations; ++it) {
      const SelectorAssignment sel = improve_selector(system, a, sweep);
      system = ascend_system(sel, a, system, family, options.inner_steps).system;
      rec.trace.push_back(operator_value(system, a, family));
      const CoefficientStep step = ascend_coeffs(system, sweep, a);
      a = step.coeffs;
      const double next = operator_value(system, a, family);
      if (!std::isfinite(next)) fail(ErrorCode::kNumerical, "non-finite operator value");
      rec.trace.push_back(next);
      rec.iterations = it + 1;
      const bool converged = next - value <= options.relative_tolerance * value;
      value = next;
      if (converged || step.stalled) break;
    }
    reorthonormalize(system, 1e-13);
    rec.gram_residual = gram_residual(system);
    rec.value = operator_value(system, a, family, EvaluationPath::kNaive);
    if (!std::isfinite(rec.value)) fail(ErrorCode::kNumerical, "non-finite final value");
    rec.trace.push_back(rec.value);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNumerical) throw;
    rec.aborted = true;
    rec.diagnostic = e.what();
  }
  rec.candidate = Candidate{family.ground, std::move(system), std::move(a)};
  return rec;
}

}  // namespace

EstimateResult estimate_mr(const Family& family, const EstimatorOptions& options,
                           const Candidate* warm_start) {
  if (family.members.empty()) fail(ErrorCode::kInvalidArgument, "estimate needs a nonempty family");
  const auto d = static_cast<Eigen::Index>(family.dimension());
  if (d == 0) fail(ErrorCode::kInvalidArgument, "family has no nonempty member");
  const Eigen::Index points = options.measure_points == 0 ? 2 * d : options.measure_points;
  if (points < d)
    fail(ErrorCode::kInvalidArgument, "measure space too small: M=" + std::to_string(points) +
                                          " < d=" + std::to_string(d));
  if (options.restarts < 1 && warm_start == nullptr)
    fail(ErrorCode::kInvalidArgument, "need at least one restart");
  if (options.iterations < 0 || options.inner_steps < 0)
    fail(ErrorCode::kInvalidArgument, "iteration counts must be nonnegative");

  const MemberSweep sweep(family);
  std::optional<Candidate> warm;
  if (warm_start != nullptr) warm = extend_candidate(*warm_start, family, points);

  const int tasks = options.restarts + (warm ? 1 : 0);
  EstimateResult result;
  result.records.resize(static_cast<std::size_t>(tasks));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(tasks));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < tasks; r = next++) {
      try {
        const Candidate* start = (warm && r == options.restarts) ? &*warm : nullptr;
        auto rec = run_restart(family, sweep, options, points, r, start);
        if (options.progress) {
          std::ostringstream os;
          os << "restart " << r << ": "
             << (rec.aborted ? "aborted (" + rec.diagnostic + ")" : "lower bound " + std::to_string(rec.value))
             << " after " << rec.iterations << " iterations";
          options.progress(os.str());
        }
        result.records[static_cast<std::size_t>(r)] = std::move(rec);
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(options.workers, tasks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  bool found = false;
  for (std::size_t r = 0; r < result.records.size(); ++r) {
    const auto& rec = result.records[r];
    if (rec.aborted) continue;
    // lexicographic max of (value, restart id)
    if (!found || rec.value >= result.records[result.best].value) {
      result.best = r;
      found = true;
    }
  }
  if (!found) fail(ErrorCode::kNumerical, "every restart aborted");
  return result;
}

}  // namespace mrlab
