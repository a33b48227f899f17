#include "mrlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "mrlab/error.hpp"

namespace mrlab {
namespace {

constexpr double kPi = std::numbers::pi;

// Small dense evaluation, independent of the operator module.
class GridObjective {
 public:
  explicit GridObjective(const Family& family) : family_(family), d_(static_cast<int>(family.dimension())) {}

  int dimension() const { return d_; }
  int parameters() const { return d_ == 1 ? 0 : (d_ == 2 ? 2 : 5); }

  std::array<double, 5> range() const {
    if (d_ == 2) return {2 * kPi, kPi, 0, 0, 0};
    return {2 * kPi, kPi, 2 * kPi, 2 * kPi, kPi / 2};
  }

  double operator()(const std::array<double, 5>& t, int reflect) const {
    double q[3][3] = {};
    double a[3] = {};
    if (d_ == 1) {
      q[0][0] = 1.0;
      a[0] = 1.0;
    } else if (d_ == 2) {
      const double c = std::cos(t[0]), s = std::sin(t[0]);
      const double r = reflect ? -1.0 : 1.0;
      q[0][0] = c;
      q[0][1] = -s * r;
      q[1][0] = s;
      q[1][1] = c * r;
      a[0] = std::cos(t[1]);
      a[1] = std::sin(t[1]);
    } else {
      // Rz(alpha) Ry(beta) Rz(gamma) diag(1, 1, +-1)
      const double ca = std::cos(t[0]), sa = std::sin(t[0]);
      const double cb = std::cos(t[1]), sb = std::sin(t[1]);
      const double cg = std::cos(t[2]), sg = std::sin(t[2]);
      const double rz1[3][3] = {{ca, -sa, 0}, {sa, ca, 0}, {0, 0, 1}};
      const double ry[3][3] = {{cb, 0, sb}, {0, 1, 0}, {-sb, 0, cb}};
      const double rz2[3][3] = {{cg, -sg, 0}, {sg, cg, 0}, {0, 0, 1}};
      double tmp[3][3] = {};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) tmp[i][j] += rz1[i][k] * ry[k][j];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) q[i][j] += tmp[i][k] * rz2[k][j];
          if (j == 2 && reflect) q[i][j] = -q[i][j];
        }
      a[0] = std::sin(t[4]) * std::cos(t[3]);
      a[1] = std::sin(t[4]) * std::sin(t[3]);
      a[2] = std::cos(t[4]);
    }
    double total = 0.0;
    for (int x = 0; x < d_; ++x) {
      double best = 0.0;
      for (const auto& member : family_.members) {
        double s = 0.0;
        for (auto i : member) s += a[i] * q[x][i];
        best = std::max(best, std::abs(s));
      }
      total += best * best;
    }
    return std::sqrt(total);
  }

 private:
  const Family& family_;
  int d_;
};

struct GridPointEval {
  std::array<double, 5> t{};
  int reflect = 0;
  double value = 0.0;
};

// Calls fn on every multi-index of a grid with counts[k] points per axis.
template <class Fn>
void for_each_index(const std::vector<int>& counts, Fn&& fn) {
  std::vector<int> idx(counts.size(), 0);
  while (true) {
    fn(idx);
    std::size_t k = 0;
    while (k < counts.size() && ++idx[k] == counts[k]) idx[k++] = 0;
    if (k == counts.size()) break;
  }
}

}  // namespace

OracleResult brute_force_oracle(const Family& family, int resolution, double tolerance) {
  const int d = static_cast<int>(family.dimension());
  if (d > 3) fail(ErrorCode::kInvalidArgument, "brute-force oracle supports d <= 3, got d=" + std::to_string(d));
  if (family.members.empty()) fail(ErrorCode::kInvalidArgument, "oracle needs a nonempty family");
  if (resolution < 4) fail(ErrorCode::kInvalidArgument, "oracle resolution must be at least 4");

  OracleResult out;
  if (d == 0) return out;
  const GridObjective objective(family);
  const int params = objective.parameters();
  if (params == 0) {
    out.value = objective({}, 0);
    out.evaluations = 1;
    return out;
  }

  const auto range = objective.range();
  std::vector<int> counts(static_cast<std::size_t>(params));
  std::array<double, 5> spacing{};
  for (int k = 0; k < params; ++k) {
    counts[static_cast<std::size_t>(k)] = std::max(2, static_cast<int>(std::ceil(resolution * range[k] / (2 * kPi))));
    spacing[k] = range[k] / counts[static_cast<std::size_t>(k)];
  }

  std::vector<GridPointEval> evaluated;
  for (int reflect = 0; reflect < 2; ++reflect) {
    for_each_index(counts, [&](const std::vector<int>& idx) {
      GridPointEval g;
      g.reflect = reflect;
      for (int k = 0; k < params; ++k) g.t[k] = idx[static_cast<std::size_t>(k)] * spacing[k];
      g.value = objective(g.t, reflect);
      evaluated.push_back(g);
    });
  }
  out.evaluations = static_cast<long>(evaluated.size());

  const std::size_t keep = std::min<std::size_t>(16, evaluated.size());
  std::partial_sort(evaluated.begin(), evaluated.begin() + static_cast<long>(keep), evaluated.end(),
                    [](const GridPointEval& p, const GridPointEval& q) { return p.value > q.value; });
  evaluated.resize(keep);
  double best = evaluated.front().value;

  // Zoom: each level halves the spacing around every kept candidate.
  const int half_width = 2;
  const std::vector<int> local(static_cast<std::size_t>(params), 2 * half_width + 1);
  std::array<double, 5> h = spacing;
  for (int level = 1; level <= 60; ++level) {
    for (int k = 0; k < params; ++k) h[k] *= 0.5;
    for (auto& cand : evaluated) {
      GridPointEval centre = cand;
      for_each_index(local, [&](const std::vector<int>& idx) {
        std::array<double, 5> t = centre.t;
        for (int k = 0; k < params; ++k) t[k] += (idx[static_cast<std::size_t>(k)] - half_width) * h[k];
        const double v = objective(t, centre.reflect);
        ++out.evaluations;
        if (v > cand.value) {
          cand.value = v;
          cand.t = t;
        }
      });
    }
    double level_best = best;
    for (const auto& cand : evaluated) level_best = std::max(level_best, cand.value);
    const double gain = level_best - best;
    best = level_best;
    out.levels = level;
    if (level >= 2 && gain < tolerance) break;
  }
  out.value = best;
  return out;
}

}  // namespace mrlab
