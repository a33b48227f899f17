#include "mrlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "mrlab/error.hpp"
#include "mrlab/instance_io.hpp"

namespace mrlab {
namespace {

std::string join_points(const LatticeSet& points) {
  std::string out;
  for (std::size_t t = 0; t < points.size(); ++t) {
    if (t) out += ';';
    out += std::to_string(points[t].i) + ":" + std::to_string(points[t].j);
  }
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

std::string families_csv(const Family& family) {
  std::ostringstream os;
  os << "# mrlab families v1 " << family.descriptor.to_string() << '\n' << kFamiliesHeader << '\n';
  for (std::size_t k = 0; k < family.size(); ++k)
    os << k << ',' << family.members[k].size() << ',' << join_points(family.member_points(k)) << '\n';
  return os.str();
}

std::string family_points_csv(const Family& family) {
  std::ostringstream os;
  os << "# mrlab family-points v1 " << family.descriptor.to_string() << '\n' << kFamilyPointsHeader << '\n';
  for (std::size_t k = 0; k < family.size(); ++k)
    for (const auto& p : family.member_points(k)) os << p.i << ',' << p.j << ',' << k << '\n';
  return os.str();
}

std::string decomposition_csv(const Decomposition& d) {
  std::ostringstream os;
  os << "# mrlab decomposition v1 parent=" << d.parent << '\n' << kDecompositionHeader << '\n';
  for (std::size_t k = 0; k < d.pieces.size(); ++k) {
    const auto& p = d.pieces[k];
    os << k << ',' << to_string(p.role) << ',' << d.case_id << ',' << (p.reflected ? 1 : 0) << ','
       << p.shape.to_string() << ',' << to_string(p.dx) << ',' << to_string(p.dy) << ','
       << p.points.size() << ',' << join_points(p.points) << '\n';
  }
  return os.str();
}

std::string estimate_csv(const Family& family, const EstimateResult& result) {
  const auto& desc = family.descriptor;
  std::ostringstream os;
  os << "# mrlab estimate v1 (values are lower bounds on mr(S))\n" << kEstimateHeader << '\n';
  for (const auto& rec : result.records) {
    if (rec.aborted) continue;
    os << '"' << rec.family << "\"," << to_string(desc.kind) << ',' << desc.size_parameter() << ','
       << to_string(desc.mode) << ',' << rec.restart << ',' << rec.iterations << ','
       << format_double(rec.value) << ',' << format_double(rec.gram_residual) << ',' << rec.seed << '\n';
  }
  const auto& best = result.best_record();
  os << "# summary lower_bound=" << fixed(best.value, 6) << " restart=" << best.restart
     << " family_size=" << family.size() << " envelope=" << fixed(mr_trivial_envelope(family.size()), 6)
     << '\n';
  return os.str();
}

std::string certify_csv(const TriBoundTable& table, const BoundCertificate& cert) {
  std::ostringstream os;
  os << "# mrlab certify v1 (upper bounds up to the configured constants: alpha_hat="
     << format_double(cert.alpha_hat) << " c5=" << format_double(cert.c5())
     << " B(1)=" << format_double(cert.tri_base) << " exponent=" << format_double(table.exponent)
     << " C=" << format_double(table.envelope_constant) << ")\n"
     << kCertifyHeader << '\n';
  for (const auto& row : table.rows)
    os << row.k << ',' << row.n << ',' << format_double(row.bound) << ',' << format_double(row.envelope) << '\n';
  return os.str();
}

std::string htri_csv(int max_k, std::int64_t m, const BoundCertificate& cert) {
  if (max_k < 0 || max_k > 60) fail(ErrorCode::kInvalidArgument, "table size K must be in [0, 60]");
  cert.validate();
  std::ostringstream os;
  os << "# mrlab htri v1 (upper bounds up to the configured constants)\n" << kHtriHeader << '\n';
  for (int k = 0; k <= max_k; ++k)
    os << k << ',' << (std::uint64_t{1} << k) << ',' << m << ',' << format_double(unroll_htri(k, m, cert)) << '\n';
  return os.str();
}

FamilyDescriptor scaling_descriptor(FamilyKind kind, EnumerationMode mode, std::int64_t n) {
  switch (kind) {
    case FamilyKind::kIntervals: return FamilyDescriptor::intervals(n);
    case FamilyKind::kRectangles: return FamilyDescriptor::rectangles(n, n);
    case FamilyKind::kHypTriangles: return FamilyDescriptor::hyp_triangles(n, n);
    case FamilyKind::kRightTriangles: return FamilyDescriptor::right_triangles(n, mode);
    case FamilyKind::kExplicit: break;
  }
  fail(ErrorCode::kInvalidArgument, "scaling needs a parameterized family kind");
}

ScalingStudy run_scaling(FamilyKind kind, EnumerationMode mode, const std::vector<std::int64_t>& ns,
                         const EstimatorOptions& options) {
  if (ns.empty()) fail(ErrorCode::kInvalidArgument, "scaling needs at least one n");
  ScalingStudy study;
  study.kind = kind;
  study.mode = mode;
  study.reference_slope = master_exponent({sqrt_gamma_constant(), 2.0, 0.5, 1}).exponent;

  std::optional<Family> previous;
  std::optional<Candidate> carry;
  for (const auto n : ns) {
    if (n < 1) fail(ErrorCode::kInvalidArgument, "scaling sizes must be positive");
    Family family = enumerate_family(scaling_descriptor(kind, mode, n));
    const bool warm = previous && carry && family_included(*previous, family);
    const EstimateResult result = estimate_mr(family, options, warm ? &*carry : nullptr);
    const auto& best = result.best_record();
    study.points.push_back({n, family.size(), family.dimension(), best.value, best.restart});
    carry = best.candidate;
    previous = std::move(family);
  }

  if (study.points.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(study.points.size());
    for (const auto& p : study.points) {
      const double x = std::log2(static_cast<double>(p.n));
      const double y = std::log2(p.value);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    study.empirical_slope = denom != 0 ? (count * sxy - sx * sy) / denom : std::numeric_limits<double>::quiet_NaN();
  } else {
    study.empirical_slope = std::numeric_limits<double>::quiet_NaN();
  }
  return study;
}

std::string scaling_csv(const ScalingStudy& study) {
  std::ostringstream os;
  os << "# mrlab scaling v1 (lower bounds; the reference slope is the upper-bound exponent)\n"
     << kScalingHeader << '\n';
  for (const auto& p : study.points) {
    os << to_string(study.kind) << ',' << p.n << ',' << to_string(study.mode) << ',' << p.family_size << ','
       << p.dimension << ',' << format_double(p.value) << ',' << p.restart << ','
       << format_double(std::log2(static_cast<double>(p.n))) << ',' << format_double(std::log2(p.value)) << '\n';
  }
  os << "# empirical_slope=" << (std::isnan(study.empirical_slope) ? std::string("n/a") : fixed(study.empirical_slope, 6))
     << " reference_slope=" << fixed(study.reference_slope, 7) << " (reported, not asserted)\n";
  return os.str();
}

std::string scaling_svg(const ScalingStudy& study) {
  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 24, top = 40, bottom = 56;
  std::vector<std::pair<double, double>> data;
  for (const auto& p : study.points) data.emplace_back(std::log2(static_cast<double>(p.n)), std::log2(p.value));
  if (data.empty()) fail(ErrorCode::kInvalidArgument, "nothing to plot");

  double x0 = data.front().first, x1 = data.front().first;
  for (const auto& [x, y] : data) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
  }
  if (x1 - x0 < 1) x1 = x0 + 1;
  // reference line through the first data point
  auto reference = [&](double x) { return data.front().second + study.reference_slope * (x - data.front().first); };
  double y0 = std::min(reference(x0), reference(x1)), y1 = std::max(reference(x0), reference(x1));
  for (const auto& [x, y] : data) {
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (y1 - y0 < 1) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
  auto py = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<!-- mrlab scaling chart v1 -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << "mr lower bounds, " << to_string(study.kind) << " (" << to_string(study.mode) << ")</text>\n";
  // axes
  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0;
    const double yv = y0 + (y1 - y0) * t / 4.0;
    os << "<line x1=\"" << fixed(px(xv), 2) << "\" y1=\"" << height - bottom << "\" x2=\"" << fixed(px(xv), 2)
       << "\" y2=\"" << height - bottom + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(px(xv), 2) << "\" y=\"" << height - bottom + 18 << "\" text-anchor=\"middle\">"
       << fixed(xv, 2) << "</text>\n";
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(py(yv), 2) << "\" x2=\"" << left << "\" y2=\""
       << fixed(py(yv), 2) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << fixed(py(yv) + 4, 2) << "\" text-anchor=\"end\">" << fixed(yv, 2)
       << "</text>\n";
  }
  os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 14
     << "\" text-anchor=\"middle\">log2(n)</text>\n";
  os << "<text x=\"18\" y=\"" << (top + height - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (top + height - bottom) / 2 << ")\">log2(lower bound)</text>\n";

  os << "<polyline fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"6,4\" stroke-width=\"1.5\" points=\""
     << fixed(px(x0), 2) << ',' << fixed(py(reference(x0)), 2) << ' ' << fixed(px(x1), 2) << ','
     << fixed(py(reference(x1)), 2) << "\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
  for (std::size_t k = 0; k < data.size(); ++k)
    os << (k ? " " : "") << fixed(px(data[k].first), 2) << ',' << fixed(py(data[k].second), 2);
  os << "\"/>\n";
  for (const auto& [x, y] : data)
    os << "<circle cx=\"" << fixed(px(x), 2) << "\" cy=\"" << fixed(py(y), 2) << "\" r=\"3\" fill=\"#1f5fbf\"/>\n";

  const double lx = left + 16, ly = top + 8;
  os << "<g id=\"legend\">\n";
  os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
     << "\" stroke=\"#1f5fbf\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">estimate (lower bound)</text>\n";
  os << "<line x1=\"" << lx << "\" y1=\"" << ly + 18 << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly + 18
     << "\" stroke=\"#999999\" stroke-dasharray=\"6,4\" stroke-width=\"1.5\"/>\n";
  os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 22 << "\">reference slope " << fixed(study.reference_slope, 7)
     << "</text>\n</g>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace mrlab
