#include "mrlab/lattice.hpp"

#include <numeric>

#include "mrlab/error.hpp"

namespace mrlab {
namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(x, y, &out))
    fail(ErrorCode::kInvalidArgument, "lattice arithmetic overflows int64");
  return out;
}

std::int64_t checked_lcm(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(x / std::gcd(x, y), y, &out))
    fail(ErrorCode::kInvalidArgument, "denominators too large for exact lattice arithmetic");
  return out;
}

std::int64_t scaled(const Rational& r, std::int64_t lcm) {
  return checked_mul(r.numerator(), lcm / r.denominator());
}

}  // namespace

TriangleShape make_triangle(Rational a, Rational b, Rational c) {
  if (a < 0) fail(ErrorCode::kInvalidArgument, "triangle parameter a must be nonnegative");
  if (b < a) fail(ErrorCode::kInvalidArgument, "triangle requires a <= b, got a=" + to_string(a) + " b=" + to_string(b));
  if (c < 0) fail(ErrorCode::kInvalidArgument, "triangle requires c >= 0, got c=" + to_string(c));
  return TriangleShape{a, b, c};
}

std::string to_string(const TriangleShape& t) {
  return "Tri(" + to_string(t.a) + "," + to_string(t.b) + "," + to_string(t.c) + ")";
}

LatticeSet lattice_points(const TriangleShape& t) {
  if (t.b < t.a || t.c < 0 || t.a < 0)
    fail(ErrorCode::kInvalidArgument, "invalid triangle " + to_string(t));

  const std::int64_t lcm = checked_lcm(checked_lcm(t.a.denominator(), t.b.denominator()), t.c.denominator());
  const __int128 A = scaled(t.a, lcm);
  const __int128 B = scaled(t.b, lcm);
  const __int128 C = scaled(t.c, lcm);
  const __int128 L = lcm;

  LatticeSet out;
  const std::int64_t i_lo = std::max<std::int64_t>(1, ceil_of(t.a));
  const std::int64_t i_hi = floor_of(t.b);
  const std::int64_t j_hi = floor_of(t.c);
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    for (std::int64_t j = 1; j <= j_hi; ++j) {
      // (i - a) c + j (b - a) <= c (b - a), scaled by lcm^2
      if ((i * L - A) * C + j * L * (B - A) <= C * (B - A)) out.push_back({i, j});
    }
  }
  return out;
}

LatticeSet lattice_points(const RectangleShape& r) {
  if (r.x1 < r.x0 || r.y1 < r.y0) fail(ErrorCode::kInvalidArgument, "empty rectangle bounds");
  LatticeSet out;
  for (std::int64_t i = std::max<std::int64_t>(1, ceil_of(r.x0)); i <= floor_of(r.x1); ++i)
    for (std::int64_t j = std::max<std::int64_t>(1, ceil_of(r.y0)); j <= floor_of(r.y1); ++j)
      out.push_back({i, j});
  return out;
}

HalfPlane make_half_plane(const Rational& alpha, const Rational& beta, const Rational& gamma,
                          bool strict) {
  const std::int64_t lcm =
      checked_lcm(checked_lcm(alpha.denominator(), beta.denominator()), gamma.denominator());
  return HalfPlane{scaled(alpha, lcm), scaled(beta, lcm), scaled(gamma, lcm), strict};
}

Region Region::reflected() const {
  Region out;
  for (const auto& h : constraints_) out.add(HalfPlane{h.beta, h.alpha, h.gamma, h.strict});
  return out;
}

LatticeSet Region::points(std::int64_t i_max, std::int64_t j_max) const {
  LatticeSet out;
  for (std::int64_t i = 1; i <= i_max; ++i)
    for (std::int64_t j = 1; j <= j_max; ++j)
      if (contains({i, j})) out.push_back({i, j});
  return out;
}

Region triangle_region(const TriangleShape& t, const Rational& dx, const Rational& dy) {
  Region r;
  r.add(-1, 0, -(t.a + dx));  // i >= a + dx
  r.add(0, -1, -dy);          // j >= dy
  r.add(0, 1, t.c + dy);      // j <= c + dy
  // (i - dx - a) c + (j - dy)(b - a) <= c (b - a)
  r.add(t.c, t.b - t.a, t.c * (t.b - t.a) + t.c * (t.a + dx) + (t.b - t.a) * dy);
  return r;
}

Region rectangle_region(const RectangleShape& rect) {
  Region r;
  r.add(-1, 0, -rect.x0);
  r.add(1, 0, rect.x1);
  r.add(0, -1, -rect.y0);
  r.add(0, 1, rect.y1);
  return r;
}

}  // namespace mrlab
