#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mrlab/rational.hpp"

namespace mrlab {

// A point of the positive integer lattice. Row-major order is the
// lexicographic order on (i, j).
struct GridPoint {
  std::int64_t i = 1;
  std::int64_t j = 1;

  auto operator<=>(const GridPoint&) const = default;
};

// Sorted in row-major order, duplicate-free.
using LatticeSet = std::vector<GridPoint>;

// Closed triangle with vertices (a,0), (b,0), (a,c).
struct TriangleShape {
  Rational a;
  Rational b;
  Rational c;
};

TriangleShape make_triangle(Rational a, Rational b, Rational c);

// Closed rectangle [x0,x1] x [y0,y1].
struct RectangleShape {
  Rational x0;
  Rational x1;
  Rational y0;
  Rational y1;
};

std::string to_string(const TriangleShape& t);

// Lattice points (i,j >= 1) of the closed shape, row-major. Exact integer
// arithmetic after clearing denominators.
LatticeSet lattice_points(const TriangleShape& t);
LatticeSet lattice_points(const RectangleShape& r);

// alpha*i + beta*j <= gamma, or < when strict. Integer coefficients.
struct HalfPlane {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t gamma = 0;
  bool strict = false;

  bool contains(GridPoint p) const {
    const __int128 lhs = static_cast<__int128>(alpha) * p.i + static_cast<__int128>(beta) * p.j;
    return strict ? lhs < gamma : lhs <= gamma;
  }
};

// Clears denominators; throws on int64 overflow.
HalfPlane make_half_plane(const Rational& alpha, const Rational& beta,
                          const Rational& gamma, bool strict = false);

// Intersection of half-planes, evaluated on lattice points only.
class Region {
 public:
  Region& add(const HalfPlane& h) {
    constraints_.push_back(h);
    return *this;
  }
  Region& add(const Rational& alpha, const Rational& beta, const Rational& gamma,
              bool strict = false) {
    return add(make_half_plane(alpha, beta, gamma, strict));
  }

  bool contains(GridPoint p) const {
    for (const auto& h : constraints_)
      if (!h.contains(p)) return false;
    return true;
  }

  // Mirror image across the line i = j.
  Region reflected() const;

  LatticeSet points(std::int64_t i_max, std::int64_t j_max) const;

  const std::vector<HalfPlane>& constraints() const { return constraints_; }

 private:
  std::vector<HalfPlane> constraints_;
};

// Closed triangle t translated by (dx, dy).
Region triangle_region(const TriangleShape& t, const Rational& dx = 0, const Rational& dy = 0);

// Closed rectangle.
Region rectangle_region(const RectangleShape& r);

}  // namespace mrlab
