#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mrlab/lattice.hpp"

namespace mrlab {

enum class PieceRole {
  kTriangleT1,
  kTriangleT2,
  kTriangleT3,
  kRemainderT4,
  kHtriTop,
  kRectangle,
  kHtriBottom,
  kSquareMinusTriangle,
};

std::string_view to_string(PieceRole role);

// Geometric description of a piece before translation/reflection.
//   kTriangle:             Tri_{p0,p1,p2}
//   kRectangle:            [p0,p1] x (0,p2]
//   kSquareMinusTriangle:  (0,p0]^2 minus (p0,p0) - Tri_{0,p1,p2} (open)
//   kStrip:                {i,j <= p0, i + j > p0}
struct PieceShape {
  enum class Kind { kTriangle, kRectangle, kSquareMinusTriangle, kStrip };
  Kind kind = Kind::kTriangle;
  Rational p0;
  Rational p1;
  Rational p2;

  std::string to_string() const;
};

struct Piece {
  PieceRole role = PieceRole::kTriangleT3;
  PieceShape shape;
  Rational dx;  // translation applied to shape
  Rational dy;
  bool reflected = false;  // mirrored across i = j after translation
  Region region;           // half-open where needed to make an exact partition
  LatticeSet points;
};

struct Decomposition {
  std::string parent;      // e.g. "Tri(0,3,7)"
  LatticeSet parent_points;
  std::vector<Piece> pieces;
  int case_id = 0;  // 1..4 for classify_tri_member, 0 otherwise
};

// Top triangle, rectangle and bottom triangle of Tri_{a,b,c}, cut at height
// c/2 and abscissa (a+b)/2. m bounds the admissible a, b.
Decomposition split_htri(const TriangleShape& shape, std::int64_t m);

// Tri_{0,n,n} = T1 u T2 u T3 u T4 for even n >= 2.
Decomposition split_tri(std::int64_t n);

// Pieces of Tri_{0,a,b} relative to the split of Tri_{0,n,n}.
Decomposition classify_tri_member(const Rational& a, const Rational& b, std::int64_t n);

// Empty when the pieces are pairwise disjoint and cover the parent exactly,
// otherwise a description of the first defect.
std::string partition_defect(const Decomposition& d);

}  // namespace mrlab
