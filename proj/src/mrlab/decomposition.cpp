#include "mrlab/decomposition.hpp"

#include <algorithm>
#include <map>

#include "mrlab/error.hpp"

namespace mrlab {

std::string_view to_string(PieceRole role) {
  switch (role) {
    case PieceRole::kTriangleT1: return "triangle-T1";
    case PieceRole::kTriangleT2: return "triangle-T2";
    case PieceRole::kTriangleT3: return "triangle-T3";
    case PieceRole::kRemainderT4: return "remainder-T4";
    case PieceRole::kHtriTop: return "htri-top";
    case PieceRole::kRectangle: return "rectangle";
    case PieceRole::kHtriBottom: return "htri-bottom";
    case PieceRole::kSquareMinusTriangle: return "square-minus-triangle";
  }
  return "?";
}

std::string PieceShape::to_string() const {
  using mrlab::to_string;
  switch (kind) {
    case Kind::kTriangle:
      return "Tri(" + to_string(p0) + "," + to_string(p1) + "," + to_string(p2) + ")";
    case Kind::kRectangle:
      return "Rect[" + to_string(p0) + "," + to_string(p1) + "]x(0," + to_string(p2) + "]";
    case Kind::kSquareMinusTriangle:
      return "Square(" + to_string(p0) + ")-Tri(0," + to_string(p1) + "," + to_string(p2) + ")";
    case Kind::kStrip:
      return "Strip(" + to_string(p0) + ")";
  }
  return "?";
}

namespace {

PieceShape triangle_shape(const Rational& a, const Rational& b, const Rational& c) {
  return {PieceShape::Kind::kTriangle, a, b, c};
}

void fill_points(Decomposition& d, std::int64_t bound) {
  for (auto& piece : d.pieces) piece.points = piece.region.points(bound, bound);
}

void check_even(std::int64_t n) {
  if (n < 2 || n % 2 != 0)
    fail(ErrorCode::kInvalidArgument,
         "triangle decompositions need an even n >= 2 (got " + std::to_string(n) + ")");
}

// Case 2 pieces of Tri_{0,a,b} with a <= h < b. x0 is where the hypotenuse
// crosses height h.
std::vector<Piece> case_two_pieces(const Rational& a, const Rational& b, const Rational& h) {
  const Rational x0 = a * (b - h) / b;
  std::vector<Piece> out;

  Piece top;
  top.role = PieceRole::kTriangleT1;
  top.shape = triangle_shape(0, x0, b - h);
  top.dy = h;
  top.region = triangle_region(make_triangle(0, x0, b - h), 0, h);
  top.region.add(0, -1, -h, /*strict=*/true);  // j > h
  out.push_back(std::move(top));

  Piece rect;
  rect.role = PieceRole::kRectangle;
  rect.shape = {PieceShape::Kind::kRectangle, 0, x0, h};
  rect.region = rectangle_region(RectangleShape{0, x0, 0, h});
  rect.region.add(0, -1, 0, true);  // j > 0
  out.push_back(std::move(rect));

  Piece side;
  side.role = PieceRole::kHtriBottom;
  side.shape = triangle_shape(x0, a, h);
  side.region = triangle_region(make_triangle(x0, a, h));
  side.region.add(-1, 0, -x0, true);  // i > x0
  out.push_back(std::move(side));
  return out;
}

}  // namespace

Decomposition split_htri(const TriangleShape& shape, std::int64_t m) {
  const Rational& a = shape.a;
  const Rational& b = shape.b;
  const Rational& c = shape.c;
  if (b < a) fail(ErrorCode::kInvalidArgument, "split_htri requires a <= b");
  if (a < 0 || b > m) fail(ErrorCode::kInvalidArgument, "split_htri requires 0 <= a <= b <= m");
  if (c < 0) fail(ErrorCode::kInvalidArgument, "split_htri requires a nonnegative height");

  const Rational half = c / 2;
  const Rational mid = (a + b) / 2;

  Decomposition d;
  d.parent = to_string(shape);
  d.parent_points = lattice_points(shape);

  Piece top;
  top.role = PieceRole::kHtriTop;
  top.shape = triangle_shape(a, mid, half);
  top.dy = half;
  top.region = triangle_region(make_triangle(a, mid, half), 0, half);
  top.region.add(0, -1, -half, true);  // j > c/2
  d.pieces.push_back(std::move(top));

  Piece rect;
  rect.role = PieceRole::kRectangle;
  rect.shape = {PieceShape::Kind::kRectangle, a, mid, half};
  rect.region = rectangle_region(RectangleShape{a, mid, 0, half});
  rect.region.add(0, -1, 0, true);
  d.pieces.push_back(std::move(rect));

  Piece bottom;
  bottom.role = PieceRole::kHtriBottom;
  bottom.shape = triangle_shape(mid, b, half);
  bottom.region = triangle_region(make_triangle(mid, b, half));
  bottom.region.add(-1, 0, -mid, true);  // i > (a+b)/2
  d.pieces.push_back(std::move(bottom));

  fill_points(d, std::max<std::int64_t>(floor_of(b), floor_of(c)));
  return d;
}

Decomposition split_tri(std::int64_t n) {
  check_even(n);
  const Rational h(n / 2);
  const TriangleShape half = make_triangle(0, h, h);

  Decomposition d;
  d.parent = to_string(make_triangle(0, n, n));
  d.parent_points = lattice_points(make_triangle(0, n, n));

  Piece t1;
  t1.role = PieceRole::kTriangleT1;
  t1.shape = triangle_shape(0, h, h);
  t1.dy = h;
  t1.region = triangle_region(half, 0, h);
  t1.region.add(0, -1, -h, true);  // j > h
  d.pieces.push_back(std::move(t1));

  Piece t2;
  t2.role = PieceRole::kTriangleT2;
  t2.shape = triangle_shape(0, h, h);
  t2.dx = h;
  t2.region = triangle_region(half, h, 0);
  t2.region.add(-1, 0, -h, true);  // i > h
  d.pieces.push_back(std::move(t2));

  Piece t3;
  t3.role = PieceRole::kTriangleT3;
  t3.shape = triangle_shape(0, h, h);
  t3.region = triangle_region(half);
  d.pieces.push_back(std::move(t3));

  Piece t4;
  t4.role = PieceRole::kRemainderT4;
  t4.shape = {PieceShape::Kind::kStrip, h, 0, 0};
  t4.region.add(1, 0, h).add(0, 1, h).add(-1, -1, -h, true);  // i,j <= h < i+j
  d.pieces.push_back(std::move(t4));

  fill_points(d, n);
  return d;
}

Decomposition classify_tri_member(const Rational& a, const Rational& b, std::int64_t n) {
  check_even(n);
  if (a < 0 || b < 0 || a > n || b > n)
    fail(ErrorCode::kInvalidArgument, "classify_tri_member needs 0 <= a,b <= n (a=" +
                                          to_string(a) + ", b=" + to_string(b) + ")");
  const Rational h(n / 2);
  const TriangleShape member = make_triangle(0, a, b);

  Decomposition d;
  d.parent = to_string(member);
  d.parent_points = lattice_points(member);

  if (a <= h && b <= h) {
    d.case_id = 1;
    Piece p;
    p.role = PieceRole::kTriangleT3;
    p.shape = triangle_shape(0, a, b);
    p.region = triangle_region(member);
    d.pieces.push_back(std::move(p));
  } else if (a <= h) {
    d.case_id = 2;
    d.pieces = case_two_pieces(a, b, h);
  } else if (b <= h) {
    d.case_id = 3;
    for (auto& p : case_two_pieces(b, a, h)) {
      if (p.role == PieceRole::kTriangleT1) p.role = PieceRole::kTriangleT2;
      p.reflected = true;
      p.region = p.region.reflected();
      d.pieces.push_back(std::move(p));
    }
  } else {
    d.case_id = 4;
    const Rational x0 = a * (b - h) / b;  // hypotenuse at height h
    const Rational y0 = b * (a - h) / a;  // hypotenuse at abscissa h

    Piece top;
    top.role = PieceRole::kTriangleT1;
    top.shape = triangle_shape(0, x0, b - h);
    top.dy = h;
    top.region = triangle_region(make_triangle(0, x0, b - h), 0, h);
    top.region.add(0, -1, -h, true);
    d.pieces.push_back(std::move(top));

    Piece right;
    right.role = PieceRole::kTriangleT2;
    right.shape = triangle_shape(0, a - h, y0);
    right.dx = h;
    right.region = triangle_region(make_triangle(0, a - h, y0), h, 0);
    right.region.add(-1, 0, -h, true);
    d.pieces.push_back(std::move(right));

    // The removed corner is (h,h) - Tri_{0,h-x0,h-y0}, open on its hypotenuse.
    Piece square;
    square.role = PieceRole::kSquareMinusTriangle;
    square.shape = {PieceShape::Kind::kSquareMinusTriangle, h, h - x0, h - y0};
    square.region.add(1, 0, h).add(0, 1, h).add(b, a, a * b);
    d.pieces.push_back(std::move(square));
  }

  fill_points(d, n);
  return d;
}

std::string partition_defect(const Decomposition& d) {
  std::map<GridPoint, std::size_t> owner;
  for (std::size_t k = 0; k < d.pieces.size(); ++k) {
    for (const auto& p : d.pieces[k].points) {
      auto [it, inserted] = owner.emplace(p, k);
      if (!inserted)
        return "point (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") in pieces " +
               std::to_string(it->second) + " and " + std::to_string(k);
    }
  }
  for (const auto& p : d.parent_points)
    if (!owner.count(p))
      return "parent point (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") uncovered";
  if (owner.size() != d.parent_points.size()) {
    for (const auto& [p, k] : owner)
      if (!std::binary_search(d.parent_points.begin(), d.parent_points.end(), p))
        return "piece " + std::to_string(k) + " point (" + std::to_string(p.i) + "," +
               std::to_string(p.j) + ") outside parent";
  }
  return {};
}

}  // namespace mrlab
