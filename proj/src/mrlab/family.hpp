#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mrlab/lattice.hpp"

namespace mrlab {

enum class FamilyKind { kIntervals, kRectangles, kHypTriangles, kRightTriangles, kExplicit };
enum class EnumerationMode { kIntegerGrid, kLineCut };

std::string_view to_string(FamilyKind kind);
std::string_view to_string(EnumerationMode mode);
FamilyKind parse_family_kind(std::string_view text);
EnumerationMode parse_enumeration_mode(std::string_view text);

inline constexpr std::int64_t kDefaultLineCutCap = 64;

// Parameters of an index-set family. Intervals use m, right triangles use
// n, rectangles and hypotenuse triangles use both.
struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::kIntervals;
  std::int64_t m = 0;
  std::int64_t n = 0;
  EnumerationMode mode = EnumerationMode::kIntegerGrid;
  std::vector<LatticeSet> members;  // kExplicit only

  // "kind=tri n=4 mode=line-cut". Explicit members are written as
  // members=1:1;1:2|2:1 where an empty slot is the empty set.
  std::string to_string() const;
  static FamilyDescriptor parse(std::string_view text);

  // The size parameter reported in tables (m for intervals, n otherwise).
  std::int64_t size_parameter() const;

  static FamilyDescriptor intervals(std::int64_t m);
  static FamilyDescriptor rectangles(std::int64_t m, std::int64_t n);
  static FamilyDescriptor hyp_triangles(std::int64_t m, std::int64_t n);
  static FamilyDescriptor right_triangles(std::int64_t n,
                                          EnumerationMode mode = EnumerationMode::kIntegerGrid);
  static FamilyDescriptor explicit_sets(std::vector<LatticeSet> members);
};

using IndexSet = std::vector<std::uint32_t>;  // ascending indices into the ground set

// A finite family of distinct lattice sets over a common ground set
// (the union of the members, row-major).
struct Family {
  FamilyDescriptor descriptor;
  LatticeSet ground;
  std::vector<IndexSet> members;

  std::size_t size() const { return members.size(); }
  std::size_t dimension() const { return ground.size(); }

  LatticeSet member_points(std::size_t k) const;
  // Index of p in the ground set, or -1.
  std::int64_t index_of(GridPoint p) const;
  bool has_nonempty_member() const;
};

Family enumerate_family(const FamilyDescriptor& descriptor,
                        std::int64_t line_cut_cap = kDefaultLineCutCap);

// Builds a family from lattice sets, dropping duplicates (first occurrence
// wins) and keeping the given order otherwise.
Family make_family(FamilyDescriptor descriptor, const std::vector<LatticeSet>& sets);

// Distinct lattice traces of Tri_{0,a,b} with real 0 <= a,b <= n, in
// generation order. The empty set comes first.
std::vector<LatticeSet> line_cut_triangles(std::int64_t n);

}  // namespace mrlab
