#include "mrlab/family.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "mrlab/error.hpp"

namespace mrlab {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kIntervals: return "intervals";
    case FamilyKind::kRectangles: return "rectangles";
    case FamilyKind::kHypTriangles: return "htri";
    case FamilyKind::kRightTriangles: return "tri";
    case FamilyKind::kExplicit: return "explicit";
  }
  return "?";
}

std::string_view to_string(EnumerationMode mode) {
  return mode == EnumerationMode::kLineCut ? "line-cut" : "integer-grid";
}

FamilyKind parse_family_kind(std::string_view text) {
  if (text == "intervals") return FamilyKind::kIntervals;
  if (text == "rectangles" || text == "rec") return FamilyKind::kRectangles;
  if (text == "htri") return FamilyKind::kHypTriangles;
  if (text == "tri") return FamilyKind::kRightTriangles;
  if (text == "explicit") return FamilyKind::kExplicit;
  fail(ErrorCode::kInvalidArgument, "unknown family kind '" + std::string(text) + "'");
}

EnumerationMode parse_enumeration_mode(std::string_view text) {
  if (text == "integer-grid" || text == "grid") return EnumerationMode::kIntegerGrid;
  if (text == "line-cut") return EnumerationMode::kLineCut;
  fail(ErrorCode::kInvalidArgument, "unknown enumeration mode '" + std::string(text) + "'");
}

FamilyDescriptor FamilyDescriptor::intervals(std::int64_t m) {
  FamilyDescriptor d;
  d.kind = FamilyKind::kIntervals;
  d.m = m;
  return d;
}

FamilyDescriptor FamilyDescriptor::rectangles(std::int64_t m, std::int64_t n) {
  FamilyDescriptor d;
  d.kind = FamilyKind::kRectangles;
  d.m = m;
  d.n = n;
  return d;
}

FamilyDescriptor FamilyDescriptor::hyp_triangles(std::int64_t m, std::int64_t n) {
  FamilyDescriptor d;
  d.kind = FamilyKind::kHypTriangles;
  d.m = m;
  d.n = n;
  return d;
}

FamilyDescriptor FamilyDescriptor::right_triangles(std::int64_t n, EnumerationMode mode) {
  FamilyDescriptor d;
  d.kind = FamilyKind::kRightTriangles;
  d.n = n;
  d.mode = mode;
  return d;
}

FamilyDescriptor FamilyDescriptor::explicit_sets(std::vector<LatticeSet> members) {
  FamilyDescriptor d;
  d.kind = FamilyKind::kExplicit;
  d.members = std::move(members);
  return d;
}

std::int64_t FamilyDescriptor::size_parameter() const {
  switch (kind) {
    case FamilyKind::kIntervals: return m;
    case FamilyKind::kExplicit: return 0;
    default: return n;
  }
}

std::string FamilyDescriptor::to_string() const {
  std::ostringstream os;
  os << "kind=" << mrlab::to_string(kind);
  switch (kind) {
    case FamilyKind::kIntervals: os << " m=" << m; break;
    case FamilyKind::kRectangles:
    case FamilyKind::kHypTriangles: os << " m=" << m << " n=" << n; break;
    case FamilyKind::kRightTriangles: os << " n=" << n << " mode=" << mrlab::to_string(mode); break;
    case FamilyKind::kExplicit: {
      os << " members=";
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (k) os << '|';
        for (std::size_t t = 0; t < members[k].size(); ++t) {
          if (t) os << ';';
          os << members[k][t].i << ':' << members[k][t].j;
        }
      }
      break;
    }
  }
  return os.str();
}

namespace {

std::int64_t parse_count(std::string_view key, std::string_view value) {
  const Rational r = parse_rational(value);
  if (r.denominator() != 1 || r < 0)
    fail(ErrorCode::kInvalidArgument,
         "family parameter " + std::string(key) + " must be a nonnegative integer");
  return r.numerator();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

LatticeSet parse_member(std::string_view text) {
  LatticeSet out;
  if (text.empty()) return out;
  for (auto item : split(text, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      fail(ErrorCode::kInvalidArgument, "expected i:j in member list, got '" + std::string(item) + "'");
    const auto i = parse_count("i", item.substr(0, colon));
    const auto j = parse_count("j", item.substr(colon + 1));
    if (i < 1 || j < 1) fail(ErrorCode::kInvalidArgument, "lattice coordinates start at 1");
    out.push_back({i, j});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

FamilyDescriptor FamilyDescriptor::parse(std::string_view text) {
  FamilyDescriptor d;
  bool have_kind = false;
  std::istringstream is{std::string(text)};
  std::string token;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kInvalidArgument, "family descriptor token without '=': '" + token + "'");
    const std::string_view key = std::string_view(token).substr(0, eq);
    const std::string_view value = std::string_view(token).substr(eq + 1);
    if (key == "kind") {
      d.kind = parse_family_kind(value);
      have_kind = true;
    } else if (key == "m") {
      d.m = parse_count(key, value);
    } else if (key == "n") {
      d.n = parse_count(key, value);
    } else if (key == "mode") {
      d.mode = parse_enumeration_mode(value);
    } else if (key == "members") {
      for (auto part : split(value, '|')) d.members.push_back(parse_member(part));
    } else {
      fail(ErrorCode::kInvalidArgument, "unknown family descriptor key '" + std::string(key) + "'");
    }
  }
  if (!have_kind) fail(ErrorCode::kInvalidArgument, "family descriptor lacks kind=");
  if (d.kind == FamilyKind::kExplicit && d.members.empty())
    fail(ErrorCode::kInvalidArgument, "explicit family needs members=");
  if (d.mode == EnumerationMode::kLineCut && d.kind != FamilyKind::kRightTriangles)
    fail(ErrorCode::kInvalidArgument, "line-cut mode applies to kind=tri only");
  return d;
}

LatticeSet Family::member_points(std::size_t k) const {
  LatticeSet out;
  out.reserve(members.at(k).size());
  for (auto idx : members[k]) out.push_back(ground[idx]);
  return out;
}

std::int64_t Family::index_of(GridPoint p) const {
  auto it = std::lower_bound(ground.begin(), ground.end(), p);
  if (it == ground.end() || *it != p) return -1;
  return it - ground.begin();
}

bool Family::has_nonempty_member() const {
  return std::any_of(members.begin(), members.end(), [](const IndexSet& s) { return !s.empty(); });
}

Family make_family(FamilyDescriptor descriptor, const std::vector<LatticeSet>& sets) {
  Family f;
  f.descriptor = std::move(descriptor);
  std::set<GridPoint> all;
  for (const auto& s : sets) all.insert(s.begin(), s.end());
  f.ground.assign(all.begin(), all.end());

  std::set<IndexSet> seen;
  for (const auto& s : sets) {
    IndexSet idx;
    idx.reserve(s.size());
    for (const auto& p : s) idx.push_back(static_cast<std::uint32_t>(f.index_of(p)));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (seen.insert(idx).second) f.members.push_back(std::move(idx));
  }
  if (f.members.empty()) fail(ErrorCode::kInvalidArgument, "family has no members");
  return f;
}

namespace {

struct Direction {
  std::int64_t u;
  std::int64_t v;
};

struct ProfileHash {
  std::size_t operator()(const std::vector<std::uint16_t>& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace

std::vector<LatticeSet> line_cut_triangles(std::int64_t n) {
  std::vector<LatticeSet> out;
  out.emplace_back();  // a = 0 or b = 0
  if (n < 2) return out;

  // With u = 1/a, v = 1/b the traced set is {i u + j v <= 1}; along a fixed
  // direction (u:v) the sets are the threshold sets {u i + v j <= t} for
  // t <= n min(u,v). The combinatorics only change at directions
  // perpendicular to differences of lattice points or where some point hits
  // the cap; all of those are reduced (x,y) with 1 <= x,y <= n.
  std::vector<Direction> critical;
  for (std::int64_t x = 1; x <= n; ++x)
    for (std::int64_t y = 1; y <= n; ++y)
      if (std::gcd(x, y) == 1) critical.push_back({x, y});
  std::sort(critical.begin(), critical.end(), [](const Direction& p, const Direction& q) {
    return p.v * q.u < q.v * p.u;
  });
  std::vector<Direction> directions;
  directions.push_back({n + 1, 1});
  for (std::size_t k = 0; k < critical.size(); ++k) {
    directions.push_back(critical[k]);
    if (k + 1 < critical.size())
      directions.push_back({critical[k].u + critical[k + 1].u, critical[k].v + critical[k + 1].v});
  }
  directions.push_back({1, n + 1});

  std::unordered_set<std::vector<std::uint16_t>, ProfileHash> seen;
  seen.insert(std::vector<std::uint16_t>(static_cast<std::size_t>(n - 1), 0));
  std::vector<std::int64_t> values;
  std::vector<std::uint16_t> profile(static_cast<std::size_t>(n - 1));
  for (const auto& d : directions) {
    const std::int64_t cap = n * std::min(d.u, d.v);
    values.clear();
    for (std::int64_t i = 1; i < n; ++i)
      for (std::int64_t j = 1; i + j <= n; ++j) {
        const std::int64_t t = d.u * i + d.v * j;
        if (t <= cap) values.push_back(t);
      }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (const std::int64_t t : values) {
      // column heights: max j with u i + v j <= t
      for (std::int64_t i = 1; i < n; ++i) {
        const std::int64_t room = t - d.u * i;
        profile[static_cast<std::size_t>(i - 1)] =
            room < d.v ? 0 : static_cast<std::uint16_t>(room / d.v);
      }
      if (!seen.insert(profile).second) continue;
      LatticeSet s;
      for (std::int64_t i = 1; i < n; ++i)
        for (std::int64_t j = 1; j <= profile[static_cast<std::size_t>(i - 1)]; ++j) s.push_back({i, j});
      out.push_back(std::move(s));
    }
  }
  return out;
}

Family enumerate_family(const FamilyDescriptor& d, std::int64_t line_cut_cap) {
  std::vector<LatticeSet> sets;
  switch (d.kind) {
    case FamilyKind::kIntervals:
      require(d.m >= 1, "intervals family needs m >= 1");
      for (std::int64_t i = 1; i <= d.m; ++i)
        for (std::int64_t j = i; j <= d.m; ++j) {
          LatticeSet s;
          for (std::int64_t t = i; t <= j; ++t) s.push_back({t, 1});
          sets.push_back(std::move(s));
        }
      break;
    case FamilyKind::kRectangles:
      require(d.m >= 1 && d.n >= 1, "rectangles family needs m, n >= 1");
      for (std::int64_t x = 0; x <= d.m; ++x)
        for (std::int64_t y = x; y <= d.m; ++y)
          sets.push_back(lattice_points(RectangleShape{x, y, 0, d.n}));
      break;
    case FamilyKind::kHypTriangles:
      require(d.m >= 1 && d.n >= 1, "htri family needs m, n >= 1");
      for (std::int64_t a = 0; a <= d.m; ++a)
        for (std::int64_t b = a; b <= d.m; ++b)
          sets.push_back(lattice_points(make_triangle(a, b, d.n)));
      break;
    case FamilyKind::kRightTriangles:
      require(d.n >= 0, "tri family needs n >= 0");
      if (d.mode == EnumerationMode::kLineCut) {
        if (d.n > line_cut_cap)
          fail(ErrorCode::kInvalidArgument, "line-cut enumeration is capped at n=" +
                                                std::to_string(line_cut_cap) + ", got n=" +
                                                std::to_string(d.n));
        sets = line_cut_triangles(d.n);
      } else {
        // b sweeps upward at fixed a so consecutive members are nested
        for (std::int64_t a = 0; a <= d.n; ++a)
          for (std::int64_t b = 0; b <= d.n; ++b)
            sets.push_back(lattice_points(make_triangle(0, a, b)));
      }
      break;
    case FamilyKind::kExplicit:
      require(!d.members.empty(), "explicit family needs at least one member");
      for (const auto& s : d.members) {
        for (const auto& p : s)
          require(p.i >= 1 && p.j >= 1, "lattice coordinates start at 1");
        LatticeSet sorted = s;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        sets.push_back(std::move(sorted));
      }
      break;
  }
  return make_family(d, sets);
}

}  // namespace mrlab
