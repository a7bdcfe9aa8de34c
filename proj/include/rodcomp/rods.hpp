#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "rodcomp/fibration.hpp"

namespace rodcomp {

// A rod-shaped circle in T^3: primitive sign-canonical integer direction
// plus a basepoint on the circle with coordinates in [0,1). The basepoint
// is canonicalized through the quotient torus of the direction, so two
// descriptions of the same point set compare equal.
struct Rod {
  IntVec3 direction;
  RatVec3 basepoint;
  friend bool operator==(const Rod&, const Rod&) = default;
  friend auto operator<=>(const Rod& a, const Rod& b) {
    return std::tie(a.direction, a.basepoint) <=> std::tie(b.direction, b.basepoint);
  }
};

enum class RodMode { strict, normalize };

inline Rod make_rod(const IntVec3& direction, const RatVec3& basepoint,
                    RodMode mode = RodMode::strict) {
  if (is_zero(direction)) throw AllZeroVector();
  const Int g = gcd3(direction);
  IntVec3 d = direction;
  if (g != 1) {
    if (mode == RodMode::strict) throw NotPrimitive();
    d = {d.x / g, d.y / g, d.z / g};
  }
  d = sign_canonical(d);
  // Canonical basepoint: the point of the rod whose image under the basis
  // change is (0, p) for the projected point p.
  const QuotientTorus q = quotient(d);
  const RatVec2 p = project_point(q, basepoint);
  const RatVec3 lifted{Rat(0), p.x, p.y};
  return Rod{d, frac(q.basis_change.apply_inverse(lifted))};
}

inline bool parallel(const Rod& a, const Rod& b) { return a.direction == b.direction; }

// Projection of a rod to the quotient torus of a chosen direction: a point
// if the rod is a fibre, a closed geodesic otherwise.
inline std::variant<ProjectedPoint, ProjectedGeodesic> project_rod(const QuotientTorus& q,
                                                                   const Rod& r) {
  const IntVec2 d2 = project_direction(q, r.direction);
  const RatVec2 anchor = project_point(q, r.basepoint);
  if (is_zero(d2)) return ProjectedPoint{anchor};
  using boost::multiprecision::gcd;
  const Int g = gcd(abs(d2.x), abs(d2.y));
  return ProjectedGeodesic{anchor, sign_canonical(IntVec2{d2.x / g, d2.y / g})};
}

// Exact intersection test for two rods in T^3. Parallel rods meet iff they
// are the same point set; otherwise the basepoint difference must lie in
// span(d1,d2) + Z^3, i.e. have integral pairing with the primitive normal.
inline bool rods_intersect(const Rod& r1, const Rod& r2) {
  if (parallel(r1, r2)) return r1 == r2;
  const IntVec3 n = primitive_normal(r1.direction, r2.direction);
  return is_integer(dot(n, r1.basepoint - r2.basepoint));
}

struct RodPacking {
  std::vector<Rod> rods;
};

struct ValidatedPacking {
  RodPacking packing;
  std::vector<std::vector<int>> parallel_classes;
  int direction_rank = 0;

  int size() const { return static_cast<int>(packing.rods.size()); }
  const Rod& rod(int i) const { return packing.rods.at(static_cast<std::size_t>(i)); }
};

struct ValidationResult {
  std::optional<ValidatedPacking> value;
  std::vector<std::pair<int, int>> intersecting;

  bool ok() const { return value.has_value(); }
};

namespace detail {

inline int rank_of_directions(const std::vector<IntVec3>& dirs) {
  if (dirs.empty()) return 0;
  // Canonical primitive directions: distinct implies non-parallel.
  const IntVec3& d1 = dirs.front();
  const IntVec3* d2 = nullptr;
  for (const auto& d : dirs)
    if (d != d1) { d2 = &d; break; }
  if (d2 == nullptr) return 1;
  for (const auto& d : dirs)
    if (det3(d1, *d2, d) != 0) return 3;
  return 2;
}

}  // namespace detail

// Checks pairwise disjointness; on success caches the partition into
// parallel classes and the rational rank of the direction set. All
// intersecting pairs are reported, not just the first.
inline ValidationResult validate_packing(const RodPacking& p) {
  if (p.rods.empty()) throw std::invalid_argument("empty packing");
  ValidationResult res;
  const int n = static_cast<int>(p.rods.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rods_intersect(p.rods[static_cast<std::size_t>(i)], p.rods[static_cast<std::size_t>(j)]))
        res.intersecting.emplace_back(i, j);
  if (!res.intersecting.empty()) return res;

  ValidatedPacking vp;
  vp.packing = p;
  std::vector<IntVec3> dirs;
  for (int i = 0; i < n; ++i) {
    const IntVec3& d = p.rods[static_cast<std::size_t>(i)].direction;
    dirs.push_back(d);
    bool placed = false;
    for (auto& cls : vp.parallel_classes) {
      if (p.rods[static_cast<std::size_t>(cls.front())].direction == d) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) vp.parallel_classes.push_back({i});
  }
  vp.direction_rank = detail::rank_of_directions(dirs);
  res.value = std::move(vp);
  return res;
}

inline int direction_rank(const ValidatedPacking& vp) { return vp.direction_rank; }

// Distinct pairs (i, j), i < j, of parallel rods in index order.
inline std::vector<std::pair<int, int>> parallel_pairs(const ValidatedPacking& vp) {
  std::vector<std::pair<int, int>> pairs;
  const int n = vp.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (parallel(vp.rod(i), vp.rod(j))) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace rodcomp
