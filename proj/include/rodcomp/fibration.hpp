#pragma once

#include <tuple>

#include "rodcomp/lattice.hpp"

namespace rodcomp {

// Circle fibration of T^3 in a primitive direction. basis_change sends the
// direction to (1,0,0); the quotient 2-torus carries the last two
// coordinates, and the projected lattice is exactly Z^2.
struct QuotientTorus {
  IntVec3 direction;
  UnimodularMatrix3 basis_change;
};

inline QuotientTorus quotient(const IntVec3& direction) {
  return {direction, unimodular_completion(direction)};
}

// Point of the quotient torus, coordinates in [0,1)^2.
struct ProjectedPoint {
  RatVec2 p;
  friend bool operator==(const ProjectedPoint&, const ProjectedPoint&) = default;
};

// Closed geodesic on the quotient torus: anchor in [0,1)^2, primitive
// sign-canonical integer direction.
struct ProjectedGeodesic {
  RatVec2 anchor;
  IntVec2 direction2;
  friend bool operator==(const ProjectedGeodesic&, const ProjectedGeodesic&) = default;
};

// Z^2-periodic family of parallel lines in the cover: {x : m.x in c + Z}.
struct LineFamily {
  IntVec2 m;   // primitive normal
  Rat c;       // offset in [0,1)
  friend bool operator==(const LineFamily&, const LineFamily&) = default;
  friend auto operator<=>(const LineFamily& a, const LineFamily& b) {
    return std::tie(a.m, a.c) <=> std::tie(b.m, b.c);
  }
};

inline RatVec2 drop_first(const RatVec3& v) { return {v.y, v.z}; }
inline IntVec2 drop_first(const IntVec3& v) { return {v.y, v.z}; }

// Image of a point of T^3 on the quotient torus.
inline RatVec2 project_point(const QuotientTorus& q, const RatVec3& p) {
  return frac(drop_first(q.basis_change.apply(p)));
}

// Image of a direction vector; (0,0) exactly for directions parallel to the fibre.
inline IntVec2 project_direction(const QuotientTorus& q, const IntVec3& d) {
  return drop_first(q.basis_change.apply(d));
}

inline LineFamily geodesic_normal_form(const ProjectedGeodesic& g) {
  const IntVec2 m = sign_canonical(IntVec2{-g.direction2.y, g.direction2.x});
  return {m, rat_frac(dot(m, g.anchor))};
}

}  // namespace rodcomp
