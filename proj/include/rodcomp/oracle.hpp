#pragma once

#include <optional>

#include "rodcomp/isotopy.hpp"

namespace rodcomp {

// Knobs for the brute-force checkers. These are correctness instruments:
// simple, slow, and independent of the main search paths.
struct OracleConfig {
  long lift_radius = 8;        // max-norm bound on enumerated lifts
  long sample_denominator = 4; // grid fineness for the preliminary scan

  void check() const {
    if (lift_radius < 1) throw std::invalid_argument("lift_radius must be >= 1");
    if (sample_denominator < 2) throw std::invalid_argument("sample_denominator must be >= 2");
  }
};

struct BruteforceIsotopy {
  std::optional<RatVec3> witness;  // empty: not found within the radius
  long searched_radius = 0;
};

// Enumerates every target lift with |lambda|_inf <= lift_radius in the
// canonical order and tests each segment with the exact predicate. No
// arrangement or cell reasoning.
inline BruteforceIsotopy isotopy_bruteforce(const ValidatedPacking& vp, int i, int j,
                                            const OracleConfig& cfg = {}) {
  cfg.check();
  const detail::QuotientScene sc = detail::build_scene(vp, i, j);
  std::vector<detail::Candidate> cands;
  const Int r(cfg.lift_radius);
  for (Int ky = -r; ky <= r; ++ky)
    for (Int kx = -r; kx <= r; ++kx) {
      const RatVec2 lift{sc.target_base.x + Rat(kx), sc.target_base.y + Rat(ky)};
      cands.push_back({IntVec2{kx, ky}, lift, lift - sc.source});
    }
  detail::sort_candidates(cands);
  for (const auto& cand : cands)
    if (!detail::segment_first_blocker(sc.source, cand.lift, sc.families, sc.points))
      return {detail::witness_vector(sc.q, cand.w), cfg.lift_radius};
  return {std::nullopt, cfg.lift_radius};
}

namespace detail {

// Does some lift of the line (b2 + lambda, d2) meet the line (b1, d1)?
inline bool lines_meet_for_shift(const RatVec3& b1, const IntVec3& d1, const RatVec3& b2,
                                 const IntVec3& d2, const IntVec3& lambda) {
  const RatVec3 c{b2.x + Rat(lambda.x) - b1.x, b2.y + Rat(lambda.y) - b1.y,
                  b2.z + Rat(lambda.z) - b1.z};
  if (d1 == d2) {
    // parallel: meet iff the shifted basepoint difference lies on the line
    const Rat cx = c.y * Rat(d2.z) - c.z * Rat(d2.y);
    const Rat cy = c.z * Rat(d2.x) - c.x * Rat(d2.z);
    const Rat cz = c.x * Rat(d2.y) - c.y * Rat(d2.x);
    return cx == 0 && cy == 0 && cz == 0;
  }
  // solve s*d1 - t*d2 = c on two independent coordinate rows, verify the third
  int r0 = -1, r1 = -1;
  const Int a[3] = {d1.x, d1.y, d1.z};
  const Int b[3] = {-d2.x, -d2.y, -d2.z};
  const Rat rhs[3] = {c.x, c.y, c.z};
  for (int u = 0; u < 3 && r1 < 0; ++u)
    for (int w = u + 1; w < 3; ++w)
      if (a[u] * b[w] - a[w] * b[u] != 0) {
        r0 = u;
        r1 = w;
        break;
      }
  const Int det = a[r0] * b[r1] - a[r1] * b[r0];
  const Rat s = (rhs[r0] * Rat(b[r1]) - rhs[r1] * Rat(b[r0])) / Rat(det);
  const Rat t = (Rat(a[r0]) * rhs[r1] - Rat(a[r1]) * rhs[r0]) / Rat(det);
  for (int u = 0; u < 3; ++u)
    if (!(s * Rat(a[u]) + t * Rat(b[u]) == rhs[u])) return false;
  return true;
}

}  // namespace detail

// Grid-seeded exact intersection test. A coarse rational grid over both
// parameters suggests integer shifts to try first; completeness then comes
// from sweeping every shift in the box |lambda_k| <= 1 + |d1_k| + |d2_k|,
// which covers all intersections realized with both parameters in [0,1).
inline bool intersect_bruteforce(const Rod& r1, const Rod& r2, const OracleConfig& cfg = {}) {
  cfg.check();
  const RatVec3& b1 = r1.basepoint;
  const RatVec3& b2 = r2.basepoint;
  const IntVec3& d1 = r1.direction;
  const IntVec3& d2 = r2.direction;

  const long q = cfg.sample_denominator;
  for (long su = 0; su < q; ++su)
    for (long tu = 0; tu < q; ++tu) {
      const Rat s(su, q), t(tu, q);
      const RatVec3 e{b1.x + s * Rat(d1.x) - b2.x - t * Rat(d2.x),
                      b1.y + s * Rat(d1.y) - b2.y - t * Rat(d2.y),
                      b1.z + s * Rat(d1.z) - b2.z - t * Rat(d2.z)};
      const IntVec3 lambda{rat_floor(e.x + Rat(1, 2)), rat_floor(e.y + Rat(1, 2)),
                           rat_floor(e.z + Rat(1, 2))};
      if (detail::lines_meet_for_shift(b1, d1, b2, d2, lambda)) return true;
    }

  const Int bx = 1 + abs(d1.x) + abs(d2.x);
  const Int by = 1 + abs(d1.y) + abs(d2.y);
  const Int bz = 1 + abs(d1.z) + abs(d2.z);
  for (Int lx = -bx; lx <= bx; ++lx)
    for (Int ly = -by; ly <= by; ++ly)
      for (Int lz = -bz; lz <= bz; ++lz)
        if (detail::lines_meet_for_shift(b1, d1, b2, d2, {lx, ly, lz})) return true;
  return false;
}

}  // namespace rodcomp
