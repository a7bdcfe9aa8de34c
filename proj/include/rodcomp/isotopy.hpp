#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <variant>
#include <vector>

#include "rodcomp/rods.hpp"

namespace rodcomp {

struct NotParallelPair : std::invalid_argument {
  NotParallelPair() : std::invalid_argument("rods are not parallel") {}
};

struct SameRod : std::invalid_argument {
  SameRod() : std::invalid_argument("the two rod indices coincide") {}
};

struct EndpointOnObstacle : std::invalid_argument {
  EndpointOnObstacle() : std::invalid_argument("segment endpoint lies on an obstacle") {}
};

// Z^2-translates of a single point in the cover (the lifts of a parallel
// obstacle rod's projection).
struct PointLattice {
  RatVec2 p;  // representative in [0,1)^2
  friend bool operator==(const PointLattice&, const PointLattice&) = default;
};

namespace detail {

inline Rat maxnorm(const RatVec2& v) {
  const Rat ax = rat_abs(v.x), ay = rat_abs(v.y);
  return ax < ay ? ay : ax;
}

// First Z^2-translate of p on the open segment (a,b), if any.
inline std::optional<RatVec2> lattice_point_on_open_segment(const RatVec2& a, const RatVec2& b,
                                                            const RatVec2& p) {
  const RatVec2 d = b - a;
  if (d.x != 0) {
    const Rat lo = a.x < b.x ? a.x : b.x;
    const Rat hi = a.x < b.x ? b.x : a.x;
    const Int klo = rat_floor(lo - p.x) + 1;  // p.x + k > lo
    const Int khi = rat_ceil(hi - p.x) - 1;   // p.x + k < hi
    for (Int k = klo; k <= khi; ++k) {
      const Rat x = p.x + Rat(k);
      const Rat t = (x - a.x) / d.x;  // in (0,1) by choice of k
      const Rat y = a.y + t * d.y;
      if (is_integer(y - p.y)) return RatVec2{x, y};
    }
    return std::nullopt;
  }
  if (!is_integer(a.x - p.x)) return std::nullopt;
  const Rat lo = a.y < b.y ? a.y : b.y;
  const Rat hi = a.y < b.y ? b.y : a.y;
  const Int klo = rat_floor(lo - p.y) + 1;
  const Int khi = rat_ceil(hi - p.y) - 1;
  if (klo > khi) return std::nullopt;
  return RatVec2{a.x, p.y + Rat(klo)};
}

struct SegmentBlock {
  enum class Kind { line, point } kind;
  int index;      // family or point-lattice index
  Int level;      // line: integer k with m.x = c + k met by the segment
  RatVec2 point;  // point: the exact blocking translate
};

// First obstruction of the closed segment [a,b] against the line families
// and of the open segment (a,b) against the point lattices. Throws if an
// endpoint itself sits on an obstacle.
inline std::optional<SegmentBlock> segment_first_blocker(const RatVec2& a, const RatVec2& b,
                                                         const std::vector<LineFamily>& families,
                                                         const std::vector<PointLattice>& points) {
  for (std::size_t f = 0; f < families.size(); ++f) {
    const Rat va = dot(families[f].m, a) - families[f].c;
    const Rat vb = dot(families[f].m, b) - families[f].c;
    if (is_integer(va) || is_integer(vb)) throw EndpointOnObstacle();
    const Rat lo = va < vb ? va : vb;
    const Rat hi = va < vb ? vb : va;
    const Int k = rat_ceil(lo);
    if (Rat(k) <= hi)
      return SegmentBlock{SegmentBlock::Kind::line, static_cast<int>(f), k, {}};
  }
  for (std::size_t s = 0; s < points.size(); ++s) {
    if (is_integral(a - points[s].p) || is_integral(b - points[s].p)) throw EndpointOnObstacle();
    if (auto hit = lattice_point_on_open_segment(a, b, points[s].p))
      return SegmentBlock{SegmentBlock::Kind::point, static_cast<int>(s), Int(0), *hit};
  }
  return std::nullopt;
}

}  // namespace detail

// True iff the closed segment [a,b] crosses no family line and the open
// segment (a,b) contains no point-lattice translate.
inline bool segment_clear(const RatVec2& a, const RatVec2& b,
                          const std::vector<LineFamily>& families,
                          const std::vector<PointLattice>& points) {
  if (a == b) throw std::invalid_argument("degenerate segment");
  return !detail::segment_first_blocker(a, b, families, points).has_value();
}

// The unit strip of a line family around the source lift:
// family.m . x - family.c in (k, k+1) on the whole open cell.
struct StripBound {
  LineFamily family;
  Int k;
  friend bool operator==(const StripBound&, const StripBound&) = default;
};

struct BlockedCandidate {
  RatVec2 lift;      // target lift inside the cell
  IntVec2 lambda;    // lift = target_base + lambda
  RatVec2 blocker;   // exact lattice point on the open segment
  int obstacle_rod;  // packing index of the blocking parallel rod
  friend bool operator==(const BlockedCandidate&, const BlockedCandidate&) = default;
};

// Re-checkable record of an exhausted arrangement cell: the strip bounds
// around the source, the cell polygon, and one exact blocker per in-cell
// target lift.
struct CellCertificate {
  RatVec2 source;
  RatVec2 target_base;
  std::vector<StripBound> strips;
  bool bounded = false;
  std::vector<RatVec2> cell_vertices;
  std::vector<BlockedCandidate> candidates;
};

struct Isotopic {
  RatVec3 v;
};
struct NotIsotopic {
  CellCertificate certificate;
};
struct Undecided {
  long search_radius;
};
using IsotopyVerdict = std::variant<Isotopic, NotIsotopic, Undecided>;

namespace detail {

// Obstacle data for one parallel-pair query, all in the quotient of the
// common direction.
struct QuotientScene {
  QuotientTorus q;
  RatVec2 source;       // lift of rod i's projection, fixed in [0,1)^2
  RatVec2 target_base;  // rod j's projection in [0,1)^2
  std::vector<LineFamily> families;            // deduplicated
  std::vector<std::vector<int>> family_rods;   // owning rod indices per family
  std::vector<PointLattice> points;
  std::vector<int> point_rods;
};

inline QuotientScene build_scene(const ValidatedPacking& vp, int i, int j) {
  if (i == j) throw SameRod();
  const Rod& ri = vp.rod(i);
  const Rod& rj = vp.rod(j);
  if (!parallel(ri, rj)) throw NotParallelPair();

  QuotientScene sc{quotient(ri.direction), {}, {}, {}, {}, {}, {}};
  sc.source = project_point(sc.q, ri.basepoint);
  sc.target_base = project_point(sc.q, rj.basepoint);

  std::map<LineFamily, std::vector<int>> fams;
  for (int t = 0; t < vp.size(); ++t) {
    if (t == i || t == j) continue;
    const auto image = project_rod(sc.q, vp.rod(t));
    if (const auto* pt = std::get_if<ProjectedPoint>(&image)) {
      sc.points.push_back(PointLattice{pt->p});
      sc.point_rods.push_back(t);
    } else {
      fams[geodesic_normal_form(std::get<ProjectedGeodesic>(image))].push_back(t);
    }
  }
  for (auto& [fam, rods] : fams) {
    sc.families.push_back(fam);
    sc.family_rods.push_back(rods);
  }
  return sc;
}

inline RatVec2 solve2(const IntVec2& m1, const Rat& r1, const IntVec2& m2, const Rat& r2) {
  const Int d = cross2(m1, m2);
  return {(r1 * Rat(m2.y) - r2 * Rat(m1.y)) / Rat(d), (Rat(m1.x) * r2 - Rat(m2.x) * r1) / Rat(d)};
}

// Clip a convex polygon by the closed half-plane sign*(m.x - rhs) <= 0.
inline std::vector<RatVec2> clip_halfplane(const std::vector<RatVec2>& poly, const IntVec2& m,
                                           const Rat& rhs, int sign) {
  std::vector<RatVec2> out;
  const std::size_t n = poly.size();
  for (std::size_t u = 0; u < n; ++u) {
    const RatVec2& cur = poly[u];
    const RatVec2& nxt = poly[(u + 1) % n];
    const Rat vc = Rat(sign) * (dot(m, cur) - rhs);
    const Rat vn = Rat(sign) * (dot(m, nxt) - rhs);
    if (vc <= 0) out.push_back(cur);
    if ((vc < 0 && vn > 0) || (vc > 0 && vn < 0)) {
      const Rat t = vc / (vc - vn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

inline std::vector<RatVec2> canonical_polygon(std::vector<RatVec2> poly) {
  // drop consecutive duplicates
  std::vector<RatVec2> clean;
  for (const auto& v : poly)
    if (clean.empty() || !(clean.back() == v)) clean.push_back(v);
  while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
  if (clean.size() < 3) return clean;
  // drop collinear mid-points left behind by clipping
  std::vector<RatVec2> corners;
  const std::size_t n = clean.size();
  for (std::size_t u = 0; u < n; ++u) {
    const RatVec2& prev = clean[(u + n - 1) % n];
    const RatVec2& cur = clean[u];
    const RatVec2& next = clean[(u + 1) % n];
    if (cross2(cur - prev, next - cur) != 0) corners.push_back(cur);
  }
  if (corners.size() < 3) return corners;
  Rat area2(0);
  for (std::size_t u = 0; u < corners.size(); ++u)
    area2 += cross2(corners[u], corners[(u + 1) % corners.size()]);
  if (area2 < 0) std::reverse(corners.begin(), corners.end());
  const auto lo = std::min_element(corners.begin(), corners.end());
  std::rotate(corners.begin(), lo, corners.end());
  return corners;
}

// Closure of the arrangement cell containing the source: intersection of
// the unit strips, seeded with the parallelogram of two non-parallel ones.
inline std::vector<RatVec2> cell_polygon(const std::vector<StripBound>& strips, std::size_t f1,
                                         std::size_t f2) {
  const auto& s1 = strips[f1];
  const auto& s2 = strips[f2];
  const Rat lo1 = s1.family.c + Rat(s1.k), hi1 = lo1 + 1;
  const Rat lo2 = s2.family.c + Rat(s2.k), hi2 = lo2 + 1;
  std::vector<RatVec2> poly{
      solve2(s1.family.m, lo1, s2.family.m, lo2), solve2(s1.family.m, hi1, s2.family.m, lo2),
      solve2(s1.family.m, hi1, s2.family.m, hi2), solve2(s1.family.m, lo1, s2.family.m, hi2)};
  for (std::size_t f = 0; f < strips.size(); ++f) {
    if (f == f1 || f == f2) continue;
    const Rat lo = strips[f].family.c + Rat(strips[f].k);
    poly = clip_halfplane(poly, strips[f].family.m, lo + 1, +1);  // m.x <= lo+1
    if (poly.empty()) break;
    poly = clip_halfplane(poly, strips[f].family.m, lo, -1);  // m.x >= lo
    if (poly.empty()) break;
  }
  return canonical_polygon(poly);
}

inline bool strictly_inside_strips(const std::vector<StripBound>& strips, const RatVec2& x) {
  for (const auto& s : strips) {
    const Rat v = dot(s.family.m, x) - s.family.c;
    if (!(Rat(s.k) < v && v < Rat(s.k) + 1)) return false;
  }
  return true;
}

struct Candidate {
  IntVec2 lambda;
  RatVec2 lift;
  RatVec2 w;  // lift - source
};

inline void sort_candidates(std::vector<Candidate>& cands) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::make_tuple(maxnorm(a.w), a.w.x, a.w.y) <
           std::make_tuple(maxnorm(b.w), b.w.x, b.w.y);
  });
}

// A lift exactly on an obstacle line would mean the target rod meets that
// obstacle, impossible for a validated packing.
inline void check_lift_off_lines(const std::vector<StripBound>& strips, const RatVec2& lift) {
  for (const auto& s : strips)
    if (is_integer(dot(s.family.m, lift) - s.family.c))
      throw std::logic_error("target lift on an obstacle line in a validated packing");
}

inline void append_if_inside(const QuotientScene& sc, const std::vector<StripBound>& strips,
                             const Int& kx, const Int& ky, std::vector<Candidate>& cands) {
  const RatVec2 lift{sc.target_base.x + Rat(kx), sc.target_base.y + Rat(ky)};
  check_lift_off_lines(strips, lift);
  if (!strictly_inside_strips(strips, lift)) return;
  cands.push_back({IntVec2{kx, ky}, lift, lift - sc.source});
}

// All target lifts strictly inside the strips whose lambda lies in the
// given closed box. Used for the unbounded standalone search.
inline std::vector<Candidate> candidates_in_box(const QuotientScene& sc,
                                                const std::vector<StripBound>& strips,
                                                const Int& xlo, const Int& xhi, const Int& ylo,
                                                const Int& yhi) {
  std::vector<Candidate> cands;
  for (Int ky = ylo; ky <= yhi; ++ky)
    for (Int kx = xlo; kx <= xhi; ++kx) append_if_inside(sc, strips, kx, ky, cands);
  sort_candidates(cands);
  return cands;
}

// Bounded-cell enumeration, sliced row by row so the cost scales with the
// cell height rather than the area of its bounding box. Requires at least
// one strip with a nonzero x-component of the normal (guaranteed when two
// strips have non-parallel normals).
inline std::vector<Candidate> candidates_in_cell(const QuotientScene& sc,
                                                 const std::vector<StripBound>& strips,
                                                 const Int& ylo, const Int& yhi) {
  std::vector<Candidate> cands;
  for (Int ky = ylo; ky <= yhi; ++ky) {
    const Rat y = sc.target_base.y + Rat(ky);
    bool row_ok = true;
    std::optional<Rat> xmin, xmax;  // open interval for the lift's x-coordinate
    for (const auto& s : strips) {
      const Rat lo = s.family.c + Rat(s.k);
      const Rat hi = lo + 1;
      if (s.family.m.x == 0) {
        const Rat v = Rat(s.family.m.y) * y;
        if (v == lo || v == hi || is_integer(v - s.family.c))
          throw std::logic_error("target lift on an obstacle line in a validated packing");
        if (v < lo || hi < v) {
          row_ok = false;
          break;
        }
      } else {
        Rat t1 = (lo - Rat(s.family.m.y) * y) / Rat(s.family.m.x);
        Rat t2 = (hi - Rat(s.family.m.y) * y) / Rat(s.family.m.x);
        if (t2 < t1) std::swap(t1, t2);
        if (!xmin || *xmin < t1) xmin = t1;
        if (!xmax || t2 < *xmax) xmax = t2;
      }
    }
    if (!row_ok || !xmin || !xmax || *xmax <= *xmin) continue;
    const Int kx_lo = rat_floor(*xmin - sc.target_base.x);
    const Int kx_hi = rat_ceil(*xmax - sc.target_base.x);
    for (Int kx = kx_lo; kx <= kx_hi; ++kx) append_if_inside(sc, strips, kx, ky, cands);
  }
  sort_candidates(cands);
  return cands;
}

inline RatVec3 witness_vector(const QuotientTorus& q, const RatVec2& w) {
  return q.basis_change.apply_inverse(RatVec3{Rat(0), w.x, w.y});
}

}  // namespace detail

// Decides whether rods i and j (distinct, parallel) are linearly isotopic in
// the complement of the other rods. The search happens in the universal
// cover of the quotient torus: the source lift is fixed, target lifts range
// over the arrangement cell of the source (bounded case) or a max-norm box
// of the given radius (unbounded standalone case).
inline IsotopyVerdict decide_linear_isotopy(const ValidatedPacking& vp, int i, int j,
                                            long search_radius = 16) {
  const detail::QuotientScene sc = detail::build_scene(vp, i, j);

  std::vector<StripBound> strips;
  for (const auto& fam : sc.families) {
    const Rat v = dot(fam.m, sc.source) - fam.c;
    if (is_integer(v))
      throw std::logic_error("source lift on an obstacle line in a validated packing");
    strips.push_back({fam, rat_floor(v)});
  }

  std::size_t f1 = 0, f2 = 0;
  bool bounded = false;
  for (std::size_t u = 0; u < strips.size() && !bounded; ++u)
    for (std::size_t v = u + 1; v < strips.size() && !bounded; ++v)
      if (cross2(strips[u].family.m, strips[v].family.m) != 0) {
        f1 = u;
        f2 = v;
        bounded = true;
      }

  std::vector<detail::Candidate> cands;
  std::vector<RatVec2> poly;
  if (bounded) {
    poly = detail::cell_polygon(strips, f1, f2);
    Rat ylo = poly.front().y, yhi = ylo;
    for (const auto& v : poly) {
      ylo = v.y < ylo ? v.y : ylo;
      yhi = yhi < v.y ? v.y : yhi;
    }
    cands = detail::candidates_in_cell(sc, strips, rat_ceil(ylo - sc.target_base.y),
                                       rat_floor(yhi - sc.target_base.y));
  } else {
    const Int r(search_radius);
    cands = detail::candidates_in_box(sc, strips, -r, r, -r, r);
  }

  std::vector<BlockedCandidate> blocked;
  for (const auto& cand : cands) {
    const auto hit = detail::segment_first_blocker(sc.source, cand.lift, sc.families, sc.points);
    if (!hit) return Isotopic{detail::witness_vector(sc.q, cand.w)};
    if (hit->kind == detail::SegmentBlock::Kind::line) {
      if (bounded)
        throw std::logic_error("line crossing inside a convex arrangement cell");
      continue;  // strip-filtered lifts in the unbounded case share every gap, but stay safe
    }
    blocked.push_back({cand.lift, cand.lambda, hit->point,
                       sc.point_rods[static_cast<std::size_t>(hit->index)]});
  }

  if (!bounded) return Undecided{search_radius};
  return NotIsotopic{CellCertificate{sc.source, sc.target_base, strips, true, poly, blocked}};
}

// Independent witness check: basepoint_i + v must land on rod j, and the
// swept annulus (a segment in the quotient cover) must miss every other
// rod. Shares only the segment predicate with the decision procedure.
inline bool verify_isotopy_witness(const ValidatedPacking& vp, int i, int j, const RatVec3& v) {
  try {
    if (i < 0 || j < 0 || i >= vp.size() || j >= vp.size() || i == j) return false;
    const Rod& ri = vp.rod(i);
    const Rod& rj = vp.rod(j);
    if (!parallel(ri, rj)) return false;

    const QuotientTorus q = quotient(ri.direction);
    const RatVec2 a = project_point(q, ri.basepoint);
    const RatVec2 w = drop_first(q.basis_change.apply(v));
    if (!(frac(a + w) == project_point(q, rj.basepoint))) return false;
    if (w == RatVec2{Rat(0), Rat(0)}) return false;

    std::vector<LineFamily> families;
    std::vector<PointLattice> points;
    for (int t = 0; t < vp.size(); ++t) {
      if (t == i || t == j) continue;
      const auto image = project_rod(q, vp.rod(t));
      if (const auto* pt = std::get_if<ProjectedPoint>(&image))
        points.push_back(PointLattice{pt->p});
      else
        families.push_back(geodesic_normal_form(std::get<ProjectedGeodesic>(image)));
    }
    return segment_clear(a, a + w, families, points);
  } catch (const std::exception&) {
    return false;
  }
}

// Re-verifies an exhausted-cell certificate from first principles; shares
// no code with decide_linear_isotopy's cell construction or enumeration.
inline bool verify_cell_certificate(const ValidatedPacking& vp, int i, int j,
                                    const CellCertificate& cert) {
  try {
    if (i < 0 || j < 0 || i >= vp.size() || j >= vp.size() || i == j) return false;
    if (!parallel(vp.rod(i), vp.rod(j))) return false;
    const detail::QuotientScene sc = detail::build_scene(vp, i, j);
    if (!(cert.source == sc.source) || !(cert.target_base == sc.target_base)) return false;
    if (!cert.bounded) return false;

    // Strip bounds: exactly one per obstacle family, each the unit gap
    // containing the source.
    if (cert.strips.size() != sc.families.size()) return false;
    std::vector<LineFamily> listed;
    for (const auto& s : cert.strips) listed.push_back(s.family);
    std::sort(listed.begin(), listed.end());
    if (!(listed == sc.families)) return false;  // sc.families is map-ordered
    for (const auto& s : cert.strips) {
      const Rat v = dot(s.family.m, sc.source) - s.family.c;
      if (is_integer(v) || rat_floor(v) != s.k) return false;
    }

    // Boundedness and an enclosing box from two non-parallel strips.
    const StripBound* s1 = nullptr;
    const StripBound* s2 = nullptr;
    for (std::size_t u = 0; u < cert.strips.size() && s2 == nullptr; ++u)
      for (std::size_t w = u + 1; w < cert.strips.size(); ++w)
        if (cross2(cert.strips[u].family.m, cert.strips[w].family.m) != 0) {
          s1 = &cert.strips[u];
          s2 = &cert.strips[w];
          break;
        }
    if (s2 == nullptr) return false;
    Rat xlo, xhi, ylo, yhi;
    bool first = true;
    for (int e1 = 0; e1 <= 1; ++e1)
      for (int e2 = 0; e2 <= 1; ++e2) {
        const RatVec2 c =
            detail::solve2(s1->family.m, s1->family.c + Rat(s1->k + e1), s2->family.m,
                           s2->family.c + Rat(s2->k + e2));
        if (first || c.x < xlo) xlo = c.x;
        if (first || xhi < c.x) xhi = c.x;
        if (first || c.y < ylo) ylo = c.y;
        if (first || yhi < c.y) yhi = c.y;
        first = false;
      }

    // Candidate completeness: every in-cell lift must be listed.
    std::vector<IntVec2> expected;
    for (Int ky = rat_ceil(ylo - sc.target_base.y); ky <= rat_floor(yhi - sc.target_base.y); ++ky)
      for (Int kx = rat_ceil(xlo - sc.target_base.x); kx <= rat_floor(xhi - sc.target_base.x);
           ++kx) {
        const RatVec2 lift{sc.target_base.x + Rat(kx), sc.target_base.y + Rat(ky)};
        if (detail::strictly_inside_strips(cert.strips, lift)) expected.push_back({kx, ky});
      }
    if (expected.size() != cert.candidates.size()) return false;
    std::vector<IntVec2> got;
    for (const auto& cand : cert.candidates) got.push_back(cand.lambda);
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    if (!(expected == got)) return false;

    // Each candidate must carry an exact blocker on the open segment.
    for (const auto& cand : cert.candidates) {
      if (!(cand.lift == sc.target_base + RatVec2{Rat(cand.lambda.x), Rat(cand.lambda.y)}))
        return false;
      bool owner_ok = false;
      for (std::size_t s = 0; s < sc.points.size(); ++s)
        if (sc.point_rods[s] == cand.obstacle_rod &&
            is_integral(cand.blocker - sc.points[s].p)) {
          owner_ok = true;
          break;
        }
      if (!owner_ok) return false;
      const RatVec2 d = cand.lift - sc.source;
      Rat t;
      if (d.x != 0)
        t = (cand.blocker.x - sc.source.x) / d.x;
      else if (d.y != 0)
        t = (cand.blocker.y - sc.source.y) / d.y;
      else
        return false;
      if (!(Rat(0) < t && t < Rat(1))) return false;
      const RatVec2 on{sc.source.x + t * d.x, sc.source.y + t * d.y};
      if (!(on == cand.blocker)) return false;
    }

    // Vertices: on at least two boundary lines with independent normals,
    // and inside every strip's closure.
    if (cert.cell_vertices.empty()) return false;
    for (const auto& vtx : cert.cell_vertices) {
      std::vector<const IntVec2*> active;
      for (const auto& s : cert.strips) {
        const Rat v = dot(s.family.m, vtx) - s.family.c;
        if (v < Rat(s.k) || Rat(s.k) + 1 < v) return false;
        if (v == Rat(s.k) || v == Rat(s.k) + 1) active.push_back(&s.family.m);
      }
      bool independent = false;
      for (std::size_t u = 0; u < active.size() && !independent; ++u)
        for (std::size_t w = u + 1; w < active.size(); ++w)
          if (cross2(*active[u], *active[w]) != 0) {
            independent = true;
            break;
          }
      if (!independent) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace rodcomp
