#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "rodcomp/isotopy.hpp"

namespace rodcomp {

struct RankThree : std::invalid_argument {
  RankThree() : std::invalid_argument("directions span all of space; no invariant plane exists") {}
};

// Plane torus disjoint from every rod: all rods are parallel to the plane
// with primitive normal `normal`, and no rod has normal.basepoint = offset
// (mod 1).
struct PlaneTorusWitness {
  IntVec3 normal;
  Rat offset;
  friend bool operator==(const PlaneTorusWitness&, const PlaneTorusWitness&) = default;
};

// Linear isotopy between parallel rods i and j; surgery along the swept
// annulus yields an essential torus.
struct SweptAnnulusWitness {
  int i = 0, j = 0;
  RatVec3 v;
  friend bool operator==(const SweptAnnulusWitness&, const SweptAnnulusWitness&) = default;
};

using ToroidalWitness = std::variant<PlaneTorusWitness, SweptAnnulusWitness>;

struct GeometryVerdict {
  bool hyperbolic = false;
  bool seifert_fibred = false;
  std::optional<ToroidalWitness> toroidal_witness;
  std::optional<std::array<int, 3>> independence_triple;
  std::map<std::pair<int, int>, CellCertificate> non_isotopy_certificates;
};

// Invariant plane witness for packings of direction rank at most two. The
// offset is the midpoint of the largest gap between forbidden residues on
// the circle R/Z, ties broken by the smaller midpoint.
inline PlaneTorusWitness plane_torus_witness(const ValidatedPacking& vp) {
  if (vp.direction_rank >= 3) throw RankThree();

  IntVec3 n;
  if (vp.direction_rank == 2) {
    const IntVec3& d1 = vp.rod(0).direction;
    IntVec3 d2 = d1;
    for (int t = 1; t < vp.size(); ++t)
      if (!(vp.rod(t).direction == d1)) {
        d2 = vp.rod(t).direction;
        break;
      }
    n = primitive_normal(d1, d2);
  } else {
    // rank 1: fix the normal via the canonical completion of the common
    // direction; its last row is orthogonal to the direction and primitive.
    const UnimodularMatrix3 u = unimodular_completion(vp.rod(0).direction);
    n = sign_canonical(u.row(2));
  }

  std::set<Rat> residues;
  for (int t = 0; t < vp.size(); ++t) residues.insert(rat_frac(dot(n, vp.rod(t).basepoint)));

  std::vector<Rat> sorted(residues.begin(), residues.end());
  Rat best_len(-1), best_mid(0);
  for (std::size_t u = 0; u < sorted.size(); ++u) {
    const Rat cur = sorted[u];
    const Rat next = u + 1 < sorted.size() ? sorted[u + 1] : sorted.front() + 1;
    const Rat len = next - cur;
    const Rat mid = rat_frac(cur + len / 2);
    if (len > best_len || (len == best_len && mid < best_mid)) {
      best_len = len;
      best_mid = mid;
    }
  }
  return {n, best_mid};
}

// Full geometric classification of a validated packing. Hyperbolicity is
// rank-3 directions plus no linearly isotopic distinct parallel pair;
// Seifert fibred is structural (one rod, or all rods parallel); toroidal
// evidence is a plane torus (rank <= 2) or a swept annulus.
inline GeometryVerdict classify(const ValidatedPacking& vp, long search_radius = 16) {
  GeometryVerdict gv;
  const int n = vp.size();
  const int rank = vp.direction_rank;

  gv.seifert_fibred = (n == 1) || rank == 1;

  if (rank <= 2) {
    gv.toroidal_witness = plane_torus_witness(vp);
    return gv;
  }

  // rank 3: every parallel-pair cell is bounded, so each decision is
  // Isotopic or NotIsotopic.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (!gv.independence_triple &&
            det3(vp.rod(i).direction, vp.rod(j).direction, vp.rod(k).direction) != 0)
          gv.independence_triple = std::array<int, 3>{i, j, k};

  std::optional<SweptAnnulusWitness> annulus;
  for (const auto& [i, j] : parallel_pairs(vp)) {
    IsotopyVerdict verdict = decide_linear_isotopy(vp, i, j, search_radius);
    if (auto* iso = std::get_if<Isotopic>(&verdict)) {
      if (!annulus) annulus = SweptAnnulusWitness{i, j, iso->v};
    } else if (auto* cert = std::get_if<NotIsotopic>(&verdict)) {
      gv.non_isotopy_certificates.emplace(std::make_pair(i, j), std::move(cert->certificate));
    } else {
      throw std::logic_error("unbounded cell for a rank-3 packing");
    }
  }

  if (annulus) {
    gv.toroidal_witness = *annulus;
  } else {
    gv.hyperbolic = true;
  }
  return gv;
}

namespace detail {

// Rank of the direction set, recomputed without the cached value or the
// canonical-direction shortcut.
inline int independent_rank(const ValidatedPacking& vp) {
  const int n = vp.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (det3(vp.rod(i).direction, vp.rod(j).direction, vp.rod(k).direction) != 0) return 3;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!is_zero(cross(vp.rod(i).direction, vp.rod(j).direction))) return 2;
  return 1;
}

}  // namespace detail

// Re-validates a verdict from first principles: structural flags, witness
// orthogonality and residue avoidance, annulus witnesses, and every
// exhausted-cell certificate. Shares no search code with classify.
inline bool verify_verdict(const ValidatedPacking& vp, const GeometryVerdict& gv) {
  try {
    const int n = vp.size();
    const int rank = detail::independent_rank(vp);

    bool all_parallel = true;
    for (int t = 1; t < n; ++t)
      if (!parallel(vp.rod(0), vp.rod(t))) all_parallel = false;
    if (gv.seifert_fibred != (n == 1 || all_parallel)) return false;

    if (gv.hyperbolic) {
      if (gv.seifert_fibred || gv.toroidal_witness) return false;
      if (rank != 3) return false;
      if (!gv.independence_triple) return false;
      const auto& [a, b, c] = *gv.independence_triple;
      if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n) return false;
      if (det3(vp.rod(a).direction, vp.rod(b).direction, vp.rod(c).direction) == 0) return false;
      for (const auto& pr : parallel_pairs(vp)) {
        const auto it = gv.non_isotopy_certificates.find(pr);
        if (it == gv.non_isotopy_certificates.end()) return false;
        if (!verify_cell_certificate(vp, pr.first, pr.second, it->second)) return false;
      }
      return true;
    }

    if (!gv.toroidal_witness) return false;
    if (const auto* plane = std::get_if<PlaneTorusWitness>(&*gv.toroidal_witness)) {
      if (is_zero(plane->normal) || gcd3(plane->normal) != 1) return false;
      if (!(rat_frac(plane->offset) == plane->offset)) return false;
      for (int t = 0; t < n; ++t) {
        if (dot(plane->normal, vp.rod(t).direction) != 0) return false;
        if (rat_frac(dot(plane->normal, vp.rod(t).basepoint)) == plane->offset) return false;
      }
      return true;
    }
    const auto& annulus = std::get<SweptAnnulusWitness>(*gv.toroidal_witness);
    return verify_isotopy_witness(vp, annulus.i, annulus.j, annulus.v);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace rodcomp
