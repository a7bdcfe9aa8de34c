#include <catch2/catch_amalgamated.hpp>

#include "rodcomp/fibration.hpp"
#include "rodcomp/rods.hpp"

#include "generators.hpp"

using namespace rodcomp;

namespace {

IntVec3 iv(long x, long y, long z) { return {Int(x), Int(y), Int(z)}; }

RatVec3 bp(const char* x, const char* y, const char* z) {
  return {parse_rational(x), parse_rational(y), parse_rational(z)};
}

RatVec2 pt(const char* x, const char* y) { return {parse_rational(x), parse_rational(y)}; }

}  // namespace

TEST_CASE("quotient examples") {
  CHECK(quotient(iv(1, 0, 0)).basis_change.matrix() == mat3_identity());

  const QuotientTorus qz = quotient(iv(0, 0, 1));
  CHECK(qz.basis_change.apply(iv(0, 0, 1)) == iv(1, 0, 0));

  const QuotientTorus qd = quotient(iv(1, 1, 1));
  CHECK(qd.basis_change.apply(iv(1, 1, 1)) == iv(1, 0, 0));
  CHECK(qd.basis_change.apply_inverse(iv(1, 0, 0)) == iv(1, 1, 1));

  CHECK_THROWS_AS(quotient(iv(0, 2, 0)), NotPrimitive);
}

TEST_CASE("project_rod examples") {
  const QuotientTorus q = quotient(iv(1, 0, 0));

  const auto p1 = project_rod(q, make_rod(iv(1, 0, 0), bp("0", "1/3", "1/2")));
  REQUIRE(std::holds_alternative<ProjectedPoint>(p1));
  CHECK(std::get<ProjectedPoint>(p1).p == pt("1/3", "1/2"));

  const auto p2 = project_rod(q, make_rod(iv(0, 1, 0), bp("0", "0", "1/4")));
  REQUIRE(std::holds_alternative<ProjectedGeodesic>(p2));
  CHECK(std::get<ProjectedGeodesic>(p2).anchor == pt("0", "1/4"));
  CHECK(std::get<ProjectedGeodesic>(p2).direction2 == IntVec2{Int(1), Int(0)});

  const auto p3 = project_rod(q, make_rod(iv(2, 1, 1), bp("0", "0", "0")));
  REQUIRE(std::holds_alternative<ProjectedGeodesic>(p3));
  CHECK(std::get<ProjectedGeodesic>(p3).direction2 == IntVec2{Int(1), Int(1)});
}

TEST_CASE("geodesic_normal_form examples") {
  const LineFamily f1 = geodesic_normal_form({pt("0", "1/4"), {Int(1), Int(0)}});
  CHECK(f1.m == IntVec2{Int(0), Int(1)});
  CHECK(f1.c == Rat(1, 4));

  const LineFamily f2 = geodesic_normal_form({pt("0", "0"), {Int(1), Int(1)}});
  CHECK(f2.m == IntVec2{Int(1), Int(-1)});
  CHECK(f2.c == 0);
}

TEST_CASE("fibre rods project to a single point") {
  testgen::Rng rng(201);
  const Rat params[] = {Rat(0), Rat(1, 7), Rat(3, 5)};
  for (int t = 0; t < 100; ++t) {
    const IntVec3 d = testgen::random_primitive(rng, 5, true);
    const RatVec3 base = testgen::random_basepoint(rng, 8);
    const QuotientTorus q = quotient(d);
    const RatVec2 p0 = project_point(q, base);
    for (const Rat& s : params) {
      const RatVec3 moved{base.x + s * Rat(d.x), base.y + s * Rat(d.y), base.z + s * Rat(d.z)};
      CHECK(project_point(q, moved) == p0);
    }
  }
}

TEST_CASE("parallel rods are equal exactly when their projections coincide") {
  testgen::Rng rng(202);
  for (int t = 0; t < 200; ++t) {
    const IntVec3 d = testgen::random_primitive(rng, 4, true);
    const Rod a = make_rod(d, testgen::random_basepoint(rng, 6));
    const Rod b = make_rod(d, testgen::random_basepoint(rng, 6));
    const QuotientTorus q = quotient(d);
    const bool same_proj =
        project_point(q, a.basepoint) == project_point(q, b.basepoint);
    CHECK(same_proj == (a == b));
  }
}

TEST_CASE("rod meets a fibre exactly when the fibre point is on its line family") {
  testgen::Rng rng(203);
  int checked = 0;
  while (checked < 500) {
    const IntVec3 d = testgen::random_primitive(rng, 3, true);
    const QuotientTorus q = quotient(d);
    const Rod r = make_rod(testgen::random_primitive(rng, 3, true), testgen::random_basepoint(rng, 8));
    if (r.direction == d) continue;  // only geodesic images here
    ++checked;
    const RatVec2 p{testgen::random_unit_rat(rng, 8), testgen::random_unit_rat(rng, 8)};
    const RatVec3 lift{Rat(0), p.x, p.y};
    const Rod fibre = make_rod(d, q.basis_change.apply_inverse(lift));
    const LineFamily fam = geodesic_normal_form(std::get<ProjectedGeodesic>(project_rod(q, r)));
    CHECK(rods_intersect(r, fibre) == is_integer(dot(fam.m, p) - fam.c));
  }
}

TEST_CASE("line families are Z^2-periodic") {
  testgen::Rng rng(204);
  for (int t = 0; t < 200; ++t) {
    const IntVec2 dir = [&] {
      for (;;) {
        IntVec2 v{Int(testgen::rand_long(rng, -4, 4)), Int(testgen::rand_long(rng, -4, 4))};
        if (is_zero(v)) continue;
        using boost::multiprecision::gcd;
        const Int g = gcd(abs(v.x), abs(v.y));
        return sign_canonical(IntVec2{v.x / g, v.y / g});
      }
    }();
    const LineFamily fam = geodesic_normal_form(
        {RatVec2{testgen::random_unit_rat(rng, 8), testgen::random_unit_rat(rng, 8)}, dir});
    const RatVec2 x{testgen::random_unit_rat(rng, 8), testgen::random_unit_rat(rng, 8)};
    const IntVec2 lambda{Int(testgen::rand_long(rng, -9, 9)), Int(testgen::rand_long(rng, -9, 9))};
    const RatVec2 shifted{x.x + Rat(lambda.x), x.y + Rat(lambda.y)};
    CHECK(is_integer(dot(fam.m, shifted) - dot(fam.m, x)));
    CHECK(is_integer(dot(fam.m, x) - fam.c) == is_integer(dot(fam.m, shifted) - fam.c));
  }
}
