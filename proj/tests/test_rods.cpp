#include <catch2/catch_amalgamated.hpp>

#include "rodcomp/rods.hpp"

#include "generators.hpp"

using namespace rodcomp;

namespace {

IntVec3 iv(long x, long y, long z) { return {Int(x), Int(y), Int(z)}; }

RatVec3 bp(const char* x, const char* y, const char* z) {
  return {parse_rational(x), parse_rational(y), parse_rational(z)};
}

Rod rod(long dx, long dy, long dz, const char* x, const char* y, const char* z) {
  return make_rod(iv(dx, dy, dz), bp(x, y, z));
}

}  // namespace

TEST_CASE("make_rod modes") {
  CHECK_NOTHROW(make_rod(iv(1, 0, 0), bp("0", "0", "0")));
  CHECK_THROWS_AS(make_rod(iv(2, 4, 6), bp("0", "0", "0")), NotPrimitive);
  CHECK_THROWS_AS(make_rod(iv(0, 0, 0), bp("0", "0", "0")), AllZeroVector);
  const Rod r = make_rod(iv(2, 4, 6), bp("0", "0", "0"), RodMode::normalize);
  CHECK(r.direction == iv(1, 2, 3));
}

TEST_CASE("rod canonicalization") {
  // opposite direction vectors describe the same line
  CHECK(make_rod(iv(-1, 0, 0), bp("0", "1/3", "1/4")) == rod(1, 0, 0, "0", "1/3", "1/4"));
  // basepoints differing along the rod describe the same circle
  CHECK(rod(1, 0, 0, "1/2", "1/3", "1/4") == rod(1, 0, 0, "0", "1/3", "1/4"));
  CHECK(rod(1, 1, 1, "1/2", "1/2", "1/2") == rod(1, 1, 1, "0", "0", "0"));
  // basepoint coordinates always land in [0,1)
  const Rod r = make_rod(iv(1, 1, 0), bp("-7/3", "5/2", "9/4"));
  for (const Rat& c : {r.basepoint.x, r.basepoint.y, r.basepoint.z}) {
    CHECK(c >= 0);
    CHECK(c < 1);
  }
}

TEST_CASE("rods_intersect examples") {
  CHECK(rods_intersect(rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "0")));
  CHECK_FALSE(rods_intersect(rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "1/2")));
  CHECK(rods_intersect(rod(1, 0, 0, "0", "0", "0"), rod(1, 0, 0, "0", "0", "0")));
}

TEST_CASE("rods_intersect is symmetric and reflexive") {
  testgen::Rng rng(101);
  for (int t = 0; t < 300; ++t) {
    const Rod a = make_rod(testgen::random_primitive(rng, 3, true), testgen::random_basepoint(rng, 6));
    const Rod b = make_rod(testgen::random_primitive(rng, 3, true), testgen::random_basepoint(rng, 6));
    CHECK(rods_intersect(a, b) == rods_intersect(b, a));
    CHECK(rods_intersect(a, a));
  }
}

TEST_CASE("validate_packing examples") {
  RodPacking axes3;
  axes3.rods = {rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "1/2", "0", "1/2"),
                rod(0, 0, 1, "1/4", "1/2", "0")};
  const ValidationResult ok = validate_packing(axes3);
  REQUIRE(ok.ok());
  CHECK(ok.value->direction_rank == 3);
  CHECK(ok.value->parallel_classes.size() == 3);
  for (const auto& cls : ok.value->parallel_classes) CHECK(cls.size() == 1);

  RodPacking dup;
  dup.rods = {rod(1, 0, 0, "0", "0", "0"), rod(1, 0, 0, "0", "0", "0")};
  const ValidationResult bad = validate_packing(dup);
  REQUIRE_FALSE(bad.ok());
  REQUIRE(bad.intersecting.size() == 1);
  CHECK(bad.intersecting[0] == std::pair<int, int>(0, 1));

  RodPacking one;
  one.rods = {rod(1, 0, 0, "0", "0", "0")};
  const ValidationResult single = validate_packing(one);
  REQUIRE(single.ok());
  CHECK(single.value->direction_rank == 1);
}

TEST_CASE("validation reports every intersecting pair") {
  RodPacking p;
  p.rods = {rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "0"),
            rod(0, 0, 1, "0", "0", "0")};
  const ValidationResult res = validate_packing(p);
  REQUIRE_FALSE(res.ok());
  CHECK(res.intersecting.size() == 3);
}

TEST_CASE("direction_rank examples") {
  RodPacking p1{{rod(1, 0, 0, "0", "0", "0")}};
  CHECK(validate_packing(p1).value->direction_rank == 1);

  RodPacking p2{{rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "1/2")}};
  CHECK(validate_packing(p2).value->direction_rank == 2);

  RodPacking p3{{rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "1/2"),
                 rod(1, 1, 1, "1/3", "0", "1/4")}};
  const auto res = validate_packing(p3);
  REQUIRE(res.ok());
  CHECK(res.value->direction_rank == 3);
}

TEST_CASE("parallel_classes form a partition by direction") {
  testgen::Rng rng(102);
  for (int t = 0; t < 50; ++t) {
    const ValidatedPacking vp =
        testgen::random_validated_packing(rng, {2, 6, 2, 6, true, false});
    std::vector<int> seen(static_cast<std::size_t>(vp.size()), 0);
    for (const auto& cls : vp.parallel_classes) {
      REQUIRE_FALSE(cls.empty());
      for (int i : cls) {
        ++seen[static_cast<std::size_t>(i)];
        CHECK(vp.rod(i).direction == vp.rod(cls.front()).direction);
      }
    }
    for (int c : seen) CHECK(c == 1);
    for (std::size_t a = 0; a < vp.parallel_classes.size(); ++a)
      for (std::size_t b = a + 1; b < vp.parallel_classes.size(); ++b)
        CHECK_FALSE(vp.rod(vp.parallel_classes[a].front()).direction ==
                    vp.rod(vp.parallel_classes[b].front()).direction);
  }
}

TEST_CASE("validation verdicts are invariant under GL3(Z) and translation") {
  testgen::Rng rng(103);
  for (int t = 0; t < 25; ++t) {
    const ValidatedPacking vp = testgen::random_validated_packing(rng, {2, 5, 2, 6, false, false});
    for (int s = 0; s < 5; ++s) {
      const UnimodularMatrix3 u = testgen::random_unimodular(rng);
      const RatVec3 tau = testgen::random_basepoint(rng, 6);
      const ValidationResult res = validate_packing(testgen::transform_packing(vp.packing, u, tau));
      REQUIRE(res.ok());
      CHECK(res.value->direction_rank == vp.direction_rank);
      CHECK(res.value->parallel_classes.size() == vp.parallel_classes.size());
    }
  }
  // an intersecting pair stays intersecting
  RodPacking bad;
  bad.rods = {rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "0")};
  for (int s = 0; s < 5; ++s) {
    const UnimodularMatrix3 u = testgen::random_unimodular(rng);
    const RatVec3 tau = testgen::random_basepoint(rng, 6);
    CHECK_FALSE(validate_packing(testgen::transform_packing(bad, u, tau)).ok());
  }
}
