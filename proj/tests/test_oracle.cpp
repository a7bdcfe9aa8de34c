#include <catch2/catch_amalgamated.hpp>

#include "rodcomp/oracle.hpp"

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

ValidatedPacking packing(std::vector<Rod> rods) {
  auto res = validate_packing(RodPacking{std::move(rods)});
  REQUIRE(res.ok());
  return std::move(*res.value);
}

}  // namespace

TEST_CASE("oracle config invariants") {
  CHECK_THROWS_AS(isotopy_bruteforce(
                      packing({rod(1, 0, 0, "0", "0", "0"), rod(1, 0, 0, "0", "1/2", "0")}), 0, 1,
                      OracleConfig{0, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(intersect_bruteforce(rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "0"),
                                       OracleConfig{8, 1}),
                  std::invalid_argument);
}

TEST_CASE("isotopy_bruteforce examples") {
  const ValidatedPacking two =
      packing({rod(1, 0, 0, "0", "0", "0"), rod(1, 0, 0, "0", "1/2", "1/2")});
  const BruteforceIsotopy r1 = isotopy_bruteforce(two, 0, 1, OracleConfig{1, 4});
  REQUIRE(r1.witness.has_value());
  CHECK(verify_isotopy_witness(two, 0, 1, *r1.witness));

  const ValidatedPacking four =
      packing({rod(1, 0, 0, "0", "0", "0"), rod(1, 0, 0, "0", "1/2", "1/2"),
               rod(0, 1, 0, "1/2", "0", "1/4"), rod(0, 0, 1, "0", "1/4", "0")});
  const BruteforceIsotopy r2 = isotopy_bruteforce(four, 0, 1, OracleConfig{2, 4});
  REQUIRE(r2.witness.has_value());
  CHECK(*r2.witness == RatVec3{parse_rational("0"), parse_rational("-1/2"), parse_rational("-1/2")});

  const ValidatedPacking five =
      packing({rod(1, 0, 0, "0", "0", "0"), rod(1, 0, 0, "0", "1/2", "1/2"),
               rod(0, 1, 0, "1/2", "0", "3/4"), rod(0, 0, 1, "0", "1/4", "0"),
               rod(0, 1, 1, "1/4", "1/8", "0")});
  const BruteforceIsotopy r3 = isotopy_bruteforce(five, 0, 1, OracleConfig{8, 4});
  CHECK_FALSE(r3.witness.has_value());
  CHECK(r3.searched_radius == 8);
}

TEST_CASE("intersect_bruteforce examples") {
  CHECK(intersect_bruteforce(rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "0")));
  CHECK_FALSE(intersect_bruteforce(rod(1, 0, 0, "0", "0", "0"), rod(0, 1, 0, "0", "0", "1/2")));
  CHECK(intersect_bruteforce(rod(1, 0, 0, "0", "0", "0"), rod(1, 0, 0, "0", "0", "0")));
}

TEST_CASE("intersect_bruteforce agrees with rods_intersect") {
  testgen::Rng rng(401);
  int hits = 0;
  for (int t = 0; t < 500; ++t) {
    const Rod a = make_rod(testgen::random_primitive(rng, 2, true), testgen::random_basepoint(rng, 6));
    const Rod b = make_rod(testgen::random_primitive(rng, 2, true), testgen::random_basepoint(rng, 6));
    const bool expected = rods_intersect(a, b);
    hits += expected;
    CHECK(intersect_bruteforce(a, b) == expected);
  }
  CHECK(hits > 0);
  CHECK(hits < 500);
}

TEST_CASE("oracle and decision procedure agree on bounded cells") {
  testgen::Rng rng(402);
  int tested = 0;
  while (tested < 40) {
    const ValidatedPacking vp =
        testgen::random_validated_packing(rng, {4, 6, 3, 8, true, true});
    const IsotopyVerdict fast = decide_linear_isotopy(vp, 0, 1);
    // keep the comparison inside the oracle's radius
    const Rat bound(7);
    if (const auto* ni = std::get_if<NotIsotopic>(&fast)) {
      bool small = true;
      for (const auto& v : ni->certificate.cell_vertices)
        if (detail::maxnorm(v) >= bound) small = false;
      if (!small) continue;
    } else if (const auto* iso = std::get_if<Isotopic>(&fast)) {
      const QuotientTorus q = quotient(vp.rod(0).direction);
      if (detail::maxnorm(drop_first(q.basis_change.apply(iso->v))) >= bound) continue;
    } else {
      FAIL("undecided on a rank-3 packing");
    }
    ++tested;
    const BruteforceIsotopy slow = isotopy_bruteforce(vp, 0, 1, OracleConfig{8, 4});
    CHECK(slow.witness.has_value() == std::holds_alternative<Isotopic>(fast));
    if (slow.witness) {
      CHECK(*slow.witness == std::get<Isotopic>(fast).v);
      CHECK(verify_isotopy_witness(vp, 0, 1, *slow.witness));
    }
  }
}
