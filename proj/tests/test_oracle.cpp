#include <catch2/catch_amalgamated.hpp>

#include "gmspp/oracle.hpp"
#include "support/helpers.hpp"

using namespace gmspp;

TEST_CASE("a lone item lands on the cheaper strip") {
  Instance inst;
  inst.name = "lone";
  inst.items = {{3, 4}};
  inst.strips = {{5, Rational(1)}, {6, Rational(1)}};
  OracleResult r = solve_exact(inst);
  CHECK(r.objective == Rational(20));
  REQUIRE(r.packing.strips.size() == 1);
  CHECK(r.packing.strips[0].strip == 0);
  CHECK(r.packing.strips[0].H == 4);
  CHECK(verify_packing(inst, r.packing));
}

TEST_CASE("two full-width items stack to height five") {
  Instance inst;
  inst.name = "stack";
  inst.items = {{5, 2}, {5, 3}};
  inst.strips = {{5, Rational(1)}};
  OracleResult r = solve_exact(inst);
  CHECK(r.objective == Rational(25));
  CHECK(r.packing.strips[0].H == 5);
}

TEST_CASE("cost weights can pull everything onto a narrow expensive strip") {
  Instance inst;
  inst.name = "weights";
  inst.items = {{2, 3}, {3, 1}};
  inst.strips = {{3, rational_from_tenths(12)}, {4, Rational(1)}};
  OracleResult r = solve_exact(inst);
  // splitting is beaten by co-locating on the narrow strip: 6/5*3*4 = 72/5
  CHECK(r.objective == Rational(72, 5));
  REQUIRE(r.packing.strips.size() == 1);
  CHECK(r.packing.strips[0].strip == 0);
  CHECK(r.packing.strips[0].H == 4);
  CHECK(verify_packing(inst, r.packing));
}

TEST_CASE("the tractability guard rejects oversized inputs") {
  Instance inst;
  inst.name = "big";
  for (int j = 0; j < 8; ++j) inst.items.push_back({1, 1});
  inst.strips = {{3, Rational(1)}};
  CHECK_THROWS_AS(solve_exact(inst), std::invalid_argument);
}

TEST_CASE("objectives decompose over strips and packings verify") {
  for (unsigned seed = 1; seed <= 25; ++seed) {
    Instance inst = testing::random_instance(seed * 211 + 9);
    if (inst.n() > 6) continue;
    CAPTURE(seed, inst.name);
    OracleResult r = solve_exact(inst);
    REQUIRE(verify_packing(inst, r.packing));
    REQUIRE(packing_objective(inst, r.packing) == r.objective);
    // per-strip heights are individually minimal: no strip can shave a row
    // without its own items overflowing (checked via the exhaustive reference)
    for (const StripPacking& sp : r.packing.strips) {
      if (sp.H == 0) continue;
      if (sp.items.size() > 8) continue;
      YCheckInstance yc;
      yc.W = inst.strips[sp.strip].W;
      yc.Hbar = sp.H - 1;
      bool any_x_vector_fits = false;
      // keep the x placement fixed; minimality over x is the solver's claim,
      // tested separately against the full-x enumeration
      for (const PackedItem& a : sp.items)
        yc.items.push_back({a.j, a.x, inst.items[a.j].w, inst.items[a.j].h});
      any_x_vector_fits = oracle_ycheck(yc) == YVerdict::Feasible;
      REQUIRE(!any_x_vector_fits);
    }
  }
}

TEST_CASE("restricting x to subset sums loses no optimality") {
  int tested = 0;
  for (unsigned seed = 1; tested < 12; ++seed) {
    REQUIRE(seed < 500);
    Instance inst = testing::random_instance(seed * 97 + 31);
    if (inst.n() > 4) continue;
    ++tested;
    CAPTURE(seed, inst.name);
    OracleResult normal = solve_exact(inst);
    OracleResult full = solve_exact_full_x(inst);
    REQUIRE(normal.objective == full.objective);
    REQUIRE(verify_packing(inst, full.packing));
  }
}

TEST_CASE("repeated runs return identical witnesses") {
  Instance inst = testing::random_instance(4242);
  OracleResult a = solve_exact(inst);
  OracleResult b = solve_exact(inst);
  REQUIRE(a.objective == b.objective);
  REQUIRE(a.packing.strips.size() == b.packing.strips.size());
  for (std::size_t s = 0; s < a.packing.strips.size(); ++s) {
    CHECK(a.packing.strips[s].strip == b.packing.strips[s].strip);
    CHECK(a.packing.strips[s].H == b.packing.strips[s].H);
    REQUIRE(a.packing.strips[s].items.size() == b.packing.strips[s].items.size());
    for (std::size_t t = 0; t < a.packing.strips[s].items.size(); ++t) {
      CHECK(a.packing.strips[s].items[t].x == b.packing.strips[s].items[t].x);
      CHECK(a.packing.strips[s].items[t].y == b.packing.strips[s].items[t].y);
    }
  }
}

TEST_CASE("the packing verifier catches every defect class") {
  Instance inst;
  inst.name = "audit";
  inst.items = {{3, 2}, {2, 2}};
  inst.strips = {{5, Rational(1)}};
  Packing good;
  good.strips = {{0, 2, {{0, 0, 0}, {1, 3, 0}}}};
  REQUIRE(verify_packing(inst, good));

  Packing overlap = good;
  overlap.strips[0].items[1].x = 1;
  CHECK(!verify_packing(inst, overlap));

  Packing out_of_strip = good;
  out_of_strip.strips[0].items[1].x = 4;
  CHECK(!verify_packing(inst, out_of_strip));

  Packing inflated = good;
  inflated.strips[0].H = 3;  // taller than the tallest stack
  CHECK(!verify_packing(inst, inflated));

  Packing missing = good;
  missing.strips[0].items.pop_back();
  CHECK(!verify_packing(inst, missing));

  Packing duplicated = good;
  duplicated.strips[0].items.push_back({0, 0, 0});
  CHECK(!verify_packing(inst, duplicated));
}
