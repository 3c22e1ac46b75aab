#include "doctest.h"

#include "trendblocks/sba.hpp"

using namespace trendblocks;

TEST_CASE("verify_sba on the cyclic square") {
  IntMatrix a(3, 3);
  a << 1, 2, 3,
       2, 3, 1,
       3, 1, 2;
  SbaReport rep = verify_sba(a, 3);
  CHECK(rep.is_sba);
  CHECK(rep.row_uniform);
  CHECK(rep.divisibility_ok);
  CHECK(rep.violations.empty());
}

TEST_CASE("verify_sba violations") {
  {
    // duplicated column: pair {1,2} overrepresented in rows (1,2)
    IntMatrix a(3, 3);
    a << 1, 1, 1,
         2, 2, 3,
         3, 3, 2;
    SbaReport rep = verify_sba(a, 3);
    CHECK_FALSE(rep.is_sba);
    bool pair_violation = false;
    for (const auto& viol : rep.violations)
      if (viol.kind == "pair") pair_violation = true;
    CHECK(pair_violation);
  }
  {
    IntMatrix a(3, 3);
    a << 1, 2, 3,
         1, 3, 1,
         3, 1, 2;
    SbaReport rep = verify_sba(a, 3);
    CHECK_FALSE(rep.is_sba);
    bool col_violation = false;
    for (const auto& viol : rep.violations)
      if (viol.kind == "column") col_violation = true;
    CHECK(col_violation);
  }
}

TEST_CASE("difference construction for odd primes") {
  {
    SemibalancedArray a = construct_sba(3, 3, 3);
    SbaReport rep = verify_sba(a.cells, 3);
    CHECK(rep.is_sba);
    CHECK(rep.row_uniform);
  }
  {
    SemibalancedArray a = construct_sba(5, 4, 10);
    SbaReport rep = verify_sba(a.cells, 5);
    CHECK(rep.is_sba);
    CHECK(rep.row_uniform);
    // each symbol twice per row
    for (int i = 0; i < 4; ++i) {
      std::vector<int> count(6, 0);
      for (int j = 0; j < 10; ++j) count[a.cells(i, j)]++;
      for (int s = 1; s <= 5; ++s) CHECK(count[s] == 2);
    }
  }
  {
    SemibalancedArray a = construct_sba(7, 2, 42);  // two base copies
    CHECK(a.b == 42);
    CHECK(verify_sba(a.cells, 7).is_sba);
  }
}

TEST_CASE("infeasible parameter combinations") {
  CHECK_THROWS_AS(construct_sba(4, 3, 3), InfeasibleError);
  try {
    construct_sba(4, 3, 3);
  } catch (const InfeasibleError& e) {
    CHECK(e.smallest_feasible_b == 12);  // lcm(v, v(v-1)/2) for v = 4
  }
  try {
    construct_sba(3, 3, 4);
  } catch (const InfeasibleError& e) {
    CHECK(e.smallest_feasible_b == 3);
  }
  CHECK_THROWS_AS(construct_sba(3, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(construct_sba(3, 4, 3), std::invalid_argument);
}

TEST_CASE("search fallback for non-prime v") {
  // v = 9 is odd composite: the difference construction does not apply
  SemibalancedArray a = construct_sba(9, 2, 36, 200'000'000);
  SbaReport rep = verify_sba(a.cells, 9);
  CHECK(rep.is_sba);
  CHECK(rep.row_uniform);
}

TEST_CASE("replicate_sba") {
  SemibalancedArray base = construct_sba(3, 3, 3);
  CHECK(replicate_sba(base, 1).cells == base.cells);
  SemibalancedArray two = replicate_sba(base, 2);
  CHECK(two.b == 6);
  SbaReport rep = verify_sba(two.cells, 3);
  CHECK(rep.is_sba);
  CHECK_THROWS_AS(replicate_sba(base, 0), std::invalid_argument);
}
