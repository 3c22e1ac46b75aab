#include "doctest.h"
#include "test_util.hpp"

#include "trendblocks/builder.hpp"
#include "trendblocks/search.hpp"

#include <cmath>

using namespace trendblocks;

TEST_CASE("assembly from an order and a semibalanced array") {
  {
    // identity assembly: pi* = (1,2,3) and the cyclic square
    Order pi(3, 3, {1, 2, 3});
    SemibalancedArray sba = construct_sba(3, 3, 3);
    DesignArray d = assemble_design(pi, sba);
    CHECK(d.k == 3);
    CHECK(d.b == 3);
    for (int p = 0; p < 3; ++p) CHECK(d.cells(p, 0) == pi.entries[p]);
    CHECK(verify_sba(d.cells, 3).is_sba);
  }
  {
    // pi* = (1,2,3,1): row 4 duplicates row 1; every replication bk/v = 12
    Order pi(4, 7, {1, 2, 3, 1});
    SemibalancedArray sba = construct_sba(7, 3, 21);
    DesignArray d = assemble_design(pi, sba);
    for (int j = 0; j < d.b; ++j) CHECK(d.cells(3, j) == d.cells(0, j));
    Eigen::VectorXi r = d.replication();
    for (int i = 0; i < 7; ++i) CHECK(r[i] == 12);
    for (int p = 0; p < 4; ++p) CHECK(d.cells(p, 0) == pi.entries[p]);
  }
  {
    // kstar mismatch between order and array
    Order pi(4, 7, {1, 2, 3, 1});
    SemibalancedArray sba = construct_sba(7, 2, 21);
    CHECK_THROWS_AS(assemble_design(pi, sba), std::invalid_argument);
  }
}

TEST_CASE("certification of an optimal design") {
  auto rep = build_optimal_design(3, 3, 3, 1.0 / 6, 0.5);
  CHECK(rep.m_phi_zero);
  CHECK(rep.r_equal);
  CHECK(rep.cs_ok);
  CHECK(rep.trace_ok);
  CHECK(rep.certificate.trace ==
        doctest::Approx(rep.certificate.term_block - rep.certificate.term_rr -
                        rep.certificate.term_mphi));

  // a swapped cell breaks complete symmetry or lowers the trace
  DesignArray broken = rep.design;
  broken.cells(0, 1) = broken.cells(0, 1) % 3 + 1;
  auto rep2 = certify_maximin(broken, 1.0 / 6, 0.5);
  Matrix cl_opt = minimal_info_matrix(rep.design, 1.0 / 6, 0.5);
  Matrix cl_bad = minimal_info_matrix(broken, 1.0 / 6, 0.5);
  CHECK((!rep2.cs_ok || cl_bad.trace() < cl_opt.trace() - 1e-12));
}

TEST_CASE("assembled designs: M phi = 0, equal replication, c.s.") {
  for (auto [v, k, b, l0, l1] : {std::tuple{3, 3, 3, 0.1, 0.9},
                                 std::tuple{3, 4, 3, 0.0, 1.0},
                                 std::tuple{7, 4, 21, 0.01, 1.0},
                                 std::tuple{3, 8, 3, 0.125, 1.0},
                                 std::tuple{5, 6, 10, 0.05, 0.5}}) {
    auto rep = build_optimal_design(v, k, b, l0, l1);
    CHECK(rep.m_phi_zero);
    CHECK(rep.r_equal);
    CHECK(rep.cs_ok);
    CHECK(rep.trace_ok);
  }
}

TEST_CASE("per-block trace decomposition") {
  auto rep = build_optimal_design(3, 4, 3, 0.2, 0.7);
  const DesignArray& d = rep.design;
  Matrix w = w_matrix(d.k, 0.2, 0.7);
  double sum = 0.0;
  for (int j = 0; j < d.b; ++j) {
    double f = order_objective(d.column_order(j), 0.2, 0.7);
    sum += w.trace() + 2.0 * f;
  }
  CHECK(rep.certificate.term_block == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("exhaustive maximin check at desk scale") {
  // v=3, k=3, b=3: the assembled design attains the enumeration maximum
  for (auto [l0, l1] : {std::pair{1.0 / 6, 0.5}, std::pair{0.0, 1.0}}) {
    auto rep = build_optimal_design(3, 3, 3, l0, l1);
    Matrix cl = minimal_info_matrix(rep.design, l0, l1);
    auto sweep = max_trace_design(3, 3, 3, l0, l1);
    CHECK(std::abs(cl.trace() - sweep.max_trace) <= 1e-10);
  }
}

TEST_CASE("infeasible b is refused with the smallest feasible value") {
  try {
    build_optimal_design(3, 3, 4, 0.1, 0.9);
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(e.smallest_feasible_b == 3);
  }
}
