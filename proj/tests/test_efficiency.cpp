#include "doctest.h"

#include "trendblocks/builder.hpp"
#include "trendblocks/efficiency.hpp"
#include "trendblocks/model.hpp"
#include "trendblocks/search.hpp"

#include <cmath>
#include <random>

using namespace trendblocks;

TEST_CASE("closed-form traces, k < 2v") {
  CHECK(trace_cl_closed_form(7, 4, 7, 0.0, 1.0, OrderKind::piq(0)) ==
        doctest::Approx(17.0).epsilon(1e-14));
  CHECK(trace_cl_closed_form(7, 4, 7, 0.0, 1.0, OrderKind::piq(2)) ==
        doctest::Approx(24.0).epsilon(1e-14));
  CHECK(round_percent(17.0 / 24.0) == 71);
  CHECK_THROWS_AS(trace_cl_closed_form(7, 4, 7, 0.0, 1.0, OrderKind::piq(3)),
                  std::invalid_argument);
}

TEST_CASE("closed-form traces, TF^C vs NTF threshold") {
  // at lambda0/lambda1 = phi^2(k/2) the two traces coincide
  int v = 3, k = 8;
  double l1 = 0.84;
  double l0 = l1 / 168.0;
  CHECK(trace_cl_closed_form(v, k, 3, l0, l1, OrderKind::tfc()) ==
        doctest::Approx(trace_cl_closed_form(v, k, 3, l0, l1, OrderKind::ntf()))
            .epsilon(1e-12));
}

TEST_CASE("s_min") {
  CHECK(s_min(4, 10) == 8);
  CHECK(s_min(4, 8) == 4);    // k = 2v, t = 0 -> v
  CHECK(s_min(3, 9) == 9);    // k = 3v, v odd -> 3v
  CHECK_THROWS_AS(s_min(4, 7), std::invalid_argument);
  // both algebraic forms of the same quantity
  for (int v = 2; v <= 5; ++v)
    for (int k = 2 * v; k <= 16; ++k) {
      long long m = k / v, t = k % v;
      long long other = ((v - t) * m * m + t * (m + 1) * (m + 1) - m * v - t) / 2;
      CHECK(s_min(v, k) == other);
    }
}

TEST_CASE("E1") {
  int v = 3, k = 8;
  CHECK(e1(v, k, 1.0 / 168, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e1(v, k, 0.0, 1.0) <= 1.0);
  CHECK(1.0 - e1(v, k, 0.0, 1.0) < 0.01);  // "virtually equal to 1"
  // NTF optimal at lambda0 = 1/8: report 1/E1 for the TF^C design
  double r = e1(v, k, 0.125, 1.0);
  CHECK(r > 1.0);
  CHECK(1.0 / r <= 1.0);
  CHECK_THROWS_AS(e1(3, 9, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(e1(3, 8, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("E2 and Table 1 golden values") {
  CHECK(round_percent(e2(7, 4, 0.25, 1.0, 0)) == 83);
  CHECK(round_percent(e2(7, 4, 0.25, 0.1, 2)) == 69);
  CHECK(e2(7, 4, 0.1, 1.0, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(e2(7, 4, 0.1, 1.0, 3), std::invalid_argument);

  EfficiencyTable t = table1();
  REQUIRE(t.row_labels.size() == 3);
  REQUIRE(t.columns.size() == 6);
  const int expected[3][6] = {{71, 73, 77, 83, 100, 100},
                              {97, 98, 100, 100, 98, 86},
                              {100, 100, 95, 83, 80, 69}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 6; ++c) CHECK(t.percents[r][c] == expected[r][c]);
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    bool has100 = false;
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
      CHECK(t.ratios[r][c] > 0.0);
      CHECK(t.ratios[r][c] <= 1.0 + 1e-15);
      if (t.percents[r][c] == 100) has100 = true;
    }
    CHECK(has100);
  }
}

TEST_CASE("b-invariance of the efficiency ratios") {
  for (int b : {3, 6}) {
    double ta = trace_cl_closed_form(7, 4, b, 0.1, 0.8, OrderKind::piq(1));
    double tb = trace_cl_closed_form(7, 4, b, 0.1, 0.8, OrderKind::piq(2));
    double t2a = trace_cl_closed_form(7, 4, 2 * b, 0.1, 0.8, OrderKind::piq(1));
    double t2b = trace_cl_closed_form(7, 4, 2 * b, 0.1, 0.8, OrderKind::piq(2));
    CHECK(std::abs(ta / tb - t2a / t2b) <= 1e-12);
  }
}

TEST_CASE("closed form vs direct assembly") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    double l1 = unif(rng);
    {
      int v = 7, k = 4, b = 21;
      double l0 = unif(rng) / k;
      for (int q = 0; q <= 2; ++q) {
        Order pi = pi_q(k, q, v);
        SemibalancedArray sba = construct_sba(v, k - q, b);
        DesignArray d = assemble_design(pi, sba);
        double direct = minimal_info_matrix(d, l0, l1).trace();
        double closed = trace_cl_closed_form(v, k, b, l0, l1, OrderKind::piq(q));
        CHECK(std::abs(direct - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
      }
    }
    {
      int v = 3, k = 8, b = 3;
      double l0 = unif(rng) / k;
      for (auto kind : {OrderKind::tfc(), OrderKind::ntf()}) {
        Order pi = tf_ntf_order(v, k, kind.family == OrderKind::TFC
                                          ? TfVariant::C
                                          : TfVariant::NTF);
        SemibalancedArray sba = construct_sba(v, pi.distinct_treatments(), b);
        DesignArray d = assemble_design(pi, sba);
        double direct = minimal_info_matrix(d, l0, l1).trace();
        double closed = trace_cl_closed_form(v, k, b, l0, l1, kind);
        CHECK(std::abs(direct - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
      }
    }
  }
}

TEST_CASE("optimality breakpoints") {
  {
    auto bp = optimality_breakpoints(7, 4);
    REQUIRE(bp.size() == 3);
    CHECK(bp[0].order_label == "pi_0");
    CHECK(bp[0].lo == doctest::Approx(9.0 / 20));
    CHECK(bp[1].order_label == "pi_1");
    CHECK(bp[1].lo == doctest::Approx(1.0 / 20));
    CHECK(bp[1].hi == doctest::Approx(9.0 / 20));
    CHECK(bp[2].order_label == "pi_2");
    CHECK(bp[2].hi == doctest::Approx(1.0 / 20));
  }
  {
    auto bp = optimality_breakpoints(3, 8);
    REQUIRE(bp.size() == 2);
    CHECK(bp[0].order_label == "pi_NTF");
    CHECK(bp[0].lo == doctest::Approx(1.0 / 168));
    CHECK(bp[1].order_label == "pi_TF^C");
  }
  {
    // interval correctness against the oracle
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto bp = optimality_breakpoints(7, 4);
    for (const auto& seg : bp) {
      for (int trial = 0; trial < 20; ++trial) {
        double hi = std::isinf(seg.hi) ? seg.lo * 3.0 + 0.5 : seg.hi;
        double ratio = seg.lo + (hi - seg.lo) * unif(rng);
        double l1 = 0.5, l0 = ratio * l1;
        if (l0 > 0.25) continue;
        auto oracle = brute_force_optimal(7, 4, l0, l1);
        double f_seg = order_objective(pi_q(4, seg.kind.q, 7), l0, l1);
        CHECK(std::abs(oracle.f_max - f_seg) <= 1e-12);
      }
    }
  }
}
