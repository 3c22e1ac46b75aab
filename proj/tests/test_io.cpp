#include "doctest.h"

#include "trendblocks/io.hpp"
#include "trendblocks/model.hpp"

#include <cmath>
#include <sstream>

using namespace trendblocks;

TEST_CASE("design document JSON round trip") {
  auto rep = build_optimal_design(3, 3, 3, 1.0 / 6, 0.5);
  DesignDocument doc = DesignDocument::from_report(rep, 1.0 / 6, 0.5);
  doc.variance_components = VarianceComponents{1.0, 0.25, 1.0};

  nlohmann::ordered_json j = to_json(doc);
  DesignDocument back = design_document_from_json(j);
  CHECK(back.v == doc.v);
  CHECK(back.cells == doc.cells);
  CHECK(back.order == doc.order);
  CHECK(back.variance_components.has_value());

  // identical trace after the round trip
  double t0 = minimal_info_matrix(doc.design(), doc.lambda0, doc.lambda1).trace();
  double t1 = minimal_info_matrix(back.design(), back.lambda0, back.lambda1).trace();
  CHECK(std::abs(t0 - t1) <= 1e-12);

  // identical serialization both times
  CHECK(to_json(doc).dump() == to_json(back).dump());
}

TEST_CASE("document validation") {
  auto rep = build_optimal_design(3, 3, 3, 0.1, 0.9);
  DesignDocument doc = DesignDocument::from_report(rep, 0.1, 0.9);
  doc.order[0] = doc.order[0] % 3 + 1;
  CHECK_THROWS_AS(doc.validate(), std::invalid_argument);

  doc = DesignDocument::from_report(rep, 0.1, 0.9);
  doc.schema_version = "999";
  CHECK_THROWS_AS(doc.validate(), std::invalid_argument);
}

TEST_CASE("CSV matrix round trip") {
  IntMatrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  std::stringstream ss;
  write_matrix_csv(ss, m);
  CHECK(ss.str() == "1,2,3\n4,5,6\n");
  IntMatrix back = read_int_matrix_csv(ss);
  CHECK(back == m);

  std::stringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_int_matrix_csv(ragged), std::invalid_argument);
}

TEST_CASE("round12 is idempotent and stable") {
  for (double x : {1.0 / 3, 17.0 / 7, -0.123456789012345, 1e-30, 0.0}) {
    double r = round12(x);
    CHECK(round12(r) == r);
    if (x != 0.0) CHECK(std::abs(r - x) <= 1e-11 * std::abs(x));
  }
}
