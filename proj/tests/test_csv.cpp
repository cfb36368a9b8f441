// test_csv.cpp -- CSV cell formatting and schema stability.
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "uwauth/csv.hpp"

using namespace uwauth;

TEST_CASE("cell formatting rules") {
  CHECK(format_csv_value(0.0) == "0");
  CHECK(format_csv_value(-0.0) == "0");
  CHECK(format_csv_value(0.05) == "0.05");
  CHECK(format_csv_value(1.0) == "1");
  CHECK(format_csv_value(1234.5678) == "1234.5678");
  // Scientific notation strictly below 1e-4 in magnitude.
  CHECK(format_csv_value(1e-4) == "0.0001");
  CHECK(format_csv_value(9.9e-5) == "9.9000000000e-05");
  CHECK(format_csv_value(-2e-7) == "-2.0000000000e-07");
  CHECK(format_csv_value(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_csv_value(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_csv_value(-std::numeric_limits<double>::infinity()) == "-inf");
  // Ten significant digits in the general regime.
  CHECK(format_csv_value(1.0 / 3.0) == "0.3333333333");
}

TEST_CASE("sweep schema header and rows are byte-stable") {
  SweepRow row;
  row.axis = "link_quality_db";
  row.value = 10.0;
  row.eps_th = 123.456;
  row.far_analytic = 0.05;
  row.mdr_analytic = std::numeric_limits<double>::quiet_NaN();
  row.far_empirical = 0.0482;
  row.mdr_empirical = 2e-6;
  row.ci_far = 0.00042;
  row.ci_mdr = 8.77e-7;
  row.trials = 1000000;
  row.seed = 42;

  std::ostringstream a, b;
  write_sweep_csv(a, {row});
  write_sweep_csv(b, {row});
  CHECK(a.str() == b.str());
  CHECK(a.str() ==
        "axis,value,eps_th,far_analytic,mdr_analytic,far_empirical,"
        "mdr_empirical,ci_far,ci_mdr,trials,seed\n"
        "link_quality_db,10,123.456,0.05,nan,0.0482,2.0000000000e-06,"
        "0.00042,8.7700000000e-07,1000000,42\n");
}

TEST_CASE("roc schema header, rows, and append mode") {
  RocCurve curve;
  curve.provenance = "empirical";
  curve.points = {{1.5, 0.25, 0.999}, {2.5, 0.1, 0.99}};

  std::ostringstream os;
  write_roc_csv(os, curve, 7);
  const std::string expected =
      "threshold,pfa,pd,provenance,seed\n"
      "1.5,0.25,0.999,empirical,7\n"
      "2.5,0.1,0.99,empirical,7\n";
  CHECK(os.str() == expected);

  RocCurve more;
  more.provenance = "analytic";
  more.points = {{1.5, 0.2501, 0.9992}};
  append_roc_csv(os, more, 0);
  CHECK(os.str() == expected + "1.5,0.2501,0.9992,analytic,0\n");
}
