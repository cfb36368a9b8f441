// csv.hpp -- fixed-schema CSV emission for sweep and ROC results.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uwauth/analytic.hpp"

namespace uwauth {

// Canonical numeric cell format: "0" for zero, scientific with 10 significant
// digits below 1e-4 in magnitude, %.10g otherwise; "nan"/"inf"/"-inf" for
// non-finite values.  Always uses '.' as the decimal separator.
std::string format_csv_value(double v);

// One row of the sweep schema
//   axis,value,eps_th,far_analytic,mdr_analytic,far_empirical,mdr_empirical,
//   ci_far,ci_mdr,trials,seed
// Analytic or empirical cells may be NaN when that source was not computed
// (e.g. analytic MDR under a randomized attacker model).
struct SweepRow {
  std::string axis;
  double value = 0.0;
  double eps_th = 0.0;
  double far_analytic = 0.0;
  double mdr_analytic = 0.0;
  double far_empirical = 0.0;
  double mdr_empirical = 0.0;
  double ci_far = 0.0;
  double ci_mdr = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// ROC schema: threshold,pfa,pd,provenance,seed -- one row per curve point.
void write_roc_csv(std::ostream& os, const RocCurve& curve, std::uint64_t seed);

// Appends further curves to an already-written ROC CSV (no header repeat).
void append_roc_csv(std::ostream& os, const RocCurve& curve, std::uint64_t seed);

}  // namespace uwauth
