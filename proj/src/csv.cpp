// csv.cpp -- CSV formatting implementation.
#include "uwauth/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace uwauth {

std::string format_csv_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  if (std::fabs(v) < 1e-4)
    std::snprintf(buf, sizeof buf, "%.10e", v);
  else
    std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "axis,value,eps_th,far_analytic,mdr_analytic,far_empirical,"
        "mdr_empirical,ci_far,ci_mdr,trials,seed\n";
  for (const SweepRow& r : rows) {
    os << r.axis << ',' << format_csv_value(r.value) << ','
       << format_csv_value(r.eps_th) << ',' << format_csv_value(r.far_analytic)
       << ',' << format_csv_value(r.mdr_analytic) << ','
       << format_csv_value(r.far_empirical) << ','
       << format_csv_value(r.mdr_empirical) << ','
       << format_csv_value(r.ci_far) << ',' << format_csv_value(r.ci_mdr)
       << ',' << r.trials << ',' << r.seed << '\n';
  }
}

namespace {

void roc_rows(std::ostream& os, const RocCurve& curve, std::uint64_t seed) {
  for (const RocPoint& p : curve.points)
    os << format_csv_value(p.threshold) << ',' << format_csv_value(p.pfa)
       << ',' << format_csv_value(p.pd) << ',' << curve.provenance << ','
       << seed << '\n';
}

}  // namespace

void write_roc_csv(std::ostream& os, const RocCurve& curve, std::uint64_t seed) {
  os << "threshold,pfa,pd,provenance,seed\n";
  roc_rows(os, curve, seed);
}

void append_roc_csv(std::ostream& os, const RocCurve& curve, std::uint64_t seed) {
  roc_rows(os, curve, seed);
}

}  // namespace uwauth
