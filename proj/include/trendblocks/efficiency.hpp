#ifndef TRENDBLOCKS_EFFICIENCY_HPP
#define TRENDBLOCKS_EFFICIENCY_HPP

#include "trendblocks/orders.hpp"

namespace trendblocks {

/// Order family selector for the closed-form traces.
struct OrderKind {
  enum Family { PiQ, TFC, NTF } family = PiQ;
  int q = 0;  // only for PiQ

  static OrderKind piq(int q) { return {PiQ, q}; }
  static OrderKind tfc() { return {TFC, 0}; }
  static OrderKind ntf() { return {NTF, 0}; }
};

/// Closed-form sigma^2 * trace(C^L) for a design built on the given order
/// family (pi_q for k < 2v; TF^C / NTF for k >= 2v, k even, k/v not an even
/// integer).
double trace_cl_closed_form(int v, int k, int b, double lambda0, double lambda1,
                            OrderKind kind);

/// Minimal coincidence-pair count over balanced replications, k >= 2v:
/// (m/2)(k - v + t).
long long s_min(int v, int k);

/// Efficiency of the NTF-based design against the TF^C-based one.
/// Requires k even, k >= 2v, k/v not an even integer, lambda1 > 0.
double e1(int v, int k, double lambda0, double lambda1);

/// Efficiency of pi_q against the optimal pi_{q*}; k < 2v, lambda1 > 0.
double e2(int v, int k, double lambda0, double lambda1, int q);

/// Integer percent, ties away from zero.
int round_percent(double ratio);

struct EfficiencyTable {
  std::vector<std::string> row_labels;             // order names
  std::vector<std::pair<double, double>> columns;  // (lambda0, lambda1)
  std::vector<std::vector<double>> ratios;         // rows x cols
  std::vector<std::vector<int>> percents;
};

/// Efficiency table over a lambda grid. For k < 2v the rows are pi_q for
/// q in [max(0, k-v), floor(k/2)]; for the TF/NTF regime the rows are the
/// TF^C and NTF orders.
EfficiencyTable efficiency_table(int v, int k,
                                 const std::vector<std::pair<double, double>>& grid);

/// The published v=7, k=4 robustness grid.
EfficiencyTable table1();

struct Breakpoint {
  double lo = 0.0;            // lambda0/lambda1 interval [lo, hi]
  double hi = 0.0;            // +inf for the last interval
  std::string order_label;
  OrderKind kind;
};

/// Intervals of lambda0/lambda1 on which a single order is optimal.
std::vector<Breakpoint> optimality_breakpoints(int v, int k);

}  // namespace trendblocks

#endif
