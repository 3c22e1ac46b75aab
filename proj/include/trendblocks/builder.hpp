#ifndef TRENDBLOCKS_BUILDER_HPP
#define TRENDBLOCKS_BUILDER_HPP

#include "trendblocks/sba.hpp"
#include "trendblocks/orders.hpp"

namespace trendblocks {

/// Trace decomposition of sigma^2 * trace(C^L):
///   block term  trace(sum_j X_j' W X_j)
/// minus the r'r and M phi rank-one corrections.
struct TraceCertificate {
  double term_block = 0.0;
  double term_rr = 0.0;
  double term_mphi = 0.0;
  double trace = 0.0;  // term_block - term_rr - term_mphi
};

struct OptimalDesignReport {
  DesignArray design;
  Order order;       // first column
  int kstar = 0;
  bool m_phi_zero = false;   // every treatment balanced over positions
  bool r_equal = false;      // r'r = (bk)^2 / v attained
  bool cs_ok = false;        // C^L completely symmetric
  bool trace_ok = false;     // direct trace matches the order formula
  TraceCertificate certificate;
};

/// Expand an order into the k x b design of a uniform semibalanced array
/// plus duplicated rows, relabeled so that column 1 equals pi_star.
DesignArray assemble_design(const Order& pi_star, const SemibalancedArray& sba);

/// Certify the optimality structure of a design at the given lambdas.
/// Reporting only; never throws on failed checks.
OptimalDesignReport certify_maximin(const DesignArray& d, double lambda0,
                                    double lambda1);

/// End to end: optimal order, semibalanced array for its distinct
/// treatments, assembly, certification. Throws InfeasibleError carrying the
/// smallest feasible b when none exists for the requested b.
OptimalDesignReport build_optimal_design(int v, int k, int b, double lambda0,
                                         double lambda1);

}  // namespace trendblocks

#endif
