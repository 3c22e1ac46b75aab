#ifndef TRENDBLOCKS_ORDERS_HPP
#define TRENDBLOCKS_ORDERS_HPP

#include "trendblocks/types.hpp"

namespace trendblocks {

/// Per-order statistics. h_i carries exact integer trend loadings:
/// h_i = phi_scale(k) * hsum_i with hsum_i = sum of (2p - k - 1) over the
/// positions of treatment i.
struct OrderStats {
  std::vector<int> n;            // replication per treatment, length v
  std::vector<long long> hsum;   // integer trend sums, length v
  std::vector<double> h;         // trend loadings h_i
  long long s = 0;               // coincidence pairs
  double T = 0.0;                // trend quadratic
  double F = 0.0;                // objective  -l0*s - l1*T
};

OrderStats order_stats(const Order& pi, double lambda0, double lambda1);

/// Objective F(pi) alone (cheaper than full stats).
double order_objective(const Order& pi, double lambda0, double lambda1);

/// Largest integer p with 1 <= p < (k+1)/2 and lambda1*phi^2(p) > lambda0,
/// or 0 when even p = 1 fails the strict inequality.
int s_star(int k, double lambda0, double lambda1);

/// The mirrored order {i1..iq, i_{q+1}..i_{k-q}, iq..i1} on k - q distinct
/// treatments labeled 1, 2, ... in first-appearance order.
Order pi_q(int k, int q, int v);

enum class TfVariant { A, B, C, NTF };

/// Trend-free / nearly trend-free orders for k >= 2v.
///   A:   k odd, replications m+1 (t treatments) / m, all h_i = 0.
///   B:   k even, k/v an even integer, all replications m, mirror order.
///   C:   k even, k/v not an even integer, even replications in {xi, xi+2}.
///   NTF: k even, k/v not an even integer, replications m+1 / m,
///        |h_i| = -phi(k/2) for odd-replicated treatments.
Order tf_ntf_order(int v, int k, TfVariant variant);

enum class TrendTarget { Zero, HalfStep };

/// Assign treatments (given their replication counts) to the supplied inner
/// positions so that each attains h_i = 0 (Zero) or |h_i| = -phi(k/2)
/// (HalfStep). Returns one treatment index (0-based into counts) per inner
/// position. Throws InfeasibleError naming the violated parity condition.
std::vector<int> trend_filler(int k, const std::vector<int>& inner_positions,
                              const std::vector<int>& counts, TrendTarget target);

/// Optimal order per the k < 2v and k >= 2v dispatch.
Order optimal_order(int v, int k, double lambda0, double lambda1);

/// The variant optimal_order would pick for (v, k, lambdas); exposed for
/// reporting. q is meaningful only when tf == false.
struct OrderChoice {
  bool tf = false;          // true: TF/NTF family (k >= 2v)
  int q = 0;                // pi_q index when k < 2v
  TfVariant variant = TfVariant::A;
};
OrderChoice classify_optimal_order(int v, int k, double lambda0, double lambda1);

/// Replication multiset minimizing sum n_i^2 over orders with exactly u
/// odd-replicated treatments (k even, k >= 2v). Throws InfeasibleError when
/// no such order exists (parity obstruction).
std::vector<int> min_ssq_profile(int k, int v, int u);

}  // namespace trendblocks

#endif
