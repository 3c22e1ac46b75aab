#ifndef TRENDBLOCKS_SEARCH_HPP
#define TRENDBLOCKS_SEARCH_HPP

#include "trendblocks/orders.hpp"

#include <cstdint>

namespace trendblocks {

struct OracleResult {
  Order order;     // lexicographically smallest maximizer
  double f_max = 0.0;
  std::uint64_t enumerated = 0;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/// Exact maximizer of F over all v^k orders. Throws InfeasibleError when
/// v^k exceeds the budget. The OpenMP version partitions the order space by
/// leading digit and reduces with the same lexicographic tie-break as the
/// serial reference.
OracleResult brute_force_optimal(int v, int k, double lambda0, double lambda1,
                                 std::uint64_t budget = kDefaultOracleBudget);
OracleResult brute_force_optimal_serial(int v, int k, double lambda0,
                                        double lambda1,
                                        std::uint64_t budget = kDefaultOracleBudget);

struct TraceSearchResult {
  double max_trace = 0.0;
  DesignArray argmax;  // lexicographically smallest maximizer
  std::uint64_t enumerated = 0;
};

/// Maximum of trace(C^L) over all v^(k*b) designs. Desk-scale only.
TraceSearchResult max_trace_design(int v, int k, int b, double lambda0,
                                   double lambda1,
                                   std::uint64_t budget = 100'000'000);
TraceSearchResult max_trace_design_serial(int v, int k, int b, double lambda0,
                                          double lambda1,
                                          std::uint64_t budget = 100'000'000);

}  // namespace trendblocks

#endif
