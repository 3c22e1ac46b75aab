#ifndef TRENDBLOCKS_SBA_HPP
#define TRENDBLOCKS_SBA_HPP

#include "trendblocks/types.hpp"

#include <cstdint>

namespace trendblocks {

/// Semibalanced array (orthogonal array of type II, strength 2):
/// every column has distinct symbols and every pair of rows carries each
/// unordered pair of distinct symbols equally often.
struct SemibalancedArray {
  int kstar = 0;
  int b = 0;
  int v = 0;
  IntMatrix cells;  // kstar x b, entries 1..v
};

struct SbaViolation {
  std::string kind;  // "column", "pair", "uniformity", "divisibility"
  std::string detail;
};

struct SbaReport {
  bool is_sba = false;
  bool row_uniform = false;
  bool divisibility_ok = false;  // v(v-1)/2 | b
  std::vector<SbaViolation> violations;
};

/// Check an arbitrary matrix against the semibalanced-array conditions.
/// Never throws; all failures are listed in the report.
SbaReport verify_sba(const IntMatrix& cells, int v);

/// Smallest b compatible with the pair-count and row-uniformity counting
/// conditions (a necessary condition, not an existence claim).
long long smallest_candidate_b(int v);

/// Construct a row-uniform kstar x b semibalanced array on v symbols.
/// Odd prime v: cyclic difference construction with base width v(v-1)/2,
/// replicated when b is a multiple of it. Other v: bounded backtracking
/// search. Throws InfeasibleError (with the smallest candidate b) when no
/// array is found within the budget.
SemibalancedArray construct_sba(int v, int kstar, int b,
                                std::uint64_t search_budget = 20'000'000);

/// Horizontal concatenation of `copies` copies of A.
SemibalancedArray replicate_sba(const SemibalancedArray& a, int copies);

}  // namespace trendblocks

#endif
