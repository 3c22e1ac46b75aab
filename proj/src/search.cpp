#include "trendblocks/search.hpp"
#include "trendblocks/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace trendblocks {

namespace {

inline std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

// F for the order encoded by `digits` (digit 0 = position 1, values 0..v-1).
// Exact integer accumulation of replications and trend sums keeps serial and
// parallel sweeps bit-identical.
inline double order_f(const int* digits, int v, int k, double lambda0,
                      double lambda1, double c2, int* n, long long* hsum) {
  for (int i = 0; i < v; ++i) {
    n[i] = 0;
    hsum[i] = 0;
  }
  for (int p = 0; p < k; ++p) {
    int i = digits[p];
    n[i]++;
    hsum[i] += 2LL * (p + 1) - k - 1;
  }
  long long nsq = 0, hsq = 0;
  for (int i = 0; i < v; ++i) {
    nsq += static_cast<long long>(n[i]) * n[i];
    hsq += hsum[i] * hsum[i];
  }
  double s = 0.5 * static_cast<double>(nsq - k);
  double t = 0.5 * (c2 * static_cast<double>(hsq) - 1.0);
  return -lambda0 * s - lambda1 * t;
}

inline void decode(std::uint64_t idx, int v, int len, int* digits) {
  for (int p = len - 1; p >= 0; --p) {
    digits[p] = static_cast<int>(idx % v);
    idx /= v;
  }
}

struct BestIdx {
  double f = -std::numeric_limits<double>::infinity();
  std::uint64_t idx = 0;
  void consider(double fv, std::uint64_t i) {
    if (fv > f || (fv == f && i < idx)) {
      f = fv;
      idx = i;
    }
  }
  void merge(const BestIdx& o) { consider(o.f, o.idx); }
};

BestIdx scan_orders_range(std::uint64_t lo, std::uint64_t hi, int v, int k,
                          double lambda0, double lambda1) {
  const double c2 = 3.0 / (static_cast<double>(k) * (static_cast<double>(k) * k - 1.0));
  std::vector<int> digits(k), n(v);
  std::vector<long long> hsum(v);
  BestIdx best;
  if (lo >= hi) return best;
  decode(lo, v, k, digits.data());
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    best.consider(order_f(digits.data(), v, k, lambda0, lambda1, c2, n.data(),
                          hsum.data()),
                  idx);
    // odometer increment
    for (int p = k - 1; p >= 0; --p) {
      if (++digits[p] < v) break;
      digits[p] = 0;
    }
  }
  return best;
}

Order order_from_index(std::uint64_t idx, int v, int k) {
  std::vector<int> digits(k);
  decode(idx, v, k, digits.data());
  std::vector<int> e(k);
  for (int p = 0; p < k; ++p) e[p] = digits[p] + 1;
  return Order(k, v, std::move(e));
}

void check_order_budget(int v, int k, std::uint64_t budget, std::uint64_t total) {
  if (total > budget)
    throw InfeasibleError("order enumeration needs " + std::to_string(total) +
                          " evaluations, over the budget of " +
                          std::to_string(budget));
  if (v < 2 || k < 2) throw std::invalid_argument("need v >= 2 and k >= 2");
}

// sigma^2 trace(C^L) for the design encoded by `digits` (column-major
// within the flat index: digit p + j*k = cell (p, j)).
inline double design_trace(const int* digits, int v, int k, int b,
                           double lambda0, double lambda1, double c2,
                           int* n, long long* hsum, int* r, long long* htot) {
  const double wdiag = k - k * lambda0 - lambda1;  // sum_p w_pp
  for (int i = 0; i < v; ++i) {
    r[i] = 0;
    htot[i] = 0;
  }
  double tr = 0.0;
  for (int j = 0; j < b; ++j) {
    const int* col = digits + static_cast<std::size_t>(j) * k;
    for (int i = 0; i < v; ++i) {
      n[i] = 0;
      hsum[i] = 0;
    }
    for (int p = 0; p < k; ++p) {
      int i = col[p];
      n[i]++;
      long long w = 2LL * (p + 1) - k - 1;
      hsum[i] += w;
      r[i]++;
      htot[i] += w;
    }
    long long nsq = 0, hsq = 0;
    for (int i = 0; i < v; ++i) {
      nsq += static_cast<long long>(n[i]) * n[i];
      hsq += hsum[i] * hsum[i];
    }
    double s = 0.5 * static_cast<double>(nsq - k);
    double t = 0.5 * (c2 * static_cast<double>(hsq) - 1.0);
    tr += wdiag + 2.0 * (-lambda0 * s - lambda1 * t);
  }
  long long rsq = 0, hsq_tot = 0;
  for (int i = 0; i < v; ++i) {
    rsq += static_cast<long long>(r[i]) * r[i];
    hsq_tot += htot[i] * htot[i];
  }
  tr -= (1.0 - k * lambda0) / (static_cast<double>(b) * k) * static_cast<double>(rsq);
  tr -= (1.0 - lambda1) / b * c2 * static_cast<double>(hsq_tot);
  return tr;
}

BestIdx scan_designs_range(std::uint64_t lo, std::uint64_t hi, int v, int k,
                           int b, double lambda0, double lambda1) {
  const double c2 = 3.0 / (static_cast<double>(k) * (static_cast<double>(k) * k - 1.0));
  const int len = k * b;
  std::vector<int> digits(len), n(v), r(v);
  std::vector<long long> hsum(v), htot(v);
  BestIdx best;
  if (lo >= hi) return best;
  decode(lo, v, len, digits.data());
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    best.consider(design_trace(digits.data(), v, k, b, lambda0, lambda1, c2,
                               n.data(), hsum.data(), r.data(), htot.data()),
                  idx);
    for (int p = len - 1; p >= 0; --p) {
      if (++digits[p] < v) break;
      digits[p] = 0;
    }
  }
  return best;
}

DesignArray design_from_index(std::uint64_t idx, int v, int k, int b) {
  const int len = k * b;
  std::vector<int> digits(len);
  decode(idx, v, len, digits.data());
  IntMatrix cells(k, b);
  for (int j = 0; j < b; ++j)
    for (int p = 0; p < k; ++p) cells(p, j) = digits[j * k + p] + 1;
  return DesignArray(v, b, k, std::move(cells));
}

template <typename Scan>
BestIdx parallel_scan(std::uint64_t total, const Scan& scan) {
  BestIdx best;
#ifdef _OPENMP
  const int nthreads = omp_get_max_threads();
  const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
  std::vector<BestIdx> partial(nthreads);
#pragma omp parallel for schedule(static)
  for (int t = 0; t < nthreads; ++t) {
    std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
    std::uint64_t hi = std::min(total, lo + chunk);
    partial[t] = scan(lo, hi);
  }
  for (const auto& p : partial) best.merge(p);
#else
  best = scan(0, total);
#endif
  return best;
}

}  // namespace

OracleResult brute_force_optimal_serial(int v, int k, double lambda0,
                                        double lambda1, std::uint64_t budget) {
  require_lambda_range(k, lambda0, lambda1);
  const std::uint64_t total = ipow(v, k);
  check_order_budget(v, k, budget, total);
  BestIdx best = scan_orders_range(0, total, v, k, lambda0, lambda1);
  return {order_from_index(best.idx, v, k), best.f, total};
}

OracleResult brute_force_optimal(int v, int k, double lambda0, double lambda1,
                                 std::uint64_t budget) {
  require_lambda_range(k, lambda0, lambda1);
  const std::uint64_t total = ipow(v, k);
  check_order_budget(v, k, budget, total);
  BestIdx best = parallel_scan(total, [&](std::uint64_t lo, std::uint64_t hi) {
    return scan_orders_range(lo, hi, v, k, lambda0, lambda1);
  });
  return {order_from_index(best.idx, v, k), best.f, total};
}

TraceSearchResult max_trace_design_serial(int v, int k, int b, double lambda0,
                                          double lambda1, std::uint64_t budget) {
  require_lambda_range(k, lambda0, lambda1);
  if (v < 2 || b < 1) throw std::invalid_argument("need v >= 2 and b >= 1");
  const std::uint64_t total = ipow(v, k * b);
  if (total > budget)
    throw InfeasibleError("design enumeration needs " + std::to_string(total) +
                          " evaluations, over the budget of " +
                          std::to_string(budget));
  BestIdx best = scan_designs_range(0, total, v, k, b, lambda0, lambda1);
  return {best.f, design_from_index(best.idx, v, k, b), total};
}

TraceSearchResult max_trace_design(int v, int k, int b, double lambda0,
                                   double lambda1, std::uint64_t budget) {
  require_lambda_range(k, lambda0, lambda1);
  if (v < 2 || b < 1) throw std::invalid_argument("need v >= 2 and b >= 1");
  const std::uint64_t total = ipow(v, k * b);
  if (total > budget)
    throw InfeasibleError("design enumeration needs " + std::to_string(total) +
                          " evaluations, over the budget of " +
                          std::to_string(budget));
  BestIdx best = parallel_scan(total, [&](std::uint64_t lo, std::uint64_t hi) {
    return scan_designs_range(lo, hi, v, k, b, lambda0, lambda1);
  });
  return {best.f, design_from_index(best.idx, v, k, b), total};
}

}  // namespace trendblocks
