// Benchmark: serial reference vs OpenMP enumeration kernels.

#include "trendblocks/search.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

using namespace trendblocks;
using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

void bench_orders(int v, int k, double l0, double l1) {
  auto t0 = clk::now();
  auto serial = brute_force_optimal_serial(v, k, l0, l1, 1ull << 40);
  double ts = seconds_since(t0);

  t0 = clk::now();
  auto par = brute_force_optimal(v, k, l0, l1, 1ull << 40);
  double tp = seconds_since(t0);

  if (std::abs(serial.f_max - par.f_max) > 1e-15 ||
      serial.order.entries != par.order.entries) {
    std::fprintf(stderr, "MISMATCH on orders v=%d k=%d\n", v, k);
    std::exit(1);
  }
  std::printf("orders  v=%d k=%2d  n=%12llu  serial %8.3fs  parallel %8.3fs  x%.2f\n",
              v, k, (unsigned long long)serial.enumerated, ts, tp,
              tp > 0 ? ts / tp : 0.0);
}

void bench_designs(int v, int k, int b, double l0, double l1) {
  auto t0 = clk::now();
  auto serial = max_trace_design_serial(v, k, b, l0, l1, 1ull << 40);
  double ts = seconds_since(t0);

  t0 = clk::now();
  auto par = max_trace_design(v, k, b, l0, l1, 1ull << 40);
  double tp = seconds_since(t0);

  if (std::abs(serial.max_trace - par.max_trace) > 1e-15 ||
      serial.argmax.cells != par.argmax.cells) {
    std::fprintf(stderr, "MISMATCH on designs v=%d k=%d b=%d\n", v, k, b);
    std::exit(1);
  }
  std::printf("designs v=%d k=%2d b=%d  n=%12llu  serial %8.3fs  parallel %8.3fs  x%.2f\n",
              v, k, b, (unsigned long long)serial.enumerated, ts, tp,
              tp > 0 ? ts / tp : 0.0);
}

}  // namespace

int main() {
  bench_orders(5, 8, 0.05, 0.8);
  bench_orders(7, 8, 0.1, 0.5);
  bench_orders(4, 12, 0.02, 0.9);
  bench_designs(3, 3, 4, 0.1, 0.9);
  bench_designs(3, 4, 3, 0.2, 0.7);
  bench_designs(4, 4, 3, 0.05, 0.8);
  return 0;
}
