#include "trendblocks/efficiency.hpp"
#include "trendblocks/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trendblocks {

namespace {

double phi2(int k, int p) {
  const double c2 = 3.0 / (static_cast<double>(k) * (static_cast<double>(k) * k - 1.0));
  const double w = 2.0 * p - k - 1.0;
  return c2 * w * w;
}

void require_tf_regime(int v, int k) {
  if (k < 2 * v || k % 2 != 0 || (k % v == 0 && (k / v) % 2 == 0))
    throw std::invalid_argument(
        "TF^C/NTF traces need k even, k >= 2v, k/v not an even integer");
}

}  // namespace

long long s_min(int v, int k) {
  if (k < 2 * v) throw std::invalid_argument("s_min requires k >= 2v");
  const long long m = k / v, t = k % v;
  // (m/2)(k - v + t); m*(k - v + t) is always even
  return m * (k - v + t) / 2;
}

double trace_cl_closed_form(int v, int k, int b, double lambda0, double lambda1,
                            OrderKind kind) {
  require_lambda_range(k, lambda0, lambda1);
  if (v < 2 || b < 1) throw std::invalid_argument("need v >= 2 and b >= 1");

  if (kind.family == OrderKind::PiQ) {
    if (k >= 2 * v) throw std::invalid_argument("pi_q trace needs k < 2v");
    const int q = kind.q;
    if (q < std::max(0, k - v) || 2 * q > k)
      throw std::invalid_argument("q out of [max(0, k-v), k/2]");
    double tr = b * (k - k * lambda0 - lambda1 -
                     (static_cast<double>(k) / v) * (1.0 - k * lambda0));
    for (int p = 1; p <= q; ++p)
      tr += 2.0 * b * (lambda1 * phi2(k, p) - lambda0);
    return tr;
  }

  require_tf_regime(v, k);
  const int m = k / v, t = k % v;
  const double base =
      b * (k - k * lambda0 - 2.0 * lambda0 * static_cast<double>(s_min(v, k)) -
           (static_cast<double>(k) / v) * (1.0 - k * lambda0));
  const int u = (m % 2 == 0) ? t : v - t;  // odd-replicated treatment count
  if (kind.family == OrderKind::NTF) return base - b * u * lambda1 * phi2(k, k / 2);
  return base - b * u * lambda0;  // TF^C
}

double e1(int v, int k, double lambda0, double lambda1) {
  require_tf_regime(v, k);
  if (!(lambda1 > 0.0)) throw std::invalid_argument("E1 requires lambda1 > 0");
  // b cancels; use b = 1
  return trace_cl_closed_form(v, k, 1, lambda0, lambda1, OrderKind::ntf()) /
         trace_cl_closed_form(v, k, 1, lambda0, lambda1, OrderKind::tfc());
}

double e2(int v, int k, double lambda0, double lambda1, int q) {
  if (k >= 2 * v) throw std::invalid_argument("E2 needs k < 2v");
  if (!(lambda1 > 0.0)) throw std::invalid_argument("E2 requires lambda1 > 0");
  OrderChoice c = classify_optimal_order(v, k, lambda0, lambda1);
  return trace_cl_closed_form(v, k, 1, lambda0, lambda1, OrderKind::piq(q)) /
         trace_cl_closed_form(v, k, 1, lambda0, lambda1, OrderKind::piq(c.q));
}

int round_percent(double ratio) {
  return static_cast<int>(std::lround(100.0 * ratio));
}

EfficiencyTable efficiency_table(int v, int k,
                                 const std::vector<std::pair<double, double>>& grid) {
  EfficiencyTable tab;
  tab.columns = grid;

  std::vector<OrderKind> kinds;
  if (k < 2 * v) {
    for (int q = std::max(0, k - v); 2 * q <= k; ++q) {
      kinds.push_back(OrderKind::piq(q));
      tab.row_labels.push_back("pi_" + std::to_string(q));
    }
  } else {
    require_tf_regime(v, k);
    kinds.push_back(OrderKind::tfc());
    tab.row_labels.push_back("pi_TF^C");
    kinds.push_back(OrderKind::ntf());
    tab.row_labels.push_back("pi_NTF");
  }

  tab.ratios.assign(kinds.size(), std::vector<double>(grid.size(), 0.0));
  tab.percents.assign(kinds.size(), std::vector<int>(grid.size(), 0));
  for (std::size_t c = 0; c < grid.size(); ++c) {
    auto [l0, l1] = grid[c];
    double best = 0.0;
    std::vector<double> tr(kinds.size());
    for (std::size_t r = 0; r < kinds.size(); ++r) {
      tr[r] = trace_cl_closed_form(v, k, 1, l0, l1, kinds[r]);
      best = std::max(best, tr[r]);
    }
    for (std::size_t r = 0; r < kinds.size(); ++r) {
      tab.ratios[r][c] = tr[r] / best;
      tab.percents[r][c] = round_percent(tab.ratios[r][c]);
    }
  }
  return tab;
}

EfficiencyTable table1() {
  return efficiency_table(7, 4,
                          {{0.0, 1.0},
                           {1.0 / 40, 1.0},
                           {5.0 / 40, 1.0},
                           {10.0 / 40, 1.0},
                           {10.0 / 40, 0.5},
                           {10.0 / 40, 0.1}});
}

std::vector<Breakpoint> optimality_breakpoints(int v, int k) {
  if (v < 2 || k < 2) throw std::invalid_argument("need v >= 2 and k >= 2");
  std::vector<Breakpoint> out;
  const double inf = std::numeric_limits<double>::infinity();
  if (k < 2 * v) {
    const int qlo = std::max(0, k - v);
    const int qhi = k / 2;
    // ratio intervals, outermost order first: [phi^2(qlo+1), inf) -> pi_qlo
    double hi = inf;
    for (int q = qlo; q <= qhi; ++q) {
      double lo = (q == qhi) ? 0.0 : phi2(k, q + 1);
      out.push_back({lo, hi, "pi_" + std::to_string(q), OrderKind::piq(q)});
      hi = lo;
    }
    return out;
  }
  const int m = k / v, t = k % v;
  if (k % 2 != 0) {
    out.push_back({0.0, inf, "pi_TF^A", OrderKind::tfc()});
  } else if (t == 0 && m % 2 == 0) {
    out.push_back({0.0, inf, "pi_TF^B", OrderKind::tfc()});
  } else {
    double bp = phi2(k, k / 2);
    out.push_back({bp, inf, "pi_NTF", OrderKind::ntf()});
    out.push_back({0.0, bp, "pi_TF^C", OrderKind::tfc()});
  }
  return out;
}

}  // namespace trendblocks
