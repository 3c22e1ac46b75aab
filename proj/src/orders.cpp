#include "trendblocks/orders.hpp"
#include "trendblocks/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace trendblocks {

namespace {

// Integer trend weight of position p (1-based): phi(p) = phi_scale(k) * wt.
inline long long weight(int k, int p) { return 2LL * p - k - 1; }

struct Replications {
  int m = 0, t = 0;
  std::vector<int> n;  // per treatment, labels 1..v
};

Replications balanced_replications(int v, int k) {
  Replications r;
  r.m = k / v;
  r.t = k % v;
  if (r.m < 2) throw std::invalid_argument("TF/NTF orders need k >= 2v");
  r.n.assign(v, r.m);
  for (int i = 0; i < r.t; ++i) r.n[i] = r.m + 1;
  return r;
}

}  // namespace

OrderStats order_stats(const Order& pi, double lambda0, double lambda1) {
  pi.validate();
  require_lambda_range(pi.k, lambda0, lambda1);
  OrderStats st;
  st.n.assign(pi.v, 0);
  st.hsum.assign(pi.v, 0);
  for (int p = 1; p <= pi.k; ++p) {
    int i = pi.entries[p - 1] - 1;
    st.n[i]++;
    st.hsum[i] += weight(pi.k, p);
  }
  long long nsq = 0, hsq = 0;
  for (int i = 0; i < pi.v; ++i) {
    nsq += static_cast<long long>(st.n[i]) * st.n[i];
    hsq += st.hsum[i] * st.hsum[i];
  }
  st.s = (nsq - pi.k) / 2;
  const double c = phi_scale(pi.k);
  st.h.resize(pi.v);
  for (int i = 0; i < pi.v; ++i) st.h[i] = c * static_cast<double>(st.hsum[i]);
  st.T = 0.5 * (c * c * static_cast<double>(hsq) - 1.0);
  st.F = -lambda0 * static_cast<double>(st.s) - lambda1 * st.T;
  return st;
}

double order_objective(const Order& pi, double lambda0, double lambda1) {
  return order_stats(pi, lambda0, lambda1).F;
}

int s_star(int k, double lambda0, double lambda1) {
  require_lambda_range(k, lambda0, lambda1);
  const double c2 = 3.0 / (static_cast<double>(k) * (static_cast<double>(k) * k - 1.0));
  int best = 0;
  for (int p = 1; 2 * p < k + 1; ++p) {
    double w = static_cast<double>(weight(k, p));
    if (lambda1 * c2 * w * w > lambda0)
      best = p;
    else
      break;  // phi^2(p) decreases toward the middle
  }
  return best;
}

Order pi_q(int k, int q, int v) {
  if (k < 2) throw std::invalid_argument("pi_q needs k >= 2");
  if (q < 0 || 2 * q > k) throw std::invalid_argument("pi_q needs 0 <= q <= k/2");
  if (k - q > v) throw std::invalid_argument("pi_q needs k - q distinct treatments");
  std::vector<int> e(k);
  for (int p = 1; p <= k - q; ++p) e[p - 1] = p;
  for (int p = k - q + 1; p <= k; ++p) e[p - 1] = k - p + 1;
  return Order(k, v, std::move(e));
}

std::vector<int> trend_filler(int k, const std::vector<int>& inner_positions,
                              const std::vector<int>& counts, TrendTarget target) {
  const int slots = static_cast<int>(inner_positions.size());
  if (std::accumulate(counts.begin(), counts.end(), 0) != slots)
    throw std::invalid_argument("counts must fill the inner positions exactly");
  for (int p : inner_positions)
    if (p < 1 || p > k) throw std::invalid_argument("inner position out of range");

  // Parity screen. For k even every position weight is odd, so a group sum
  // has the parity of its size: odd-sized groups cannot reach 0 and cannot
  // miss +-1; for k odd every weight is even and only 0 is reachable.
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1) throw std::invalid_argument("counts must be positive");
    bool odd = counts[i] % 2 != 0;
    if (target == TrendTarget::Zero && k % 2 == 0 && odd)
      throw InfeasibleError(
          "parity condition n_i(k+1) = 0 (mod 2) violated: odd replication " +
          std::to_string(counts[i]) + " with k even cannot be trend-free");
    if (target == TrendTarget::HalfStep && k % 2 != 0)
      throw InfeasibleError("half-step target requires k even");
  }

  std::vector<int> pos = inner_positions;
  std::sort(pos.begin(), pos.end());
  const int g = static_cast<int>(counts.size());
  std::vector<int> remaining(counts.begin(), counts.end());
  std::vector<long long> sum(g, 0);
  std::vector<int> assign(slots, -1);

  // Target for a completed group.
  auto ok_done = [&](int gi) {
    if (target == TrendTarget::Zero) return sum[gi] == 0;
    return counts[gi] % 2 == 0 ? sum[gi] == 0 : std::llabs(sum[gi]) == 1;
  };

  std::function<bool(int)> rec = [&](int idx) -> bool {
    if (idx == slots) return true;
    long long w = weight(k, pos[idx]);
    for (int gi = 0; gi < g; ++gi) {
      if (remaining[gi] == 0) continue;
      // identical groups are interchangeable: only open the first idle one
      if (gi > 0 && counts[gi] == counts[gi - 1] && remaining[gi] == counts[gi] &&
          remaining[gi - 1] == counts[gi - 1])
        continue;
      remaining[gi]--;
      sum[gi] += w;
      assign[idx] = gi;
      if (remaining[gi] > 0 || ok_done(gi)) {
        if (rec(idx + 1)) return true;
      }
      remaining[gi]++;
      sum[gi] -= w;
      assign[idx] = -1;
    }
    return false;
  };

  if (!rec(0))
    throw InfeasibleError("no placement of the odd-replicated treatments on the "
                          "inner positions attains the trend target");

  // Map back to the caller's position ordering.
  std::vector<int> out(slots, -1);
  for (int i = 0; i < slots; ++i) {
    auto it = std::find(inner_positions.begin(), inner_positions.end(), pos[i]);
    out[static_cast<int>(it - inner_positions.begin())] = assign[i];
  }
  return out;
}

Order tf_ntf_order(int v, int k, TfVariant variant) {
  if (v < 2) throw std::invalid_argument("need v >= 2");
  Replications rep = balanced_replications(v, k);
  const int m = rep.m, t = rep.t;
  const bool k_even = k % 2 == 0;

  switch (variant) {
    case TfVariant::A:
      if (k_even) throw std::invalid_argument("variant A requires k odd");
      break;
    case TfVariant::B:
      if (!k_even || t != 0 || m % 2 != 0)
        throw std::invalid_argument("variant B requires k/v an even integer");
      break;
    case TfVariant::C:
    case TfVariant::NTF:
      if (!k_even || (t == 0 && m % 2 == 0))
        throw std::invalid_argument(
            "variants C/NTF require k even with k/v not an even integer");
      break;
  }

  std::vector<int> order(k, 0);

  if (variant == TfVariant::B) {
    int p = 0;
    for (int rep_i = 0; rep_i < m / 2; ++rep_i)
      for (int i = 1; i <= v; ++i) order[p++] = i;
    for (int q = 0; q < k / 2; ++q) order[k - 1 - q] = order[q];
    return Order(k, v, std::move(order));
  }

  if (variant == TfVariant::C) {
    const int xi = (m % 2 == 0) ? m : m - 1;
    const int big = (k - v * xi) / 2;  // treatments with replication xi + 2
    std::vector<int> n(v, xi);
    for (int i = 0; i < big; ++i) n[i] = xi + 2;
    // larger replications outermost
    int p = 0;
    for (int i = 0; i < v; ++i)
      for (int c = 0; c < n[i] / 2; ++c) order[p++] = i + 1;
    for (int q = 0; q < k / 2; ++q) order[k - 1 - q] = order[q];
    return Order(k, v, std::move(order));
  }

  // A / NTF: replications m+1 (t treatments) and m (v - t). Even-replicated
  // treatments mirror over the outer positions; odd-replicated ones fill the
  // inner positions through the trend search.
  std::vector<int> odd_treat, even_treat;
  for (int i = 0; i < v; ++i)
    (rep.n[i] % 2 != 0 ? odd_treat : even_treat).push_back(i);

  for (int i : odd_treat)
    if (rep.n[i] < 3)
      throw InfeasibleError("odd-replicated treatment needs replication >= 3");

  int outer = 0;
  for (int i : even_treat) outer += rep.n[i];
  const int half = outer / 2;

  int p = 0;
  for (int i : even_treat)
    for (int c = 0; c < rep.n[i] / 2; ++c) order[p++] = i + 1;
  for (int q = 0; q < half; ++q) order[k - 1 - q] = order[q];

  std::vector<int> inner;
  for (int pos = half + 1; pos <= k - half; ++pos) inner.push_back(pos);
  std::vector<int> counts;
  for (int i : odd_treat) counts.push_back(rep.n[i]);
  auto assign = trend_filler(k, inner, counts,
                             variant == TfVariant::A ? TrendTarget::Zero
                                                     : TrendTarget::HalfStep);
  for (size_t s = 0; s < inner.size(); ++s)
    order[inner[s] - 1] = odd_treat[assign[s]] + 1;
  return Order(k, v, std::move(order));
}

OrderChoice classify_optimal_order(int v, int k, double lambda0, double lambda1) {
  if (v < 2) throw std::invalid_argument("need v >= 2");
  require_lambda_range(k, lambda0, lambda1);
  OrderChoice c;
  if (k < 2 * v) {
    int s = s_star(k, lambda0, lambda1);
    c.tf = false;
    c.q = (k <= v + s) ? s : k - v;
    return c;
  }
  c.tf = true;
  const int m = k / v, t = k % v;
  if (k % 2 != 0) {
    c.variant = TfVariant::A;
  } else if (t == 0 && m % 2 == 0) {
    c.variant = TfVariant::B;
  } else {
    const double c2 = 3.0 / (static_cast<double>(k) * (static_cast<double>(k) * k - 1.0));
    const double phi2_mid = c2;  // phi^2(k/2) = c^2 * 1 for k even
    c.variant = (lambda1 * phi2_mid > lambda0) ? TfVariant::C : TfVariant::NTF;
  }
  return c;
}

Order optimal_order(int v, int k, double lambda0, double lambda1) {
  OrderChoice c = classify_optimal_order(v, k, lambda0, lambda1);
  if (!c.tf) return pi_q(k, c.q, v);
  return tf_ntf_order(v, k, c.variant);
}

std::vector<int> min_ssq_profile(int k, int v, int u) {
  if (k % 2 != 0) throw std::invalid_argument("min_ssq_profile requires k even");
  if (k < 2 * v) throw std::invalid_argument("min_ssq_profile requires k >= 2v");
  if (u < 0 || u > v) throw std::invalid_argument("u out of range");
  const int m = k / v, t = k % v;

  // counts per replication value
  std::vector<std::pair<int, int>> groups;  // (replication, count)
  auto add = [&](int rep, int count) {
    if (count < 0) throw InfeasibleError("no order with " + std::to_string(u) +
                                         " odd-replicated treatments exists");
    if (count > 0) groups.emplace_back(rep, count);
  };

  if (m % 2 == 0) {
    if ((u - t) % 2 != 0)
      throw InfeasibleError("u must have the parity of t when m is even");
    if (u <= t) {
      add(m, v - (u + t) / 2);
      add(m + 1, u);
      add(m + 2, (t - u) / 2);
    } else {
      add(m - 1, (u - t) / 2);
      add(m, v - u);
      add(m + 1, (u + t) / 2);
    }
  } else {
    if ((u - (v - t)) % 2 != 0)
      throw InfeasibleError("u must have the parity of v - t when m is odd");
    if (u <= v - t) {
      add(m - 1, (v - u - t) / 2);
      add(m, u);
      add(m + 1, (v - u + t) / 2);
    } else {
      add(m, (u + v - t) / 2);
      add(m + 1, v - u);
      add(m + 2, (u - v + t) / 2);
    }
  }

  std::vector<int> profile;
  for (auto [rep, count] : groups)
    for (int i = 0; i < count; ++i) {
      if (rep < 0) throw InfeasibleError("negative replication in profile");
      profile.push_back(rep);
    }
  std::sort(profile.begin(), profile.end(), std::greater<int>());
  return profile;
}

}  // namespace trendblocks
