#include "trendblocks/sba.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace trendblocks {

namespace {

bool is_odd_prime(int v) {
  if (v < 3 || v % 2 == 0) return false;
  for (int d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

/// Difference construction over Z_v, v an odd prime: columns indexed by
/// (a, e) with a in 0..v-1, e in 1..(v-1)/2; row i holds a + i*e mod v.
IntMatrix difference_array(int v, int kstar) {
  const int b0 = v * (v - 1) / 2;
  IntMatrix cells(kstar, b0);
  int col = 0;
  for (int e = 1; e <= (v - 1) / 2; ++e)
    for (int a = 0; a < v; ++a) {
      for (int i = 1; i <= kstar; ++i)
        cells(i - 1, col) = (a + static_cast<long long>(i) * e) % v + 1;
      ++col;
    }
  return cells;
}

struct SearchState {
  int v, kstar, b;
  std::uint64_t budget, nodes = 0;
  IntMatrix cells;
  // pair counts per row pair: pc[rp][pair_index], target = 2b / (v(v-1))
  std::vector<std::vector<int>> pair_count;
  std::vector<std::vector<int>> row_count;  // per row, per symbol
  int lambda;                               // target pair frequency
  int row_target;                           // b / v per row symbol count
};

int pair_index(int x, int y, int v) {  // 0-based symbols, x < y
  return x * v - x * (x + 1) / 2 + (y - x - 1);
}

bool place(SearchState& st, int col, int row, std::vector<char>& used) {
  if (++st.nodes > st.budget) return false;
  if (row == st.kstar) {
    // column complete
    if (col + 1 == st.b) return true;
    std::vector<char> next_used(st.v, 0);
    return place(st, col + 1, 0, next_used);
  }
  for (int sym = 0; sym < st.v; ++sym) {
    if (used[sym]) continue;
    if (st.row_count[row][sym] == st.row_target) continue;
    // canonical column ordering: first column fixed ascending start
    if (col == 0 && row > 0 && sym < st.cells(row - 1, 0) - 1) continue;
    bool ok = true;
    for (int r2 = 0; r2 < row && ok; ++r2) {
      int a = st.cells(r2, col) - 1;
      int pi = a < sym ? pair_index(a, sym, st.v) : pair_index(sym, a, st.v);
      if (st.pair_count[r2 * st.kstar + row][pi] == st.lambda) ok = false;
    }
    if (!ok) continue;
    st.cells(row, col) = sym + 1;
    used[sym] = 1;
    st.row_count[row][sym]++;
    for (int r2 = 0; r2 < row; ++r2) {
      int a = st.cells(r2, col) - 1;
      int pi = a < sym ? pair_index(a, sym, st.v) : pair_index(sym, a, st.v);
      st.pair_count[r2 * st.kstar + row][pi]++;
    }
    if (place(st, col, row + 1, used)) return true;
    used[sym] = 0;
    st.row_count[row][sym]--;
    for (int r2 = 0; r2 < row; ++r2) {
      int a = st.cells(r2, col) - 1;
      int pi = a < sym ? pair_index(a, sym, st.v) : pair_index(sym, a, st.v);
      st.pair_count[r2 * st.kstar + row][pi]--;
    }
    if (st.nodes > st.budget) return false;
  }
  return false;
}

}  // namespace

SbaReport verify_sba(const IntMatrix& cells, int v) {
  SbaReport rep;
  const int kstar = static_cast<int>(cells.rows());
  const int b = static_cast<int>(cells.cols());
  rep.is_sba = true;
  rep.row_uniform = true;

  for (int j = 0; j < b; ++j) {
    std::vector<int> seen(v + 1, 0);
    for (int i = 0; i < kstar; ++i) {
      int s = cells(i, j);
      if (s < 1 || s > v) {
        rep.is_sba = false;
        rep.violations.push_back({"column", "entry out of range in column " +
                                                std::to_string(j + 1)});
        continue;
      }
      if (seen[s]++) {
        rep.is_sba = false;
        rep.violations.push_back(
            {"column", "symbol " + std::to_string(s) +
                           " repeated in column " + std::to_string(j + 1)});
      }
    }
  }

  for (int r1 = 0; r1 < kstar; ++r1)
    for (int r2 = r1 + 1; r2 < kstar; ++r2) {
      std::vector<int> count(v * v, 0);
      for (int j = 0; j < b; ++j) {
        int x = cells(r1, j) - 1, y = cells(r2, j) - 1;
        if (x < 0 || x >= v || y < 0 || y >= v || x == y) continue;
        if (x > y) std::swap(x, y);
        count[x * v + y]++;
      }
      int ref = -1;
      for (int x = 0; x < v; ++x)
        for (int y = x + 1; y < v; ++y) {
          if (ref < 0) ref = count[x * v + y];
          if (count[x * v + y] != ref) {
            rep.is_sba = false;
            rep.violations.push_back(
                {"pair", "pair {" + std::to_string(x + 1) + "," +
                             std::to_string(y + 1) + "} appears " +
                             std::to_string(count[x * v + y]) + " times in rows (" +
                             std::to_string(r1 + 1) + "," + std::to_string(r2 + 1) +
                             "), expected " + std::to_string(ref)});
          }
        }
    }

  for (int i = 0; i < kstar; ++i) {
    std::vector<int> count(v + 1, 0);
    for (int j = 0; j < b; ++j) {
      int s = cells(i, j);
      if (s >= 1 && s <= v) count[s]++;
    }
    for (int s = 1; s <= v; ++s)
      if (count[s] * v != b) {
        rep.row_uniform = false;
        rep.violations.push_back(
            {"uniformity", "row " + std::to_string(i + 1) + " holds symbol " +
                               std::to_string(s) + " " + std::to_string(count[s]) +
                               " times, expected " + std::to_string(b) + "/" +
                               std::to_string(v)});
        break;
      }
  }

  const long long npairs = static_cast<long long>(v) * (v - 1) / 2;
  rep.divisibility_ok = npairs > 0 && b % npairs == 0;
  if (!rep.divisibility_ok)
    rep.violations.push_back(
        {"divisibility", "b = " + std::to_string(b) +
                             " is not a multiple of v(v-1)/2 = " +
                             std::to_string(npairs)});
  return rep;
}

long long smallest_candidate_b(int v) {
  if (v < 2) throw std::invalid_argument("need v >= 2");
  long long half_pairs = static_cast<long long>(v) * (v - 1) / 2;
  // pair balance needs v(v-1)/2 | b; row uniformity needs v | b
  long long g = std::gcd(half_pairs, static_cast<long long>(v));
  return half_pairs / g * v;
}

SemibalancedArray construct_sba(int v, int kstar, int b, std::uint64_t budget) {
  if (kstar < 2 || kstar > v)
    throw std::invalid_argument("need 2 <= kstar <= v");
  if (b < 1) throw std::invalid_argument("need b >= 1");

  const long long cand = smallest_candidate_b(v);
  if (is_odd_prime(v)) {
    const int b0 = v * (v - 1) / 2;
    if (b % b0 == 0) {
      SemibalancedArray base{kstar, b0, v, difference_array(v, kstar)};
      return replicate_sba(base, b / b0);
    }
    throw InfeasibleError("b = " + std::to_string(b) +
                              " is not a multiple of the base width " +
                              std::to_string(b0) + " for v = " + std::to_string(v),
                          cand);
  }

  // search fallback for non-prime v
  const long long npairs = static_cast<long long>(v) * (v - 1) / 2;
  if (b % npairs != 0 || b % v != 0)
    throw InfeasibleError(
        "counting conditions fail: need v(v-1)/2 | b and v | b", cand);

  SearchState st;
  st.v = v;
  st.kstar = kstar;
  st.b = b;
  st.budget = budget;
  st.cells = IntMatrix::Zero(kstar, b);
  st.pair_count.assign(static_cast<std::size_t>(kstar) * kstar,
                       std::vector<int>(v * (v - 1) / 2, 0));
  st.row_count.assign(kstar, std::vector<int>(v, 0));
  st.lambda = static_cast<int>(2LL * b / (static_cast<long long>(v) * (v - 1)));
  st.row_target = b / v;
  std::vector<char> used(v, 0);
  if (place(st, 0, 0, used))
    return SemibalancedArray{kstar, b, v, std::move(st.cells)};
  throw InfeasibleError("no semibalanced array found within the search budget "
                        "(not a nonexistence proof)",
                        cand);
}

SemibalancedArray replicate_sba(const SemibalancedArray& a, int copies) {
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");
  SemibalancedArray out{a.kstar, a.b * copies, a.v,
                        IntMatrix(a.kstar, a.b * copies)};
  for (int c = 0; c < copies; ++c)
    out.cells.block(0, c * a.b, a.kstar, a.b) = a.cells;
  return out;
}

}  // namespace trendblocks
