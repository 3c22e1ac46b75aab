#ifndef TRENDBLOCKS_TYPES_HPP
#define TRENDBLOCKS_TYPES_HPP

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trendblocks {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

/// Thrown when a requested combinatorial object does not exist for the
/// given parameters (or was not found within the search budget).
/// smallest_feasible_b < 0 means no candidate is known.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& msg, long long smallest_b = -1)
      : std::runtime_error(msg), smallest_feasible_b(smallest_b) {}
  long long smallest_feasible_b;
};

/// A within-block run order: treatment labels (1-based) on the k ordered
/// positions of one block.
struct Order {
  int k = 0;
  int v = 0;
  std::vector<int> entries;  // length k, values in 1..v

  Order() = default;
  Order(int k_, int v_, std::vector<int> e);
  int distinct_treatments() const;
  void validate() const;
};

/// A k x b block design: cell (p, j) holds the treatment on unit p of
/// block j. Labels are 1-based.
struct DesignArray {
  int v = 0;
  int b = 0;
  int k = 0;
  IntMatrix cells;  // k x b

  DesignArray() = default;
  DesignArray(int v_, int b_, int k_, IntMatrix c);
  void validate() const;

  Order column_order(int j) const;

  // Standard incidence views.
  Eigen::VectorXi replication() const;       // r, length v
  IntMatrix block_incidence() const;         // N, v x b
  IntMatrix row_incidence() const;           // M, v x k
  Matrix unit_incidence(int j) const;        // X_j, k x v (0/1)
};

/// Normalized covariance parameters; optionally the generating variance
/// components. Infinite components are legal and map to the boundary
/// lambda values.
struct VarianceComponents {
  double sigma0_eps2 = 1.0;   // > 0
  double sigma0_beta2 = 0.0;  // >= 0, may be +inf
  double sigma0_theta2 = 0.0; // >= 0, may be +inf
};

struct ModelParams {
  int k = 0;
  double lambda0 = 0.0;  // in [0, 1/k]
  double lambda1 = 0.0;  // in [0, 1]
  std::optional<VarianceComponents> components;

  ModelParams(int k_, double l0, double l1);
  static ModelParams from_components(int k, const VarianceComponents& vc);
};

void require_lambda_range(int k, double lambda0, double lambda1);

}  // namespace trendblocks

#endif
