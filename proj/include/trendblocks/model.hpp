#ifndef TRENDBLOCKS_MODEL_HPP
#define TRENDBLOCKS_MODEL_HPP

#include "trendblocks/types.hpp"

namespace trendblocks {

/// Linear orthonormal polynomial on {1..k}:
/// phi(p) = sqrt(3/(k(k^2-1))) * (2p - k - 1). Sums to 0, squares sum to 1.
Vector phi_vector(int k);

/// Normalization constant c with phi(p) = c * (2p - k - 1).
double phi_scale(int k);

/// Reduce variance components to (lambda0, lambda1). Infinite sigma0_beta2
/// gives lambda0 = 1/k; infinite sigma0_theta2 gives lambda1 = 1.
std::pair<double, double> lambdas_from_components(double sigma0_eps2,
                                                  double sigma0_beta2,
                                                  double sigma0_theta2, int k);

/// W = I_k - lambda0 * J_k - lambda1 * phi phi'.
Matrix w_matrix(int k, double lambda0, double lambda1);

/// Minimal information matrix C^L (units sigma0_eps^2 = 1):
///   sum_j X_j' W X_j - ((1-k*l0)/(bk)) r r' - ((1-l1)/b) M phi phi' M'.
Matrix minimal_info_matrix(const DesignArray& d, double lambda0, double lambda1);

/// Same matrix assembled through the incidence-matrix route
///   R - l0 N N' - l1 sum_j X_j' phi phi' X_j - (rank-one tail terms);
/// kept as an independent cross-check of minimal_info_matrix.
Matrix minimal_info_matrix_alt(const DesignArray& d, double lambda0, double lambda1);

/// Full GLS information matrix for treatment contrasts with per-block
/// covariance Sigma (V = I_b (x) Sigma, nuisance columns Z = [1, 1 (x) phi]).
/// Requires Sigma positive definite.
Matrix full_info_matrix(const DesignArray& d, const Matrix& sigma);

/// Upper bound sigma0_eps^2 I + sigma0_beta^2 J + sigma0_theta^2 phi phi'.
Matrix sigma_upper_bound(double sigma0_eps2, double sigma0_beta2,
                         double sigma0_theta2, int k);

/// True iff M = aI + bJ within tol (scaled by max |entry|).
bool is_completely_symmetric(const Matrix& m, double tol = 1e-10);

/// Loewner order: true iff A - B is PSD within tol * max(1, max|entry|).
bool loewner_geq(const Matrix& a, const Matrix& b, double tol = 1e-8);

}  // namespace trendblocks

#endif
