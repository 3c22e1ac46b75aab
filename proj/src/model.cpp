#include "trendblocks/model.hpp"

#include <cmath>
#include <limits>

namespace trendblocks {

Order::Order(int k_, int v_, std::vector<int> e) : k(k_), v(v_), entries(std::move(e)) {
  validate();
}

void Order::validate() const {
  if (k < 1 || static_cast<int>(entries.size()) != k)
    throw std::invalid_argument("order length mismatch");
  if (v < 1) throw std::invalid_argument("order needs v >= 1");
  for (int e : entries)
    if (e < 1 || e > v) throw std::invalid_argument("order entry out of range");
}

int Order::distinct_treatments() const {
  std::vector<char> seen(v + 1, 0);
  int c = 0;
  for (int e : entries)
    if (!seen[e]) { seen[e] = 1; ++c; }
  return c;
}

DesignArray::DesignArray(int v_, int b_, int k_, IntMatrix c)
    : v(v_), b(b_), k(k_), cells(std::move(c)) {
  validate();
}

void DesignArray::validate() const {
  if (v < 1 || b < 1 || k < 1) throw std::invalid_argument("invalid design dimensions");
  if (cells.rows() != k || cells.cols() != b)
    throw std::invalid_argument("design cells shape mismatch");
  for (int j = 0; j < b; ++j)
    for (int p = 0; p < k; ++p)
      if (cells(p, j) < 1 || cells(p, j) > v)
        throw std::invalid_argument("design entry out of range");
}

Order DesignArray::column_order(int j) const {
  std::vector<int> e(k);
  for (int p = 0; p < k; ++p) e[p] = cells(p, j);
  return Order(k, v, std::move(e));
}

Eigen::VectorXi DesignArray::replication() const {
  Eigen::VectorXi r = Eigen::VectorXi::Zero(v);
  for (int j = 0; j < b; ++j)
    for (int p = 0; p < k; ++p) r[cells(p, j) - 1]++;
  return r;
}

IntMatrix DesignArray::block_incidence() const {
  IntMatrix n = IntMatrix::Zero(v, b);
  for (int j = 0; j < b; ++j)
    for (int p = 0; p < k; ++p) n(cells(p, j) - 1, j)++;
  return n;
}

IntMatrix DesignArray::row_incidence() const {
  IntMatrix m = IntMatrix::Zero(v, k);
  for (int j = 0; j < b; ++j)
    for (int p = 0; p < k; ++p) m(cells(p, j) - 1, p)++;
  return m;
}

Matrix DesignArray::unit_incidence(int j) const {
  Matrix x = Matrix::Zero(k, v);
  for (int p = 0; p < k; ++p) x(p, cells(p, j) - 1) = 1.0;
  return x;
}

void require_lambda_range(int k, double lambda0, double lambda1) {
  const double eps = 1e-12;
  if (k < 2) throw std::invalid_argument("block size k must be >= 2");
  if (lambda0 < -eps || lambda0 > 1.0 / k + eps)
    throw std::invalid_argument("lambda0 out of [0, 1/k]");
  if (lambda1 < -eps || lambda1 > 1.0 + eps)
    throw std::invalid_argument("lambda1 out of [0, 1]");
}

ModelParams::ModelParams(int k_, double l0, double l1)
    : k(k_), lambda0(l0), lambda1(l1) {
  require_lambda_range(k, lambda0, lambda1);
}

ModelParams ModelParams::from_components(int k, const VarianceComponents& vc) {
  auto [l0, l1] = lambdas_from_components(vc.sigma0_eps2, vc.sigma0_beta2,
                                          vc.sigma0_theta2, k);
  ModelParams p(k, l0, l1);
  p.components = vc;
  return p;
}

double phi_scale(int k) {
  if (k < 2) throw std::invalid_argument("phi needs k >= 2");
  return std::sqrt(3.0 / (static_cast<double>(k) * (static_cast<double>(k) * k - 1.0)));
}

Vector phi_vector(int k) {
  const double c = phi_scale(k);
  Vector phi(k);
  for (int p = 1; p <= k; ++p) phi[p - 1] = c * (2.0 * p - k - 1.0);
  return phi;
}

std::pair<double, double> lambdas_from_components(double sigma0_eps2,
                                                  double sigma0_beta2,
                                                  double sigma0_theta2, int k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (!(sigma0_eps2 > 0.0) || std::isinf(sigma0_eps2))
    throw std::invalid_argument("sigma0_eps2 must be positive and finite");
  if (sigma0_beta2 < 0.0 || sigma0_theta2 < 0.0)
    throw std::invalid_argument("variance components must be nonnegative");
  double l0 = std::isinf(sigma0_beta2)
                  ? 1.0 / k
                  : sigma0_beta2 / (sigma0_eps2 + k * sigma0_beta2);
  double l1 = std::isinf(sigma0_theta2)
                  ? 1.0
                  : sigma0_theta2 / (sigma0_eps2 + sigma0_theta2);
  return {l0, l1};
}

Matrix w_matrix(int k, double lambda0, double lambda1) {
  require_lambda_range(k, lambda0, lambda1);
  Vector phi = phi_vector(k);
  Matrix w = Matrix::Identity(k, k);
  w -= lambda0 * Matrix::Ones(k, k);
  w -= lambda1 * (phi * phi.transpose());
  return w;
}

Matrix minimal_info_matrix(const DesignArray& d, double lambda0, double lambda1) {
  d.validate();
  require_lambda_range(d.k, lambda0, lambda1);
  const Matrix w = w_matrix(d.k, lambda0, lambda1);
  const Vector phi = phi_vector(d.k);

  Matrix c = Matrix::Zero(d.v, d.v);
  for (int j = 0; j < d.b; ++j) {
    Matrix x = d.unit_incidence(j);
    c += x.transpose() * w * x;
  }
  Vector r = d.replication().cast<double>();
  c -= ((1.0 - d.k * lambda0) / (static_cast<double>(d.b) * d.k)) * (r * r.transpose());
  Vector mphi = d.row_incidence().cast<double>() * phi;
  c -= ((1.0 - lambda1) / d.b) * (mphi * mphi.transpose());
  return c;
}

Matrix minimal_info_matrix_alt(const DesignArray& d, double lambda0, double lambda1) {
  d.validate();
  require_lambda_range(d.k, lambda0, lambda1);
  const Vector phi = phi_vector(d.k);

  Vector r = d.replication().cast<double>();
  Matrix c = r.asDiagonal();
  Matrix n = d.block_incidence().cast<double>();
  c -= lambda0 * (n * n.transpose());
  for (int j = 0; j < d.b; ++j) {
    Matrix x = d.unit_incidence(j);
    Vector xp = x.transpose() * phi;
    c -= lambda1 * (xp * xp.transpose());
  }
  c -= ((1.0 - d.k * lambda0) / (static_cast<double>(d.b) * d.k)) * (r * r.transpose());
  Vector mphi = d.row_incidence().cast<double>() * phi;
  c -= ((1.0 - lambda1) / d.b) * (mphi * mphi.transpose());
  return c;
}

Matrix full_info_matrix(const DesignArray& d, const Matrix& sigma) {
  d.validate();
  if (sigma.rows() != d.k || sigma.cols() != d.k)
    throw std::invalid_argument("Sigma must be k x k");

  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(
        "Sigma is singular or not positive definite; use the minimal "
        "information matrix instead");
  Matrix sinv = llt.solve(Matrix::Identity(d.k, d.k));

  const Vector phi = phi_vector(d.k);
  const Vector ones = Vector::Ones(d.k);

  // V = I_b (x) Sigma, Z = (1_{bk}, 1_b (x) phi): everything reduces to
  // per-block 2x2 and k x v pieces.
  Matrix xvx = Matrix::Zero(d.v, d.v);   // X' V^-1 X
  Matrix xvz = Matrix::Zero(d.v, 2);     // X' V^-1 Z
  Matrix z0(d.k, 2);
  z0.col(0) = ones;
  z0.col(1) = phi;
  Matrix zvz = d.b * (z0.transpose() * sinv * z0);
  for (int j = 0; j < d.b; ++j) {
    Matrix x = d.unit_incidence(j);
    xvx += x.transpose() * sinv * x;
    xvz += x.transpose() * sinv * z0;
  }
  Eigen::FullPivLU<Matrix> lu(zvz);
  if (!lu.isInvertible())
    throw std::invalid_argument("degenerate model: Z'V^-1Z is singular");
  return xvx - xvz * lu.solve(xvz.transpose());
}

Matrix sigma_upper_bound(double sigma0_eps2, double sigma0_beta2,
                         double sigma0_theta2, int k) {
  if (!(sigma0_eps2 > 0.0)) throw std::invalid_argument("sigma0_eps2 must be > 0");
  if (sigma0_beta2 < 0.0 || sigma0_theta2 < 0.0)
    throw std::invalid_argument("variance components must be nonnegative");
  const Vector phi = phi_vector(k);
  Matrix s = sigma0_eps2 * Matrix::Identity(k, k);
  s += sigma0_beta2 * Matrix::Ones(k, k);
  s += sigma0_theta2 * (phi * phi.transpose());
  return s;
}

bool is_completely_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  const int n = static_cast<int>(m.rows());
  if (n == 1) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double diag = m(0, 0);
  const double off = m(0, n > 1 ? 1 : 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double want = (i == j) ? diag : off;
      if (std::abs(m(i, j) - want) > tol * scale) return false;
    }
  return true;
}

bool loewner_geq(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("shape mismatch");
  Matrix diff = a - b;
  diff = 0.5 * (diff + diff.transpose().eval());
  const double scale = std::max(1.0, diff.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol * scale;
}

}  // namespace trendblocks
