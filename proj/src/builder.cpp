#include "trendblocks/builder.hpp"
#include "trendblocks/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trendblocks {

DesignArray assemble_design(const Order& pi_star, const SemibalancedArray& sba) {
  pi_star.validate();
  const int k = pi_star.k;
  const int kstar = pi_star.distinct_treatments();
  if (sba.kstar != kstar)
    throw std::invalid_argument("semibalanced array must have kstar = number of "
                                "distinct treatments in the order");
  if (sba.v != pi_star.v)
    throw std::invalid_argument("symbol count mismatch");
  {
    SbaReport rep = verify_sba(sba.cells, sba.v);
    if (!rep.is_sba || !rep.row_uniform)
      throw std::invalid_argument("assembly requires a row-uniform semibalanced array");
  }

  // Distinct treatments of the order, in first-appearance order; rho maps
  // each position to the array row carrying its treatment.
  std::vector<int> distinct;
  std::vector<int> rho(k, -1);
  for (int p = 0; p < k; ++p) {
    int tr = pi_star.entries[p];
    auto it = std::find(distinct.begin(), distinct.end(), tr);
    if (it == distinct.end()) {
      distinct.push_back(tr);
      rho[p] = static_cast<int>(distinct.size()) - 1;
    } else {
      rho[p] = static_cast<int>(it - distinct.begin());
    }
  }

  // Relabel symbols so that column 1 of the array lines up with the order:
  // sigma(cells(r, 0)) = distinct[r], extended to a bijection on 1..v.
  const int v = sba.v;
  std::vector<int> sigma(v + 1, 0);
  std::vector<char> target_used(v + 1, 0);
  for (int r = 0; r < kstar; ++r) {
    sigma[sba.cells(r, 0)] = distinct[r];
    target_used[distinct[r]] = 1;
  }
  int next = 1;
  for (int s = 1; s <= v; ++s) {
    if (sigma[s] != 0) continue;
    while (target_used[next]) ++next;
    sigma[s] = next;
    target_used[next] = 1;
  }

  IntMatrix cells(k, sba.b);
  for (int p = 0; p < k; ++p)
    for (int j = 0; j < sba.b; ++j) cells(p, j) = sigma[sba.cells(rho[p], j)];
  return DesignArray(v, sba.b, k, std::move(cells));
}

OptimalDesignReport certify_maximin(const DesignArray& d, double lambda0,
                                    double lambda1) {
  d.validate();
  require_lambda_range(d.k, lambda0, lambda1);
  OptimalDesignReport rep;
  rep.design = d;
  rep.order = d.column_order(0);
  rep.kstar = rep.order.distinct_treatments();

  const Vector phi = phi_vector(d.k);
  Vector mphi = d.row_incidence().cast<double>() * phi;
  rep.m_phi_zero = mphi.cwiseAbs().maxCoeff() <= 1e-12;

  Eigen::VectorXi r = d.replication();
  long long rsq = 0;
  for (int i = 0; i < d.v; ++i) rsq += static_cast<long long>(r[i]) * r[i];
  const long long bk = static_cast<long long>(d.b) * d.k;
  rep.r_equal = rsq * d.v == bk * bk;

  Matrix cl = minimal_info_matrix(d, lambda0, lambda1);
  rep.cs_ok = is_completely_symmetric(cl, 1e-10);

  // trace decomposition: block term minus the two rank-one corrections
  const Matrix w = w_matrix(d.k, lambda0, lambda1);
  double term_block = 0.0;
  for (int j = 0; j < d.b; ++j) {
    Matrix x = d.unit_incidence(j);
    term_block += (x.transpose() * w * x).trace();
  }
  rep.certificate.term_block = term_block;
  rep.certificate.term_rr =
      (1.0 - d.k * lambda0) / static_cast<double>(bk) * static_cast<double>(rsq);
  rep.certificate.term_mphi = (1.0 - lambda1) / d.b * mphi.squaredNorm();
  rep.certificate.trace = rep.certificate.term_block - rep.certificate.term_rr -
                          rep.certificate.term_mphi;

  // direct trace against the order-level formula
  double f = order_objective(rep.order, lambda0, lambda1);
  double wdiag = d.k - d.k * lambda0 - lambda1;
  double expected = d.b * (wdiag + 2.0 * f) -
                    (1.0 - d.k * lambda0) * static_cast<double>(bk) / d.v;
  rep.trace_ok = rep.m_phi_zero && rep.r_equal &&
                 std::abs(cl.trace() - expected) <= 1e-9 * std::max(1.0, std::abs(expected));
  return rep;
}

OptimalDesignReport build_optimal_design(int v, int k, int b, double lambda0,
                                         double lambda1) {
  Order pi_star = optimal_order(v, k, lambda0, lambda1);
  int kstar = pi_star.distinct_treatments();
  SemibalancedArray sba = construct_sba(v, kstar, b);
  DesignArray d = assemble_design(pi_star, sba);
  return certify_maximin(d, lambda0, lambda1);
}

}  // namespace trendblocks
