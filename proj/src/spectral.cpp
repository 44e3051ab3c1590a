#include "bga/spectral.hpp"

#include <Eigen/Dense>

#include "bga/errors.hpp"

namespace bga {

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int v = 0; v < g.n; ++v) {
    L(v, v) = static_cast<double>(g.out_deg(v));
    for (int u : g.out_adj[v]) L(v, u) = -1.0;
  }
  return L;
}

SpectralSummary spectral_gap(const Graph& g, double tol) {
  if (tol <= 0) throw InvalidParameter("spectral_gap: tol must be > 0");
  if (!is_symmetric(g))
    throw UnsupportedGraph("spectral_gap: graph is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g),
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  SpectralSummary s;
  s.lambda_max = std::max(0.0, ev(g.n - 1));
  const double zero_cut = tol * s.lambda_max;
  int zeros = 0;
  while (zeros < g.n && ev(zeros) <= zero_cut) ++zeros;
  s.multiplicity_zero = zeros;
  s.lambda1 = zeros < g.n ? ev(zeros) : 0.0;
  return s;
}

double rate_bound_value(double lambda1, int n, double q) {
  if (q <= 0.0 || q >= 1.0)
    throw InvalidParameter("rate_bound: q must be in (0,1)");
  if (n < 2 || lambda1 <= 0.0)
    throw InvalidParameter("rate_bound: needs n >= 2 and lambda1 > 0");
  return 1.0 - 2.0 * q * (1.0 - q) * lambda1 / n;
}

double rate_bound(const Graph& g, double q) {
  if (q <= 0.0 || q >= 1.0)
    throw InvalidParameter("rate_bound: q must be in (0,1)");
  const SpectralSummary s = spectral_gap(g);
  if (s.multiplicity_zero != 1)
    throw InvalidParameter("rate_bound: graph is not connected");
  return rate_bound_value(s.lambda1, g.n, q);
}

}  // namespace bga
