#pragma once

#include <Eigen/Core>

#include "bga/graph.hpp"

namespace bga {

struct SpectralSummary {
  double lambda1 = 0.0;      ///< smallest nonzero Laplacian eigenvalue
  double lambda_max = 0.0;   ///< largest Laplacian eigenvalue (diagnostic)
  int multiplicity_zero = 0; ///< count of numerically zero eigenvalues
};

/// Out-degree Laplacian L = D_out - A. Row sums are exactly zero.
Eigen::MatrixXd laplacian(const Graph& g);

/// Dense symmetric eigendecomposition of laplacian(g). Eigenvalues below
/// tol*lambda_max are classified as zero; lambda1 is the smallest above
/// that cut. Throws UnsupportedGraph for non-symmetric graphs (complex
/// spectra are out of scope). Disconnected graphs are reported through
/// multiplicity_zero > 1, not as an error.
SpectralSummary spectral_gap(const Graph& g, double tol = 1e-9);

/// Contraction rate bound 1 - 2q(1-q)*lambda1/n for the disagreement decay
/// on a symmetric connected graph; always in (0,1) for valid inputs.
double rate_bound(const Graph& g, double q);

/// Same bound from precomputed quantities.
double rate_bound_value(double lambda1, int n, double q);

}  // namespace bga
