#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bga/engine.hpp"
#include "bga/graph.hpp"
#include "bga/spectral.hpp"

namespace bga {

struct BiasEstimate {
  double mean_beta = 0.0;
  double std_error = 0.0;          ///< sample std deviation / sqrt(trials)
  int trials = 0;
  SimConfig config_echo;
  double hit_cap_fraction = 0.0;
  bool unreliable = false;         ///< more than 1% of trials hit the cap
  std::optional<double> x0_sample_var;  ///< set in shared-x0 mode
};

/// Monte Carlo estimate of the accumulated averaging error: runs cfg.trials
/// independent realizations and averages beta at the stopping time.
/// With cfg.resample_x0 == false the initial vector is drawn once from the
/// shared-init stream and reused across trials; `x0_override` forces an
/// explicit initial vector instead (test hook). `trial_dump`, when non-null,
/// receives the per-trial results ordered by trial index.
BiasEstimate estimate_bias(const Graph& g, const SimConfig& cfg,
                           const Eigen::VectorXd* x0_override = nullptr,
                           std::vector<TrialResult>* trial_dump = nullptr);

/// Exact conditional expectation of the next average increment given the
/// current state, by enumeration over all n broadcaster choices. Zero (up
/// to accumulation error) on balanced graphs.
double martingale_oracle(const StateVector& s, const Graph& g, double q);

struct VarianceOracle {
  double exact = 0.0;  ///< (1/n) * sum over v of average_increment(v)^2
  double bound = 0.0;  ///< 4 q^2 deg_max^2 d / n^2
};

/// Exact one-step variance of the average increment versus its closed-form
/// bound. Requires a balanced graph (the bound is only valid there).
VarianceOracle variance_oracle(const StateVector& s, const Graph& g, double q);

/// Uncalibrated asymptotic-bias bound shape (q/(1-q)) * deg_max^2 / (n*lambda1)
/// for a symmetric connected graph, q in (0,1).
double prop3_shape(const Graph& g, double q);

/// Same shape from precomputed quantities.
double prop3_shape_value(double q, int deg_max, int n, double lambda1);

/// Closed-form accumulated error on the complete graph:
/// sample_var_x0 * q/(2-q) * (n-1)/n, where sample_var_x0 is the unbiased
/// (divide by n-1) sample variance of the initial values.
double complete_graph_bias(double sample_var_x0, double q, int n);

/// Markov-style tail shape prop3_shape(g,q)/c for the probability that the
/// accumulated error exceeds c. Uncalibrated, like prop3_shape.
double tail_bound(const Graph& g, double q, double c);

/// Least-squares slope of log(mean_beta) against log(n). Needs at least
/// four points with distinct positive n and positive mean_beta.
double fit_scaling(const std::vector<std::pair<double, double>>& series);

/// Unbiased sample variance (divide by n-1).
double sample_variance(const Eigen::VectorXd& x);

/// Closed-form/theoretical quantities for one (graph, config) pair.
/// Spectral fields are absent for non-symmetric graphs; rate_bound and
/// prop3_shape are additionally absent at q = 1.
struct BoundReport {
  std::optional<SpectralSummary> spectral;
  double step_bound = 0.0;
  int deg_max = 0;
  std::optional<double> rate_bound;
  std::optional<double> prop3_shape;
  std::optional<double> complete_closed_form;

  /// Tail map c -> prop3_shape/c. Requires prop3_shape to be present.
  double tail(double c) const;
};

/// Assembles the report. `x0_sample_var` feeds the complete-graph closed
/// form; when absent, the expected variance L^2/12 of a uniform draw is
/// used. `precomputed` skips the eigensolve when the caller already has it.
BoundReport make_bound_report(const Graph& g, const SimConfig& cfg,
                              std::optional<double> x0_sample_var = std::nullopt,
                              std::optional<SpectralSummary> precomputed = std::nullopt);

}  // namespace bga
