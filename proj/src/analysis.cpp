#include "bga/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "bga/errors.hpp"
#include "bga/rng.hpp"

namespace bga {

namespace {

constexpr double kUnreliableCapFraction = 0.01;

int worker_count(int trials) {
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || trials < 32) return 1;
  return static_cast<int>(std::min<unsigned>(hw, trials));
}

}  // namespace

BiasEstimate estimate_bias(const Graph& g, const SimConfig& cfg,
                           const Eigen::VectorXd* x0_override,
                           std::vector<TrialResult>* trial_dump) {
  validate(cfg);
  if (!is_connected(g))
    throw InvalidParameter("estimate_bias: graph must be connected");

  std::optional<Eigen::VectorXd> shared_x0;
  if (x0_override) {
    if (x0_override->size() != g.n)
      throw InvalidParameter("estimate_bias: initial vector size mismatch");
    shared_x0 = *x0_override;
  } else if (!cfg.resample_x0) {
    shared_x0 = uniform_initial_state(
        g.n, cfg.L, derive_seed(cfg.master_seed, kInitStream, 0));
  }

  std::vector<TrialResult> results(cfg.trials);
  auto run_range = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      results[i] = shared_x0 ? run_trial(g, cfg, i, *shared_x0)
                             : run_trial(g, cfg, i);
  };
  const int workers = worker_count(cfg.trials);
  if (workers == 1) {
    run_range(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (cfg.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(cfg.trials, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // Aggregation in trial-index order: independent of thread scheduling.
  BiasEstimate est;
  est.trials = cfg.trials;
  est.config_echo = cfg;
  double sum = 0.0;
  int capped = 0;
  for (const TrialResult& r : results) {
    sum += r.beta;
    capped += r.hit_cap ? 1 : 0;
  }
  est.mean_beta = sum / cfg.trials;
  double sq = 0.0;
  for (const TrialResult& r : results) {
    const double d = r.beta - est.mean_beta;
    sq += d * d;
  }
  est.std_error = cfg.trials > 1
                      ? std::sqrt(sq / (cfg.trials - 1)) / std::sqrt(double(cfg.trials))
                      : 0.0;
  est.hit_cap_fraction = static_cast<double>(capped) / cfg.trials;
  est.unreliable = est.hit_cap_fraction > kUnreliableCapFraction;
  if (shared_x0) est.x0_sample_var = sample_variance(*shared_x0);
  if (trial_dump) *trial_dump = std::move(results);
  return est;
}

double martingale_oracle(const StateVector& s, const Graph& g, double q) {
  double acc = 0.0;
  for (int v = 0; v < g.n; ++v) acc += average_increment(s, g, v, q);
  return acc / g.n;
}

VarianceOracle variance_oracle(const StateVector& s, const Graph& g, double q) {
  if (!is_balanced(g))
    throw InvalidParameter("variance_oracle: graph must be balanced");
  VarianceOracle o;
  for (int v = 0; v < g.n; ++v) {
    const double inc = average_increment(s, g, v, q);
    o.exact += inc * inc;
  }
  o.exact /= g.n;
  // disagreement recomputed from the raw values, not the engine caches
  const double mean = s.values().mean();
  const double d =
      (s.values().array() - mean).square().sum() / s.size();
  const int deg_max = degree_stats(g).deg_max;
  o.bound = 4.0 * q * q * deg_max * deg_max * d / (double(g.n) * g.n);
  return o;
}

double prop3_shape_value(double q, int deg_max, int n, double lambda1) {
  if (q <= 0.0 || q >= 1.0)
    throw InvalidParameter("prop3_shape: q must be in (0,1)");
  if (n < 2 || deg_max < 1 || lambda1 <= 0.0)
    throw InvalidParameter("prop3_shape: invalid graph quantities");
  return q / (1.0 - q) * (double(deg_max) * deg_max) / (n * lambda1);
}

double prop3_shape(const Graph& g, double q) {
  if (q <= 0.0 || q >= 1.0)
    throw InvalidParameter("prop3_shape: q must be in (0,1)");
  const SpectralSummary s = spectral_gap(g);
  if (s.multiplicity_zero != 1)
    throw InvalidParameter("prop3_shape: graph is not connected");
  return prop3_shape_value(q, degree_stats(g).deg_max, g.n, s.lambda1);
}

double complete_graph_bias(double sample_var_x0, double q, int n) {
  if (q <= 0.0 || q > 1.0)
    throw InvalidParameter("complete_graph_bias: q must be in (0,1]");
  if (n < 2) throw InvalidParameter("complete_graph_bias: n must be >= 2");
  if (sample_var_x0 < 0.0)
    throw InvalidParameter("complete_graph_bias: variance must be >= 0");
  return sample_var_x0 * q / (2.0 - q) * (double(n) - 1.0) / n;
}

double tail_bound(const Graph& g, double q, double c) {
  if (c <= 0.0) throw InvalidParameter("tail_bound: c must be > 0");
  return prop3_shape(g, q) / c;
}

double fit_scaling(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 4)
    throw InvalidParameter("fit_scaling: need at least 4 points");
  std::vector<double> lx, ly;
  lx.reserve(series.size());
  ly.reserve(series.size());
  for (auto [n, beta] : series) {
    if (n <= 0.0 || beta <= 0.0)
      throw InvalidParameter("fit_scaling: points must be positive");
    lx.push_back(std::log(n));
    ly.push_back(std::log(beta));
  }
  for (std::size_t i = 0; i < series.size(); ++i)
    for (std::size_t j = i + 1; j < series.size(); ++j)
      if (series[i].first == series[j].first)
        throw InvalidParameter("fit_scaling: duplicate n");
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

double sample_variance(const Eigen::VectorXd& x) {
  if (x.size() < 2)
    throw InvalidParameter("sample_variance: need at least 2 values");
  const double mean = x.mean();
  return (x.array() - mean).square().sum() / (x.size() - 1);
}

double BoundReport::tail(double c) const {
  if (c <= 0.0) throw InvalidParameter("tail: c must be > 0");
  if (!prop3_shape)
    throw InvalidParameter("tail: shape unavailable for this graph/config");
  return *prop3_shape / c;
}

BoundReport make_bound_report(const Graph& g, const SimConfig& cfg,
                              std::optional<double> x0_sample_var,
                              std::optional<SpectralSummary> precomputed) {
  validate(cfg);
  BoundReport r;
  const DegreeStats deg = degree_stats(g);
  r.deg_max = deg.deg_max;
  r.step_bound = step_bound(g, cfg.q, cfg.L);
  if (precomputed) {
    r.spectral = precomputed;
  } else if (is_symmetric(g)) {
    r.spectral = spectral_gap(g);
  }
  if (r.spectral && r.spectral->multiplicity_zero == 1 && cfg.q < 1.0) {
    r.rate_bound = rate_bound_value(r.spectral->lambda1, g.n, cfg.q);
    r.prop3_shape = prop3_shape_value(cfg.q, deg.deg_max, g.n, r.spectral->lambda1);
  }
  if (g.family == "complete") {
    const double var = x0_sample_var.value_or(cfg.L * cfg.L / 12.0);
    r.complete_closed_form = complete_graph_bias(var, cfg.q, g.n);
  }
  return r;
}

}  // namespace bga
