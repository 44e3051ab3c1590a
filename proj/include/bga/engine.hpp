#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "bga/graph.hpp"

namespace bga {

/// Step cap used when no spectral information is available.
inline constexpr std::uint64_t kFallbackMaxSteps = 10'000'000;

/// Cached running sums are recomputed from scratch this often to bound
/// floating-point drift.
inline constexpr int kCacheRebaseInterval = 4096;

struct SimConfig {
  double q = 0.5;                 ///< mixing parameter, (0,1]
  double epsilon = 1e-4;          ///< stopping threshold on the disagreement
  double L = 1.0;                 ///< initial values drawn uniformly on [0,L]
  std::uint64_t max_steps = 0;    ///< 0 = auto (see default_max_steps)
  std::uint64_t master_seed = 0;
  int trials = 1000;
  bool resample_x0 = true;        ///< fresh initial vector per trial
};

/// Throws InvalidParameter if the configuration is outside its domain.
void validate(const SimConfig& cfg);

/// Default step cap: 500*n*ceil(1/(2q(1-q)*lambda1/n)) when the spectral
/// gap is known and q < 1, else kFallbackMaxSteps. Pass lambda1 <= 0 for
/// "unknown".
std::uint64_t default_max_steps(int n, double q, double lambda1);

/// Node values plus running sums for O(1) average and disagreement reads.
/// The sums are rebased from the raw values every kCacheRebaseInterval
/// broadcast steps.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXd values);

  int size() const { return static_cast<int>(x_.size()); }
  const Eigen::VectorXd& values() const { return x_; }
  double value(int v) const { return x_(v); }
  double average() const { return sum_ / size(); }

  /// Sum of squared deviations from the current average, clamped at 0.
  double sq_deviation() const;

  /// Recomputes the cached sums from the raw values.
  void rebase();

 private:
  friend double broadcast_step(StateVector&, const Graph&, int, double);

  Eigen::VectorXd x_;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
  int steps_since_rebase_ = 0;
};

/// Mean squared deviation of node values from their average.
double disagreement(const StateVector& s);

/// One broadcast from node v: every out-neighbor u moves to
/// (1-q)*x_u + q*x_v; all other nodes (v included) are unchanged.
/// Returns the realized change of the average.
double broadcast_step(StateVector& s, const Graph& g, int v, double q);

/// Change of the average that broadcast_step(s, g, v, q) would cause:
/// (q/n) * sum over out-neighbors u of (x_v - x_u).
double average_increment(const StateVector& s, const Graph& g, int v, double q);

/// Deterministic per-step cap on the average change: q * deg_plus_max * L / n.
double step_bound(const Graph& g, double q, double L);

struct TrialResult {
  double beta = 0.0;                 ///< squared drift of the average at stop
  std::uint64_t stop_time = 0;       ///< first t with d(t) <= epsilon (or cap)
  bool hit_cap = false;              ///< stopped by max_steps, not epsilon
  double max_step_increment = 0.0;   ///< largest |average change| observed
  double final_disagreement = 0.0;   ///< d at stop, recomputed from scratch
};

/// Runs one realization: initial values i.i.d. uniform on [0,L] from the
/// trial's derived stream, then one uniformly random broadcaster per step
/// until the disagreement falls to epsilon or the step cap is reached.
/// Deterministic given (master_seed, trial_index).
TrialResult run_trial(const Graph& g, const SimConfig& cfg, int trial_index);

/// Same, but with a caller-supplied initial vector (shared-x0 mode and the
/// test hook). The trial stream is then used for broadcaster draws only.
TrialResult run_trial(const Graph& g, const SimConfig& cfg, int trial_index,
                      const Eigen::VectorXd& x0);

/// n values i.i.d. uniform on [0,L] from the given stream seed.
Eigen::VectorXd uniform_initial_state(int n, double L, std::uint64_t seed);

}  // namespace bga
