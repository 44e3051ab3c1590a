#include "bga/engine.hpp"

#include <cassert>
#include <cmath>
#include <utility>

#include "bga/errors.hpp"
#include "bga/rng.hpp"

namespace bga {

void validate(const SimConfig& cfg) {
  if (!(cfg.q > 0.0 && cfg.q <= 1.0))
    throw InvalidParameter("config: q must be in (0,1]");
  if (!(cfg.epsilon > 0.0))
    throw InvalidParameter("config: epsilon must be > 0");
  if (!(cfg.L > 0.0)) throw InvalidParameter("config: L must be > 0");
  if (cfg.trials < 1) throw InvalidParameter("config: trials must be >= 1");
}

std::uint64_t default_max_steps(int n, double q, double lambda1) {
  if (lambda1 <= 0.0 || q <= 0.0 || q >= 1.0) return kFallbackMaxSteps;
  const double per_step = 2.0 * q * (1.0 - q) * lambda1 / n;
  return 500ull * static_cast<std::uint64_t>(n) *
         static_cast<std::uint64_t>(std::ceil(1.0 / per_step));
}

StateVector::StateVector(Eigen::VectorXd values) : x_(std::move(values)) {
  assert(x_.size() > 0);
  rebase();
}

void StateVector::rebase() {
  sum_ = x_.sum();
  sum_sq_ = x_.squaredNorm();
  steps_since_rebase_ = 0;
}

double StateVector::sq_deviation() const {
  const double dev = sum_sq_ - sum_ * sum_ / size();
  return dev > 0.0 ? dev : 0.0;
}

double disagreement(const StateVector& s) {
  return s.sq_deviation() / s.size();
}

double broadcast_step(StateVector& s, const Graph& g, int v, double q) {
  assert(v >= 0 && v < g.n);
  assert(q > 0.0 && q <= 1.0);
  const double xv = s.x_(v);
  const double keep = 1.0 - q;
  double dsum = 0.0;
  double dsum_sq = 0.0;
  for (int u : g.out_adj[v]) {
    const double old = s.x_(u);
    const double neu = keep * old + q * xv;
    dsum += neu - old;
    dsum_sq += neu * neu - old * old;
    s.x_(u) = neu;
  }
  s.sum_ += dsum;
  s.sum_sq_ += dsum_sq;
  if (++s.steps_since_rebase_ >= kCacheRebaseInterval) s.rebase();
  return dsum / s.size();
}

double average_increment(const StateVector& s, const Graph& g, int v,
                         double q) {
  assert(v >= 0 && v < g.n);
  const double xv = s.value(v);
  double acc = 0.0;
  for (int u : g.out_adj[v]) acc += xv - s.value(u);
  return q / s.size() * acc;
}

double step_bound(const Graph& g, double q, double L) {
  int deg_plus_max = 0;
  for (int v = 0; v < g.n; ++v) deg_plus_max = std::max(deg_plus_max, g.out_deg(v));
  return q * deg_plus_max * L / g.n;
}

Eigen::VectorXd uniform_initial_state(int n, double L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, L);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = unif(rng);
  return x;
}

namespace {

TrialResult run_trial_impl(const Graph& g, const SimConfig& cfg,
                           std::mt19937_64 rng, StateVector state) {
  const std::uint64_t cap = cfg.max_steps ? cfg.max_steps : kFallbackMaxSteps;
  std::uniform_int_distribution<int> pick(0, g.n - 1);
  const double avg0 = state.average();
  TrialResult result;
  std::uint64_t t = 0;
  bool converged = disagreement(state) <= cfg.epsilon;
  while (!converged && t < cap) {
    const double inc = broadcast_step(state, g, pick(rng), cfg.q);
    result.max_step_increment =
        std::max(result.max_step_increment, std::abs(inc));
    ++t;
    converged = disagreement(state) <= cfg.epsilon;
  }
  state.rebase();
  const double drift = state.average() - avg0;
  result.beta = drift * drift;
  result.stop_time = t;
  result.hit_cap = !converged;
  result.final_disagreement = disagreement(state);
  return result;
}

}  // namespace

TrialResult run_trial(const Graph& g, const SimConfig& cfg, int trial_index) {
  validate(cfg);
  std::mt19937_64 rng =
      make_rng(cfg.master_seed, kTrialStream, static_cast<std::uint64_t>(trial_index));
  std::uniform_real_distribution<double> unif(0.0, cfg.L);
  Eigen::VectorXd x0(g.n);
  for (int i = 0; i < g.n; ++i) x0(i) = unif(rng);
  return run_trial_impl(g, cfg, std::move(rng), StateVector(std::move(x0)));
}

TrialResult run_trial(const Graph& g, const SimConfig& cfg, int trial_index,
                      const Eigen::VectorXd& x0) {
  validate(cfg);
  if (x0.size() != g.n)
    throw InvalidParameter("run_trial: initial vector size mismatch");
  std::mt19937_64 rng =
      make_rng(cfg.master_seed, kTrialStream, static_cast<std::uint64_t>(trial_index));
  return run_trial_impl(g, cfg, std::move(rng), StateVector(x0));
}

}  // namespace bga
