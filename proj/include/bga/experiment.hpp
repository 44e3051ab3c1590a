#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bga/analysis.hpp"
#include "bga/engine.hpp"
#include "bga/graph.hpp"

#include "json.hpp"

namespace bga {

enum class OutputFormat { kCsv, kJson };

/// One graph instance to simulate, by family name and parameters
/// (complete/ring/rgg: n; hypercube: dim; torus: dim+side;
/// debruijn: symbols+dim).
struct FamilySpec {
  std::string family;
  nlohmann::json params;
};

/// A full sweep: instances x mixing parameters, sharing one SimConfig.
struct ExperimentSpec {
  std::vector<FamilySpec> instances;
  std::vector<double> q_list;
  SimConfig base;                    ///< q field ignored; q_list drives it
  bool dump_trials = false;
  std::string dump_dir;
};

struct SweepRow {
  std::string family;
  int n = 0;
  double q = 0.0;
  BiasEstimate estimate;
  BoundReport bounds;
  int rgg_resamples = 0;  ///< disconnected draws discarded for this instance
};

/// Instantiates one FamilySpec. Random geometric instances draw from the
/// graph stream of `master_seed` and resample with fresh sub-seeds until
/// connected; the discard count is written to *resamples when non-null.
Graph make_family_instance(const FamilySpec& spec, std::uint64_t master_seed,
                           int* resamples = nullptr);

/// Runs the sweep: instances in order, q values in order. Deterministic
/// given the spec. Unresolved step caps (base.max_steps == 0) are derived
/// from the spectral gap where available.
std::vector<SweepRow> run_experiment(const ExperimentSpec& spec);

/// CSV with header N,q,family,mean_beta,std_error,prop3_shape,lambda1,deg_max.
/// Fields without a defined value (non-symmetric graph, q = 1) are empty.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Throws InvalidParameter unless every row has the right column count,
/// all non-empty cells parse as finite numbers and mean_beta >= 0.
void validate_sweep_csv(const std::string& csv);

/// One JSON object per (graph, config) pair with the full estimate and
/// bound report.
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

/// Named sweeps behind the figure-series presets; `base` supplies trials,
/// epsilon, seed and x0 mode.
ExperimentSpec preset_experiment(const std::string& name, SimConfig base);

}  // namespace bga
