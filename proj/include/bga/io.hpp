#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bga/engine.hpp"
#include "bga/graph.hpp"

namespace bga {

/// Shortest round-trip decimal representation (std::to_chars); locale-free,
/// byte-stable across runs.
std::string format_double(double value);

void save_graph(const Graph& g, const std::string& path);
Graph load_graph(const std::string& path);

/// Per-trial CSV: header beta,stop_time,hit_cap,max_step_increment and one
/// row per trial, in trial-index order.
void write_trial_csv(std::ostream& out, const std::vector<TrialResult>& trials);

}  // namespace bga
