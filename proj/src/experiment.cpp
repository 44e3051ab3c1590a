#include "bga/experiment.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bga/errors.hpp"
#include "bga/io.hpp"
#include "bga/rng.hpp"

namespace bga {

namespace {

constexpr int kMaxRggResamples = 10000;

int require_int(const nlohmann::json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_number_integer())
    throw InvalidParameter(std::string("family params: missing integer '") +
                           key + "'");
  return params[key].get<int>();
}

std::string dump_file_name(const SweepRow& row) {
  return "trials_" + row.family + "_n" + std::to_string(row.n) + "_q" +
         format_double(row.q) + ".csv";
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& cell, const char* what) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    throw InvalidParameter(std::string("sweep csv: bad ") + what + " cell '" +
                           cell + "'");
  return value;
}

}  // namespace

Graph make_family_instance(const FamilySpec& spec, std::uint64_t master_seed,
                           int* resamples) {
  if (resamples) *resamples = 0;
  if (spec.family == "complete") return complete(require_int(spec.params, "n"));
  if (spec.family == "ring") return ring(require_int(spec.params, "n"));
  if (spec.family == "torus")
    return torus_lattice(require_int(spec.params, "dim"),
                         require_int(spec.params, "side"));
  if (spec.family == "hypercube") return hypercube(require_int(spec.params, "dim"));
  if (spec.family == "debruijn")
    return de_bruijn(require_int(spec.params, "symbols"),
                     require_int(spec.params, "dim"));
  if (spec.family == "rgg") {
    const int n = require_int(spec.params, "n");
    for (int attempt = 0; attempt < kMaxRggResamples; ++attempt) {
      const std::uint64_t sub_seed = derive_seed(
          master_seed, kGraphStream,
          (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(attempt));
      Graph g = random_geometric(n, sub_seed);
      if (is_connected(g)) {
        if (resamples) *resamples = attempt;
        return g;
      }
    }
    throw InvalidParameter("rgg: no connected sample within resample budget");
  }
  throw InvalidParameter("unknown family: " + spec.family);
}

std::vector<SweepRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.instances.empty() || spec.q_list.empty())
    throw InvalidParameter("experiment: needs at least one instance and one q");
  if (spec.dump_trials) std::filesystem::create_directories(spec.dump_dir);
  std::vector<SweepRow> rows;
  rows.reserve(spec.instances.size() * spec.q_list.size());
  for (const FamilySpec& inst : spec.instances) {
    int resamples = 0;
    const Graph g = make_family_instance(inst, spec.base.master_seed, &resamples);
    std::optional<SpectralSummary> spectral;
    if (is_symmetric(g)) spectral = spectral_gap(g);
    const bool spectral_connected =
        spectral && spectral->multiplicity_zero == 1;
    for (double q : spec.q_list) {
      SimConfig cfg = spec.base;
      cfg.q = q;
      if (cfg.max_steps == 0)
        cfg.max_steps = default_max_steps(
            g.n, q, spectral_connected ? spectral->lambda1 : 0.0);
      SweepRow row;
      row.family = g.family;
      row.n = g.n;
      row.q = q;
      row.rgg_resamples = resamples;
      std::vector<TrialResult> trials;
      row.estimate = estimate_bias(g, cfg, nullptr,
                                   spec.dump_trials ? &trials : nullptr);
      row.bounds = make_bound_report(g, cfg, row.estimate.x0_sample_var, spectral);
      if (spec.dump_trials) {
        std::ofstream out(spec.dump_dir + "/" + dump_file_name(row));
        if (!out)
          throw std::runtime_error("cannot open trial dump in " + spec.dump_dir);
        write_trial_csv(out, trials);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "N,q,family,mean_beta,std_error,prop3_shape,lambda1,deg_max\n";
  for (const SweepRow& r : rows) {
    out << r.n << ',' << format_double(r.q) << ',' << r.family << ','
        << format_double(r.estimate.mean_beta) << ','
        << format_double(r.estimate.std_error) << ',';
    if (r.bounds.prop3_shape) out << format_double(*r.bounds.prop3_shape);
    out << ',';
    if (r.bounds.spectral) out << format_double(r.bounds.spectral->lambda1);
    out << ',' << r.bounds.deg_max << '\n';
  }
  std::string csv = out.str();
  validate_sweep_csv(csv);
  return csv;
}

void validate_sweep_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) ||
      line != "N,q,family,mean_beta,std_error,prop3_shape,lambda1,deg_max")
    throw InvalidParameter("sweep csv: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 8)
      throw InvalidParameter("sweep csv: expected 8 columns");
    parse_cell(cells[0], "N");
    parse_cell(cells[1], "q");
    if (cells[2].empty()) throw InvalidParameter("sweep csv: empty family");
    if (parse_cell(cells[3], "mean_beta") < 0.0)
      throw InvalidParameter("sweep csv: negative mean_beta");
    parse_cell(cells[4], "std_error");
    if (!cells[5].empty()) parse_cell(cells[5], "prop3_shape");
    if (!cells[6].empty()) parse_cell(cells[6], "lambda1");
    parse_cell(cells[7], "deg_max");
  }
}

namespace {

nlohmann::json config_json(const SimConfig& cfg) {
  return {{"q", cfg.q},          {"epsilon", cfg.epsilon},
          {"L", cfg.L},          {"max_steps", cfg.max_steps},
          {"master_seed", cfg.master_seed}, {"trials", cfg.trials},
          {"resample_x0", cfg.resample_x0}};
}

}  // namespace

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows) {
    nlohmann::json estimate = {
        {"mean_beta", r.estimate.mean_beta},
        {"std_error", r.estimate.std_error},
        {"trials", r.estimate.trials},
        {"hit_cap_fraction", r.estimate.hit_cap_fraction},
        {"unreliable", r.estimate.unreliable}};
    if (r.estimate.x0_sample_var)
      estimate["x0_sample_var"] = *r.estimate.x0_sample_var;
    nlohmann::json bounds = {{"step_bound", r.bounds.step_bound},
                             {"deg_max", r.bounds.deg_max}};
    if (r.bounds.spectral) {
      bounds["lambda1"] = r.bounds.spectral->lambda1;
      bounds["lambda_max"] = r.bounds.spectral->lambda_max;
      bounds["multiplicity_zero"] = r.bounds.spectral->multiplicity_zero;
    }
    if (r.bounds.rate_bound) bounds["rate_bound"] = *r.bounds.rate_bound;
    if (r.bounds.prop3_shape) {
      bounds["prop3_shape"] = *r.bounds.prop3_shape;
      bounds["tail_at_inv_n"] = r.bounds.tail(1.0 / r.n);
    }
    if (r.bounds.complete_closed_form)
      bounds["complete_closed_form"] = *r.bounds.complete_closed_form;
    arr.push_back({{"graph", {{"family", r.family}, {"n", r.n}}},
                   {"config", config_json(r.estimate.config_echo)},
                   {"estimate", std::move(estimate)},
                   {"bounds", std::move(bounds)},
                   {"rgg_resamples", r.rgg_resamples}});
  }
  return arr;
}

namespace {

FamilySpec sized(const std::string& family, const nlohmann::json& params) {
  return FamilySpec{family, params};
}

void append_ns(std::vector<FamilySpec>& out, const std::string& family,
               const std::vector<int>& ns) {
  for (int n : ns) out.push_back(sized(family, {{"n", n}}));
}

void append_dims(std::vector<FamilySpec>& out, const std::string& family,
                 const std::vector<int>& dims) {
  for (int d : dims) out.push_back(sized(family, {{"dim", d}}));
}

void append_debruijn2(std::vector<FamilySpec>& out, const std::vector<int>& dims) {
  for (int d : dims) out.push_back(sized("debruijn", {{"symbols", 2}, {"dim", d}}));
}

void append_tori(std::vector<FamilySpec>& out, const std::vector<int>& sides) {
  for (int s : sides) out.push_back(sized("torus", {{"dim", 2}, {"side", s}}));
}

}  // namespace

ExperimentSpec preset_experiment(const std::string& name, SimConfig base) {
  ExperimentSpec spec;
  spec.base = base;
  if (name == "fig1") {
    // bias vs N at q = 0.5, one series per family
    spec.q_list = {0.5};
    append_ns(spec.instances, "ring", {16, 32, 64, 128, 256});
    append_tori(spec.instances, {4, 6, 8, 12, 16});
    append_dims(spec.instances, "hypercube", {4, 5, 6, 7, 8, 9, 10});
    append_debruijn2(spec.instances, {4, 5, 6, 7, 8, 9, 10});
    append_ns(spec.instances, "rgg", {16, 32, 64, 128, 256});
    append_ns(spec.instances, "complete", {16, 32, 64, 128, 256, 512, 1024});
    return spec;
  }
  if (name == "fig2") {
    // bias vs N on de Bruijn graphs over 2 symbols, one series per q;
    // the q = 1 series sits against the 1/12 reference value
    spec.q_list = {0.2, 0.5, 0.8, 1.0};
    append_debruijn2(spec.instances, {4, 5, 6, 7, 8, 9, 10});
    return spec;
  }
  if (name == "fig3") {
    // bias vs q at N = 64; the complete-graph series pairs with its
    // closed form (complete_closed_form in the json output)
    spec.q_list = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    spec.instances.push_back(sized("complete", {{"n", 64}}));
    spec.instances.push_back(sized("hypercube", {{"dim", 6}}));
    spec.instances.push_back(sized("torus", {{"dim", 2}, {"side", 8}}));
    spec.instances.push_back(sized("ring", {{"n", 64}}));
    append_debruijn2(spec.instances, {6});
    return spec;
  }
  throw InvalidParameter("unknown preset: " + name);
}

}  // namespace bga
