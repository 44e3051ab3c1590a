#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bga/analysis.hpp"
#include "bga/engine.hpp"
#include "bga/errors.hpp"
#include "bga/experiment.hpp"
#include "bga/graph.hpp"
#include "bga/io.hpp"
#include "bga/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitUnreliable = 3;
constexpr int kExitDisconnected = 4;

struct FamilyFlags {
  std::string family;
  std::vector<int> n_list;
  std::vector<int> dim_list;
  std::vector<int> side_list;
  int symbols = 2;
  int torus_dim = 2;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f, bool sweep) {
  cmd->add_option("--family", f.family,
                  "complete | ring | torus | hypercube | debruijn | rgg")
      ->required();
  const char* many = sweep ? " (repeatable for sweeps)" : "";
  cmd->add_option("--n", f.n_list,
                  std::string("node count for complete/ring/rgg") + many);
  cmd->add_option("--dim", f.dim_list,
                  std::string("dimension for hypercube/debruijn") + many);
  cmd->add_option("--side", f.side_list,
                  std::string("torus nodes per axis") + many);
  cmd->add_option("--symbols", f.symbols, "de Bruijn symbol count")
      ->default_val(2);
  cmd->add_option("--torus-dim", f.torus_dim, "torus lattice dimension")
      ->default_val(2);
}

std::vector<bga::FamilySpec> expand_family(const FamilyFlags& f) {
  std::vector<bga::FamilySpec> out;
  auto need = [&](const std::vector<int>& list, const char* flag) -> const std::vector<int>& {
    if (list.empty())
      throw bga::InvalidParameter(std::string("family '") + f.family +
                                  "' needs " + flag);
    return list;
  };
  if (f.family == "complete" || f.family == "ring" || f.family == "rgg") {
    for (int n : need(f.n_list, "--n"))
      out.push_back({f.family, {{"n", n}}});
  } else if (f.family == "hypercube") {
    for (int d : need(f.dim_list, "--dim"))
      out.push_back({f.family, {{"dim", d}}});
  } else if (f.family == "debruijn") {
    for (int d : need(f.dim_list, "--dim"))
      out.push_back({f.family, {{"symbols", f.symbols}, {"dim", d}}});
  } else if (f.family == "torus") {
    for (int s : need(f.side_list, "--side"))
      out.push_back({f.family, {{"dim", f.torus_dim}, {"side", s}}});
  } else {
    throw bga::InvalidParameter("unknown family: " + f.family);
  }
  return out;
}

void print_graph_summary(const bga::Graph& g) {
  const bga::DegreeStats deg = bga::degree_stats(g);
  std::cout << "family=" << g.family << " n=" << g.n
            << " edges=" << g.edge_count() << "\n"
            << "deg_plus_max=" << deg.deg_plus_max
            << " deg_minus_max=" << deg.deg_minus_max
            << " deg_max=" << deg.deg_max << "\n"
            << "balanced=" << (bga::is_balanced(g) ? "true" : "false")
            << " symmetric=" << (bga::is_symmetric(g) ? "true" : "false")
            << " connected=" << (bga::is_connected(g) ? "true" : "false")
            << "\n";
}

int cmd_generate(const FamilyFlags& flags, std::uint64_t seed,
                 const std::string& out_path) {
  auto specs = expand_family(flags);
  if (specs.size() != 1)
    throw bga::InvalidParameter("generate takes exactly one instance");
  bga::Graph g;
  if (flags.family == "rgg") {
    // single draw; disconnected samples are reported, not repaired
    g = bga::random_geometric(specs[0].params["n"].get<int>(), seed);
  } else {
    g = bga::make_family_instance(specs[0], seed);
  }
  print_graph_summary(g);
  if (!out_path.empty()) {
    bga::save_graph(g, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  if (!bga::is_connected(g)) return kExitDisconnected;
  return kExitOk;
}

int cmd_spectral(const std::optional<FamilyFlags>& flags,
                 const std::string& graph_path, const std::vector<double>& qs,
                 std::uint64_t seed, const std::string& out_path) {
  bga::Graph g;
  if (!graph_path.empty()) {
    g = bga::load_graph(graph_path);
  } else if (flags && !flags->family.empty()) {
    auto specs = expand_family(*flags);
    if (specs.size() != 1)
      throw bga::InvalidParameter("spectral takes exactly one instance");
    g = bga::make_family_instance(specs[0], seed);
  } else {
    throw bga::InvalidParameter("spectral needs --graph or --family");
  }
  if (!bga::is_symmetric(g)) {
    std::cerr << "error: spectral quantities are only defined for symmetric "
                 "graphs (family="
              << g.family << ")\n";
    return kExitInvalidInput;
  }
  const bga::SpectralSummary s = bga::spectral_gap(g);
  std::cout << "family=" << g.family << " n=" << g.n
            << " lambda1=" << bga::format_double(s.lambda1)
            << " lambda_max=" << bga::format_double(s.lambda_max)
            << " multiplicity_zero=" << s.multiplicity_zero << "\n";
  nlohmann::json doc = {{"family", g.family},
                        {"n", g.n},
                        {"lambda1", s.lambda1},
                        {"lambda_max", s.lambda_max},
                        {"multiplicity_zero", s.multiplicity_zero},
                        {"rate_bound", nlohmann::json::object()}};
  for (double q : qs) {
    const double r = bga::rate_bound_value(s.lambda1, g.n, q);
    std::cout << "q=" << bga::format_double(q)
              << " rate_bound=" << bga::format_double(r) << "\n";
    doc["rate_bound"][bga::format_double(q)] = r;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << doc.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const std::string& preset, const FamilyFlags& flags,
                 bga::ExperimentSpec spec, const std::string& out_path,
                 const std::string& format) {
  if (!preset.empty()) {
    bga::ExperimentSpec p = bga::preset_experiment(preset, spec.base);
    p.dump_trials = spec.dump_trials;
    p.dump_dir = spec.dump_dir;
    spec = std::move(p);
  } else {
    if (flags.family.empty())
      throw bga::InvalidParameter("simulate needs --preset or --family");
    spec.instances = expand_family(flags);
    if (spec.q_list.empty()) spec.q_list = {0.5};
  }
  const auto rows = bga::run_experiment(spec);

  bool any_unreliable = false;
  int total_resamples = 0;
  for (const auto& row : rows) {
    std::cout << "family=" << row.family << " n=" << row.n
              << " q=" << bga::format_double(row.q)
              << " mean_beta=" << bga::format_double(row.estimate.mean_beta)
              << " std_error=" << bga::format_double(row.estimate.std_error);
    if (row.estimate.unreliable) std::cout << " UNRELIABLE";
    std::cout << "\n";
    any_unreliable = any_unreliable || row.estimate.unreliable;
    total_resamples += row.rgg_resamples;
  }
  if (total_resamples > 0)
    std::cout << "rgg disconnected samples discarded: " << total_resamples
              << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    if (format == "json")
      out << bga::sweep_json(rows).dump(2) << '\n';
    else
      out << bga::sweep_csv(rows);
    std::cout << "wrote " << out_path << "\n";
  }
  return any_unreliable ? kExitUnreliable : kExitOk;
}

int cmd_fit(const std::string& in_path, const std::string& family) {
  std::ifstream in(in_path);
  if (!in) throw bga::InvalidParameter("cannot open " + in_path);
  std::string header;
  if (!std::getline(in, header) ||
      header != "N,q,family,mean_beta,std_error,prop3_shape,lambda1,deg_max")
    throw bga::InvalidParameter("fit: unrecognized csv header");
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    cells.push_back(cur);
    if (cells.size() != 8) throw bga::InvalidParameter("fit: bad csv row");
    if (!family.empty() && cells[2] != family) continue;
    series[cells[2]].emplace_back(std::stod(cells[0]), std::stod(cells[3]));
  }
  if (series.empty())
    throw bga::InvalidParameter("fit: no matching rows in " + in_path);
  for (const auto& [fam, points] : series) {
    const double exponent = bga::fit_scaling(points);
    std::cout << "family=" << fam << " points=" << points.size()
              << " exponent=" << bga::format_double(exponent) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broadcast gossip averaging: graphs, spectra, bias sweeps"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "build a graph and write it as json");
  FamilyFlags gen_flags;
  add_family_flags(gen, gen_flags, false);
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--seed", gen_seed, "sample seed (rgg)");
  gen->add_option("--out", gen_out, "output graph json path");

  // spectral
  auto* spect = app.add_subcommand("spectral", "spectral gap and rate bound");
  FamilyFlags spect_flags;
  add_family_flags(spect, spect_flags, false);
  spect->get_option("--family")->required(false);
  std::string spect_graph, spect_out;
  std::vector<double> spect_q;
  std::uint64_t spect_seed = 0;
  spect->add_option("--graph", spect_graph, "graph json file");
  spect->add_option("--q", spect_q, "mixing parameter (repeatable)");
  spect->add_option("--seed", spect_seed, "sample seed (rgg)");
  spect->add_option("--out", spect_out, "output json path");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a bias sweep");
  FamilyFlags sim_flags;
  add_family_flags(sim, sim_flags, true);
  sim->get_option("--family")->required(false);
  bga::ExperimentSpec sim_spec;
  std::string sim_preset, sim_out, sim_format = "csv";
  sim->add_option("--preset", sim_preset, "fig1 | fig2 | fig3");
  sim->add_option("--q", sim_spec.q_list, "mixing parameter (repeatable)");
  sim->add_option("--trials", sim_spec.base.trials, "realizations per point")
      ->default_val(1000);
  sim->add_option("--epsilon", sim_spec.base.epsilon, "stopping threshold")
      ->default_val(1e-4);
  sim->add_option("--seed", sim_spec.base.master_seed, "master seed")
      ->default_val(0);
  sim->add_option("--max-steps", sim_spec.base.max_steps,
                  "step cap (0 = auto from the spectral gap)")
      ->default_val(0);
  sim->add_option("--resample-x0", sim_spec.base.resample_x0,
                  "true: fresh x(0) per trial; false: one shared draw")
      ->default_val(true);
  sim->add_option("--out", sim_out, "output series path");
  sim->add_option("--format", sim_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");
  std::string sim_dump;
  sim->add_option("--dump-trials", sim_dump,
                  "directory for per-trial csv dumps");

  // fit
  auto* fit = app.add_subcommand("fit", "log-log scaling exponent from a sweep csv");
  std::string fit_in, fit_family;
  fit->add_option("--in", fit_in, "sweep csv path")->required();
  fit->add_option("--family", fit_family, "restrict to one family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_flags, gen_seed, gen_out);
    if (spect->parsed())
      return cmd_spectral(spect_flags, spect_graph, spect_q, spect_seed,
                          spect_out);
    if (sim->parsed()) {
      sim_spec.dump_trials = !sim_dump.empty();
      sim_spec.dump_dir = sim_dump;
      return cmd_simulate(sim_preset, sim_flags, sim_spec, sim_out, sim_format);
    }
    if (fit->parsed()) return cmd_fit(fit_in, fit_family);
  } catch (const bga::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const bga::UnsupportedGraph& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
