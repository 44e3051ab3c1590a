#include "bga/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "bga/errors.hpp"

namespace bga {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_json(g).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open graph file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter("graph file is not valid json: " + std::string(e.what()));
  }
  return graph_from_json(doc);
}

void write_trial_csv(std::ostream& out, const std::vector<TrialResult>& trials) {
  out << "beta,stop_time,hit_cap,max_step_increment\n";
  for (const TrialResult& t : trials) {
    out << format_double(t.beta) << ',' << t.stop_time << ','
        << (t.hit_cap ? 1 : 0) << ',' << format_double(t.max_step_increment)
        << '\n';
  }
}

}  // namespace bga
