#pragma once

#include "pspin/dynamics.hpp"
#include "pspin/records.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pspin::cli {

/// Resolved batch-run parameters. Populated from a key=value config file,
/// then overridden by command-line flags; the result is echoed verbatim into
/// every output file.
struct ExperimentConfig {
  std::string command;

  int n = 10;
  int p = 3;
  std::string variant = "uniform";  // uniform | finite_range | random
  double nu = 0.0;
  double pj = 1.0;
  std::uint64_t seed = 0;

  std::string ansatz = "none";  // none | nc | ca | exact
  int order = 1;
  double eta = 0.0;

  double total_time = 1.0;
  double dt = 1e-3;
  int stride = 10;
  bool cache = false;

  int instances = 100;
  std::uint64_t seed0 = 0;
  int bins = 100;
  double hist_lo = 0.0;
  double hist_hi = 1.0;
  bool gaps = false;

  std::vector<int> sizes;
  std::vector<int> orders;
  std::vector<double> nus;
  int lambda_points = 101;

  int jobs = 1;
  std::string out = "run";
  std::string fit_input;

  void validate() const;  // throws std::invalid_argument

  ModelSpec model_spec() const;
  AnsatzSpec ansatz_spec() const;
  ConfigEcho echo() const;
};

/// "a,b,c" or inclusive "a:b".
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::string join(const std::vector<int>& v);
std::string join(const std::vector<double>& v);

/// key=value lines, '#' comments. Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace pspin::cli
