#include "commands.hpp"

#include "pspin/experiments.hpp"

#include <CLI11.hpp>
#include <Eigen/Dense>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace pspin::cli {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file " + path);
  return os;
}

std::vector<double> lambda_grid(int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = double(i) / (points - 1);
  return grid;
}

PropagateOptions propagate_options(const ExperimentConfig& cfg) {
  PropagateOptions opts;
  opts.output_stride = cfg.stride;
  opts.coefficient_cache = cfg.cache;
  return opts;
}

void write_summary_file(const ExperimentConfig& cfg,
                        const std::vector<RunRecord>& runs,
                        const std::vector<std::optional<double>>& gaps) {
  auto os = open_output(cfg.out + "_summary.csv");
  write_config_echo(os, cfg.echo());
  write_summary_header(os);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    write_summary_row(os, runs[i], i < gaps.size() ? gaps[i] : std::nullopt);
  }
}

void write_traj_file(const std::string& path, const ExperimentConfig& cfg,
                     const RunRecord& rec) {
  auto os = open_output(path);
  write_config_echo(os, cfg.echo());
  write_trajectory(os, rec);
}

int cmd_anneal(const ExperimentConfig& cfg) {
  const ModelSpec spec = cfg.model_spec();
  RunRecord rec = propagate(spec, cfg.ansatz_spec(), Schedule{cfg.total_time},
                            cfg.dt, propagate_options(cfg));
  std::vector<std::optional<double>> gaps;
  if (cfg.gaps) gaps.push_back(minimal_gap(spec, lambda_grid(cfg.lambda_points)).gap);
  write_traj_file(cfg.out + "_traj.csv", cfg, rec);
  write_summary_file(cfg, {rec}, gaps);
  std::cout << "F=" << format_number(rec.fidelity) << "\n";
  return 0;
}

int cmd_sweep_size(const ExperimentConfig& cfg) {
  const ModelSpec tmpl = cfg.model_spec();
  const AnsatzSpec ansatz = cfg.ansatz_spec();
  std::vector<RunRecord> runs(cfg.sizes.size());
  parallel_for(cfg.jobs, static_cast<int>(cfg.sizes.size()), [&](int i) {
    runs[i] = propagate(tmpl.with_n(cfg.sizes[i]), ansatz,
                        Schedule{cfg.total_time}, cfg.dt, propagate_options(cfg));
  });
  std::vector<std::pair<int, double>> points;
  for (const auto& r : runs) points.emplace_back(r.spec.n, r.fidelity);
  const FitResult fit = fit_exponential(points);
  write_summary_file(cfg, runs, {});
  auto os = open_output(cfg.out + "_fit.csv");
  write_config_echo(os, cfg.echo());
  write_fit(os, fit);
  std::cout << "phi=" << format_number(fit.phi)
            << " gamma=" << format_number(fit.gamma) << "\n";
  return 0;
}

int cmd_sweep_order(const ExperimentConfig& cfg) {
  const ModelSpec spec = cfg.model_spec();
  std::vector<RunRecord> runs(cfg.orders.size());
  parallel_for(cfg.jobs, static_cast<int>(cfg.orders.size()), [&](int i) {
    AnsatzSpec ansatz{AnsatzKind::NestedCommutator, cfg.orders[i], cfg.eta};
    runs[i] = propagate(spec, ansatz, Schedule{cfg.total_time}, cfg.dt,
                        propagate_options(cfg));
  });
  write_summary_file(cfg, runs, {});
  return 0;
}

int cmd_ensemble(const ExperimentConfig& cfg) {
  if (cfg.variant != "random") {
    throw std::invalid_argument("config: ensemble requires variant=random");
  }
  const EnsembleResult res = random_ensemble(
      cfg.model_spec(), cfg.ansatz_spec(), cfg.instances, cfg.total_time,
      cfg.dt, cfg.seed0, cfg.hist_lo, cfg.hist_hi, cfg.bins, cfg.jobs, cfg.gaps);
  std::vector<std::optional<double>> gaps;
  for (double g : res.gaps) gaps.push_back(g);
  write_summary_file(cfg, res.runs, gaps);
  auto os = open_output(cfg.out + "_hist.csv");
  write_config_echo(os, cfg.echo());
  write_histogram(os, res.hist);
  std::cout << "mean_F=" << format_number(res.mean_fidelity)
            << " var_F=" << format_number(res.var_fidelity);
  if (cfg.gaps) {
    std::cout << " mean_gap=" << format_number(res.mean_gap)
              << " lz=" << format_number(lz_estimate(res.mean_gap, cfg.total_time));
    if (lz_estimate(res.mean_gap, cfg.total_time) > 0.5) {
      std::cerr << "warning: two-level estimate outside its validity range\n";
    }
  }
  std::cout << "\n";
  return 0;
}

int cmd_finite_range(const ExperimentConfig& cfg) {
  ExperimentConfig base = cfg;
  base.variant = "finite_range";
  const std::vector<RunRecord> runs =
      finite_range_sweep(base.model_spec(), {cfg.ansatz_spec()}, cfg.nus,
                         cfg.total_time, cfg.dt, cfg.jobs);
  write_summary_file(cfg, runs, {});
  return 0;
}

int cmd_eta_compare(const ExperimentConfig& cfg) {
  const auto pairs = eta_comparison(cfg.model_spec(), {cfg.ansatz_spec()},
                                    cfg.total_time, cfg.dt);
  std::vector<RunRecord> runs;
  for (const auto& pr : pairs) {
    runs.push_back(pr.subspace_weighted);
    runs.push_back(pr.full_weighted);
    std::cout << ansatz_name(pr.ansatz.kind)
              << " dF=" << format_number(pr.full_weighted.fidelity -
                                         pr.subspace_weighted.fidelity)
              << "\n";
  }
  write_summary_file(cfg, runs, {});
  write_traj_file(cfg.out + "_eta0_traj.csv", cfg, pairs.front().subspace_weighted);
  write_traj_file(cfg.out + "_eta05_traj.csv", cfg, pairs.front().full_weighted);
  return 0;
}

int cmd_fit(const ExperimentConfig& cfg) {
  std::ifstream is(cfg.fit_input);
  if (!is) throw std::invalid_argument("cannot read fit input " + cfg.fit_input);
  std::string line;
  int col_n = -1, col_f = -1;
  std::vector<std::pair<int, double>> points;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (col_n < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "n") col_n = static_cast<int>(i);
        if (fields[i] == "F") col_f = static_cast<int>(i);
      }
      if (col_n < 0 || col_f < 0) {
        throw std::invalid_argument("fit input needs 'n' and 'F' columns");
      }
      continue;
    }
    if (static_cast<int>(fields.size()) <= std::max(col_n, col_f)) {
      throw std::invalid_argument("fit input row too short: " + line);
    }
    points.emplace_back(std::stoi(fields[col_n]), std::stod(fields[col_f]));
  }
  const FitResult fit = fit_exponential(points);
  auto os = open_output(cfg.out + "_fit.csv");
  write_config_echo(os, cfg.echo());
  write_fit(os, fit);
  std::cout << "phi=" << format_number(fit.phi)
            << " gamma=" << format_number(fit.gamma) << "\n";
  return 0;
}

int cmd_gap_scan(const ExperimentConfig& cfg) {
  const ModelSpec spec = cfg.model_spec();
  const Hamiltonians ham = build_hamiltonians(spec);
  const auto grid = lambda_grid(cfg.lambda_points);
  auto os = open_output(cfg.out + "_gaps.csv");
  write_config_echo(os, cfg.echo());
  os << "lambda,gap\n";
  for (double lam : grid) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(ham.at(lam), Eigen::EigenvaluesOnly);
    os << format_number(lam) << ','
       << format_number(es.eigenvalues()(1) - es.eigenvalues()(0)) << '\n';
  }
  const GapResult res = minimal_gap(spec, grid);
  std::cout << "min_gap=" << format_number(res.gap)
            << " lambda=" << format_number(res.lambda_at_min) << "\n";
  return 0;
}

struct FlagStore {
  ExperimentConfig v;
  std::string config_path;
  std::string sizes, orders, nus;
};

void add_common(CLI::App* cmd, FlagStore& fs) {
  cmd->add_option("--config", fs.config_path, "key=value config file");
  cmd->add_option("--n", fs.v.n, "number of spins");
  cmd->add_option("--p", fs.v.p, "interaction order");
  cmd->add_option("--variant", fs.v.variant, "uniform | finite_range | random");
  cmd->add_option("--nu", fs.v.nu, "finite-range exponent");
  cmd->add_option("--pj", fs.v.pj, "coupling survival probability");
  cmd->add_option("--seed", fs.v.seed, "dilution seed");
  cmd->add_option("--ansatz", fs.v.ansatz, "none | nc | ca | exact");
  cmd->add_option("--l", fs.v.order, "commutator order");
  cmd->add_option("--eta", fs.v.eta, "trace weight");
  cmd->add_option("--T", fs.v.total_time, "annealing time");
  cmd->add_option("--dt", fs.v.dt, "time step");
  cmd->add_option("--stride", fs.v.stride, "trajectory output stride");
  cmd->add_flag("--cache", fs.v.cache, "interpolate coefficients from a grid");
  cmd->add_option("--M", fs.v.instances, "ensemble size");
  cmd->add_option("--seed0", fs.v.seed0, "base ensemble seed");
  cmd->add_option("--bins", fs.v.bins, "histogram bins");
  cmd->add_option("--hist-lo", fs.v.hist_lo, "histogram lower edge");
  cmd->add_option("--hist-hi", fs.v.hist_hi, "histogram upper edge");
  cmd->add_flag("--gaps", fs.v.gaps, "also compute minimal gaps");
  cmd->add_option("--sizes", fs.sizes, "size list, e.g. 4,6,8 or 4:14");
  cmd->add_option("--orders", fs.orders, "order list");
  cmd->add_option("--nus", fs.nus, "range exponent list");
  cmd->add_option("--lambda-points", fs.v.lambda_points, "gap grid resolution");
  cmd->add_option("--jobs", fs.v.jobs, "parallel worker count");
  cmd->add_option("--out", fs.v.out, "output path prefix");
  cmd->add_option("--fit-input", fs.v.fit_input, "summary table to fit");
}

void apply_overrides(const CLI::App* cmd, const FlagStore& fs,
                     ExperimentConfig& cfg) {
  if (cmd->count("--n")) cfg.n = fs.v.n;
  if (cmd->count("--p")) cfg.p = fs.v.p;
  if (cmd->count("--variant")) cfg.variant = fs.v.variant;
  if (cmd->count("--nu")) cfg.nu = fs.v.nu;
  if (cmd->count("--pj")) cfg.pj = fs.v.pj;
  if (cmd->count("--seed")) cfg.seed = fs.v.seed;
  if (cmd->count("--ansatz")) cfg.ansatz = fs.v.ansatz;
  if (cmd->count("--l")) cfg.order = fs.v.order;
  if (cmd->count("--eta")) cfg.eta = fs.v.eta;
  if (cmd->count("--T")) cfg.total_time = fs.v.total_time;
  if (cmd->count("--dt")) cfg.dt = fs.v.dt;
  if (cmd->count("--stride")) cfg.stride = fs.v.stride;
  if (cmd->count("--cache")) cfg.cache = fs.v.cache;
  if (cmd->count("--M")) cfg.instances = fs.v.instances;
  if (cmd->count("--seed0")) cfg.seed0 = fs.v.seed0;
  if (cmd->count("--bins")) cfg.bins = fs.v.bins;
  if (cmd->count("--hist-lo")) cfg.hist_lo = fs.v.hist_lo;
  if (cmd->count("--hist-hi")) cfg.hist_hi = fs.v.hist_hi;
  if (cmd->count("--gaps")) cfg.gaps = fs.v.gaps;
  if (cmd->count("--sizes")) cfg.sizes = parse_int_list(fs.sizes);
  if (cmd->count("--orders")) cfg.orders = parse_int_list(fs.orders);
  if (cmd->count("--nus")) cfg.nus = parse_double_list(fs.nus);
  if (cmd->count("--lambda-points")) cfg.lambda_points = fs.v.lambda_points;
  if (cmd->count("--jobs")) cfg.jobs = fs.v.jobs;
  if (cmd->count("--out")) cfg.out = fs.v.out;
  if (cmd->count("--fit-input")) cfg.fit_input = fs.v.fit_input;
}

}  // namespace

int run_command(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  int rc = 0;
  if (cfg.command == "anneal") rc = cmd_anneal(cfg);
  else if (cfg.command == "sweep-size") rc = cmd_sweep_size(cfg);
  else if (cfg.command == "sweep-order") rc = cmd_sweep_order(cfg);
  else if (cfg.command == "ensemble") rc = cmd_ensemble(cfg);
  else if (cfg.command == "finite-range") rc = cmd_finite_range(cfg);
  else if (cfg.command == "eta-compare") rc = cmd_eta_compare(cfg);
  else if (cfg.command == "fit") rc = cmd_fit(cfg);
  else if (cfg.command == "gap-scan") rc = cmd_gap_scan(cfg);
  else throw std::invalid_argument("config: unknown command " + cfg.command);
  // Wall time stays out of the output files so reruns are byte-identical.
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  std::cerr << "runtime_s=" << elapsed.count() << "\n";
  return rc;
}

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"counterdiabatic annealing batch runner"};
  app.require_subcommand(1);
  FlagStore fs;
  for (const char* name : {"anneal", "sweep-size", "sweep-order", "ensemble",
                           "finite-range", "eta-compare", "fit", "gap-scan"}) {
    add_common(app.add_subcommand(name), fs);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const CLI::App* cmd = app.get_subcommands().front();
    ExperimentConfig cfg;
    if (cmd->count("--config")) {
      std::ifstream is(fs.config_path);
      if (!is) throw std::invalid_argument("cannot read config " + fs.config_path);
      std::stringstream buf;
      buf << is.rdbuf();
      cfg = parse_config(buf.str());
    }
    cfg.command = cmd->get_name();
    apply_overrides(cmd, fs, cfg);
    return run_command(cfg);
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pspin::cli
