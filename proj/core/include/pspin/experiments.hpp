#pragma once

#include "pspin/dynamics.hpp"

#include <cstdint>
#include <utility>

namespace pspin {

/// Parameters of the exponential law F = phi * exp(-gamma * n).
struct FitResult {
  double phi = 0.0;
  double gamma = 0.0;
  double residual = 0.0;  // rms residual in log space
  int n_lo = 0;
  int n_hi = 0;
  int points_used = 0;
  int points_excluded = 0;  // non-positive / underflowed fidelities
};

/// Log-space least squares. Points with F <= 1e-300 or non-finite F are
/// excluded (and counted), never clamped.
FitResult fit_exponential(const std::vector<std::pair<int, double>>& points);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  int n_bins = 1;
  std::vector<long> counts;
  long total = 0;
  long dropped = 0;  // values outside [lo, hi)

  void add(double x);
};

Histogram make_histogram(double lo, double hi, int n_bins);

struct ScalingResult {
  std::vector<std::pair<int, double>> fidelities;
  FitResult fit;
};

/// Runs the anneal for each size in `sizes` (template spec with n replaced)
/// and fits the exponential law.
ScalingResult size_scaling(const ModelSpec& tmpl, const AnsatzSpec& ansatz,
                           const std::vector<int>& sizes, double total_time,
                           double dt, int jobs = 1);

struct EnsembleResult {
  std::vector<RunRecord> runs;  // ordered by instance index
  Histogram hist;
  double mean_fidelity = 0.0;
  double var_fidelity = 0.0;
  double mean_gap = 0.0;  // filled when gaps are requested
  std::vector<double> gaps;
};

/// M independent dilution instances; instance i is seeded with seed0 + i.
EnsembleResult random_ensemble(const ModelSpec& tmpl, const AnsatzSpec& ansatz,
                               int instances, double total_time, double dt,
                               std::uint64_t seed0, double hist_lo, double hist_hi,
                               int bins, int jobs = 1, bool compute_gaps = false);

/// Small-gap two-level estimate of the mean fidelity, 2 pi <gap>^2 T.
/// Only meaningful well below 1; callers should warn past 0.5.
double lz_estimate(double mean_gap, double total_time);

struct EtaComparison {
  AnsatzSpec ansatz;
  RunRecord subspace_weighted;  // eta = 0
  RunRecord full_weighted;      // eta = 1/2
};

/// Identical dynamics with the action traces weighted toward the symmetric
/// sector versus the whole Hilbert space.
std::vector<EtaComparison> eta_comparison(const ModelSpec& spec,
                                          const std::vector<AnsatzSpec>& ansatze,
                                          double total_time, double dt);

/// One run per (range exponent, ansatz), traces weighted over the whole
/// Hilbert space (eta = 1/2).
std::vector<RunRecord> finite_range_sweep(const ModelSpec& tmpl,
                                          const std::vector<AnsatzSpec>& ansatze,
                                          const std::vector<double>& exponents,
                                          double total_time, double dt,
                                          int jobs = 1);

/// Deterministic work sharing: fn(i) for i in [0, count); results must be
/// written to per-index slots.
void parallel_for(int jobs, int count, const std::function<void(int)>& fn);

}  // namespace pspin
