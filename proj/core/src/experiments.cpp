#include "pspin/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace pspin {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> default_gap_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  return grid;
}

}  // namespace

void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::max(1, std::min(jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

FitResult fit_exponential(const std::vector<std::pair<int, double>>& points) {
  std::vector<std::pair<double, double>> usable;  // (n, log F)
  int excluded = 0;
  for (const auto& [n, f] : points) {
    if (!std::isfinite(f) || f <= 1e-300) {
      ++excluded;
      continue;
    }
    usable.emplace_back(static_cast<double>(n), std::log(f));
  }
  if (usable.size() < 2) {
    throw std::invalid_argument("exponential fit needs at least two usable points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : usable) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(usable.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("exponential fit is degenerate");
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;

  FitResult fit;
  fit.gamma = -slope;
  fit.phi = std::exp(intercept);
  double ss = 0.0;
  int n_lo = std::numeric_limits<int>::max(), n_hi = std::numeric_limits<int>::min();
  for (const auto& [x, y] : usable) {
    const double r = y - (intercept + slope * x);
    ss += r * r;
    n_lo = std::min(n_lo, static_cast<int>(x));
    n_hi = std::max(n_hi, static_cast<int>(x));
  }
  fit.residual = std::sqrt(ss / m);
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  fit.points_used = static_cast<int>(usable.size());
  fit.points_excluded = excluded;
  return fit;
}

Histogram make_histogram(double lo, double hi, int n_bins) {
  if (!(hi > lo)) throw std::invalid_argument("histogram range is empty");
  if (n_bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.n_bins = n_bins;
  h.counts.assign(n_bins, 0);
  return h;
}

void Histogram::add(double x) {
  ++total;
  if (x < lo || x >= hi) {
    ++dropped;
    return;
  }
  const int bin = std::min(n_bins - 1,
                           static_cast<int>((x - lo) / (hi - lo) * n_bins));
  ++counts[bin];
}

ScalingResult size_scaling(const ModelSpec& tmpl, const AnsatzSpec& ansatz,
                           const std::vector<int>& sizes, double total_time,
                           double dt, int jobs) {
  ScalingResult out;
  out.fidelities.resize(sizes.size());
  Schedule sched{total_time};
  parallel_for(jobs, static_cast<int>(sizes.size()), [&](int i) {
    const RunRecord rec = propagate(tmpl.with_n(sizes[i]), ansatz, sched, dt);
    out.fidelities[i] = {sizes[i], rec.fidelity};
  });
  out.fit = fit_exponential(out.fidelities);
  return out;
}

EnsembleResult random_ensemble(const ModelSpec& tmpl, const AnsatzSpec& ansatz,
                               int instances, double total_time, double dt,
                               std::uint64_t seed0, double hist_lo, double hist_hi,
                               int bins, int jobs, bool compute_gaps) {
  if (instances < 1) throw std::invalid_argument("ensemble needs at least one instance");
  const auto* rd = std::get_if<RandomDilution>(&tmpl.variant);
  if (rd == nullptr) {
    throw std::invalid_argument("ensemble template must use the random variant");
  }
  EnsembleResult out;
  out.runs.resize(instances);
  if (compute_gaps) out.gaps.resize(instances);
  Schedule sched{total_time};
  const std::vector<double> grid = default_gap_grid();
  parallel_for(jobs, instances, [&](int i) {
    ModelSpec spec = tmpl;
    spec.variant = RandomDilution{rd->survival_probability,
                                  seed0 + static_cast<std::uint64_t>(i)};
    out.runs[i] = propagate(spec, ansatz, sched, dt);
    if (compute_gaps) out.gaps[i] = minimal_gap(spec, grid).gap;
  });

  out.hist = make_histogram(hist_lo, hist_hi, bins);
  double sum = 0.0, sum2 = 0.0;
  for (const RunRecord& rec : out.runs) {
    out.hist.add(rec.fidelity);
    sum += rec.fidelity;
    sum2 += rec.fidelity * rec.fidelity;
  }
  out.mean_fidelity = sum / instances;
  out.var_fidelity = sum2 / instances - out.mean_fidelity * out.mean_fidelity;
  if (compute_gaps) {
    out.mean_gap = std::accumulate(out.gaps.begin(), out.gaps.end(), 0.0) / instances;
  }
  return out;
}

double lz_estimate(double mean_gap, double total_time) {
  return 2.0 * kPi * mean_gap * mean_gap * total_time;
}

std::vector<EtaComparison> eta_comparison(const ModelSpec& spec,
                                          const std::vector<AnsatzSpec>& ansatze,
                                          double total_time, double dt) {
  if (spec.rep.kind != RepKind::FullHilbert) {
    throw std::invalid_argument("trace-weight comparison needs the full Hilbert space");
  }
  Schedule sched{total_time};
  std::vector<EtaComparison> out;
  out.reserve(ansatze.size());
  for (AnsatzSpec ansatz : ansatze) {
    EtaComparison cmp;
    cmp.ansatz = ansatz;
    ansatz.eta = 0.0;
    cmp.subspace_weighted = propagate(spec, ansatz, sched, dt);
    ansatz.eta = 0.5;
    cmp.full_weighted = propagate(spec, ansatz, sched, dt);
    out.push_back(std::move(cmp));
  }
  return out;
}

std::vector<RunRecord> finite_range_sweep(const ModelSpec& tmpl,
                                          const std::vector<AnsatzSpec>& ansatze,
                                          const std::vector<double>& exponents,
                                          double total_time, double dt, int jobs) {
  Schedule sched{total_time};
  const int count = static_cast<int>(ansatze.size() * exponents.size());
  std::vector<RunRecord> out(count);
  parallel_for(jobs, count, [&](int i) {
    const std::size_t a = i / exponents.size();
    const std::size_t v = i % exponents.size();
    ModelSpec spec = tmpl;
    spec.variant = FiniteRange{exponents[v]};
    AnsatzSpec ansatz = ansatze[a];
    ansatz.eta = 0.5;
    out[i] = propagate(spec, ansatz, sched, dt);
  });
  return out;
}

}  // namespace pspin
