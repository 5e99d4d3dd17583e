#pragma once

#include "pspin/model.hpp"
#include "pspin/variational.hpp"

#include <stdexcept>

namespace pspin {

enum class AnsatzKind { None, NestedCommutator, Cyclic, Exact };

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::None;
  int order = 1;     // commutator ansatz only
  double eta = 0.0;  // trace weight, full Hilbert space only

  void validate() const;
};

struct QuantumState {
  Representation rep;
  Vector amplitudes;  // unit norm
};

struct RunRecord {
  ModelSpec spec;
  AnsatzSpec ansatz;
  double total_time = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;  // dilution seed when the variant is random
  std::string rng_algorithm;
  std::vector<double> times;
  std::vector<double> pgs;
  double fidelity = 0.0;
  std::vector<RealVector> alphas_trace;  // per recorded step, when requested
};

struct PropagateOptions {
  int output_stride = 10;
  bool record_alphas = false;
  /// Precompute variational coefficients on a lambda grid and interpolate
  /// linearly. Only effective for the fixed-operator (cyclic) basis, where
  /// the basis does not change with lambda; intended for very large sizes.
  bool coefficient_cache = false;
  double cache_grid = 1e-3;
};

/// Raised when the propagated state drifts off the unit sphere.
struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Midpoint product-formula evolution under H0(lambda(t)) plus the
/// schedule-weighted gauge potential of the chosen ansatz. Variational
/// coefficients are recomputed at each step's midpoint lambda; each step
/// exponential is evaluated through a Hermitian eigendecomposition.
RunRecord propagate(const ModelSpec& spec, const AnsatzSpec& ansatz,
                    const Schedule& sched, double dt,
                    const PropagateOptions& opts = {});

/// Squared overlap with the instantaneous ground level of the bare
/// Hamiltonian. With degenerate_sum, projections onto levels within 1e-10
/// of the ground energy are added.
double ground_state_probability(const QuantumState& state, const Operator& bare_h,
                                bool degenerate_sum);

struct GapResult {
  double gap = 0.0;
  double lambda_at_min = 0.0;
};

/// Minimal splitting between the two lowest levels over the given lambda
/// grid, refined around the minimum to 1e-4 in lambda.
GapResult minimal_gap(const ModelSpec& spec, const std::vector<double>& lambda_grid);

}  // namespace pspin
