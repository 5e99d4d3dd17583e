#pragma once

#include "pspin/spin.hpp"

#include <cstdint>
#include <span>
#include <variant>

namespace pspin {

struct Uniform {};

struct FiniteRange {
  double range_exponent = 0.0;  // 0 recovers the uniform model
};

struct RandomDilution {
  double survival_probability = 1.0;  // P(K = J) per coupling
  std::uint64_t seed = 0;
};

using ModelVariant = std::variant<Uniform, FiniteRange, RandomDilution>;

/// Model definition with Gamma = J = hbar = 1.
struct ModelSpec {
  int n = 1;
  int p = 1;
  ModelVariant variant = Uniform{};
  Representation rep = Representation::subspace(1);

  void validate() const;  // throws std::invalid_argument
  ModelSpec with_n(int new_n) const;
};

/// Interpolation parameter lambda(t) and its analytic derivative.
/// lambda(0) = 0, lambda(T) = 1, lambda_dot(0) = lambda_dot(T) = 0.
struct Schedule {
  double total_time = 1.0;

  double lambda(double t) const;
  double lambda_dot(double t) const;
};

/// Chain distance of a p-tuple of site indices: mean pairwise separation,
/// normalized so that dist(1, 2, ..., p) = 1 when all indices are distinct,
/// and 1 whenever two indices coincide.
double tuple_distance(std::span<const int> indices);

/// -2 S_x in the spec's representation.
Operator driver_hamiltonian(const ModelSpec& spec);

/// Diagonal (computational-basis) target. Uniform variant is
/// -(2 S_z)^p / n^(p-1); finite-range and random variants weight each
/// p-body term of the expanded sum individually.
Operator target_hamiltonian(const ModelSpec& spec);

/// Per-tuple couplings in lexicographic order over [1,n]^p.
/// Uniform: all 1. Finite range: 1/dist^nu. Random: i.i.d. {1, 0}.
std::vector<double> coupling_table(const ModelSpec& spec);

Operator h0(const ModelSpec& spec, double lambda);
Operator dh0(const ModelSpec& spec);

/// Endpoint Hamiltonians cached for repeated interpolation.
struct Hamiltonians {
  Representation rep;
  Matrix hq, hp;

  Matrix at(double lambda) const { return (1.0 - lambda) * hq + lambda * hp; }
  Matrix difference() const { return hp - hq; }
};

Hamiltonians build_hamiltonians(const ModelSpec& spec);

/// Name of the generator behind the random-dilution draws, recorded in run
/// provenance.
const char* rng_algorithm_name();

}  // namespace pspin
