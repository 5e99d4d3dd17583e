#pragma once

#include "pspin/spin.hpp"

#include <utility>

namespace pspin {

/// Relative eigenvalue cutoff below which Gram-matrix modes are discarded.
inline constexpr double kGramRelTol = 1e-10;

struct VariationalBasis {
  std::vector<Operator> ops;  // Hermitian, same representation
  std::vector<std::string> labels;
};

struct ActionSolution {
  RealVector alphas;          // one coefficient per basis operator
  double action_min = 0.0;
  double gram_condition = 0.0;  // largest/smallest retained eigenvalue (scaled Gram)
  int dropped_modes = 0;
  RealVector linear;   // b_j = Re wTr[O_0 M_j]
  RealMatrix gram;     // C_jk = Re wTr[M_j M_k]
};

/// Iterated commutators O_0 = dH0, O_k = [H0, O_{k-1}], k = 1..2*order.
/// Even entries are Hermitian, odd entries anti-Hermitian.
std::vector<Operator> nested_operators(const Operator& h0, const Operator& dh0,
                                       int order);

/// Minimizes wTr[(O_0 + sum_j alpha_j i[A_j, H0])^2] over the coefficients.
/// Degenerate directions of the Gram matrix are dropped via eigenvalue
/// thresholding after scaling each basis operator to unit weighted norm.
ActionSolution minimize_quadratic_action(const Operator& h0, const Operator& dh0,
                                         const VariationalBasis& basis,
                                         double eta = 0.0,
                                         const DickeEmbedding* emb = nullptr);

struct PotentialResult {
  Operator potential;
  ActionSolution solution;
};

/// Gauge potential from the commutator ansatz of the given order:
/// A = sum_k alpha_k (i O_{2k-1}).
PotentialResult nc_potential(const Operator& h0, const Operator& dh0, int order,
                             double eta = 0.0, const DickeEmbedding* emb = nullptr);

/// Three-operator collective basis {S_y, S_y^3, S_x S_y S_z + h.c.}.
VariationalBasis ca_basis(int n, const Representation& rep);

PotentialResult ca_potential(const Operator& h0, const Operator& dh0,
                             double eta = 0.0, const DickeEmbedding* emb = nullptr);

/// Spectral-representation gauge potential
/// A = i sum_{m != l} <m|dH0|l> / (e_l - e_m) |m><l|.
/// Oracle only; throws std::domain_error when the spectrum has level
/// spacings below 1e-10.
Operator exact_cd(const Operator& h0, const Operator& dh0);

/// Closed-form single-parameter coefficient for the p = 1 model:
/// -1 / (4 - 8 lambda + 8 lambda^2), independent of system size.
double p1_alpha_analytic(double lambda);

namespace detail {

/// Stationary point of a0 + 2 b.alpha + alpha^T c alpha with scaled
/// eigenvalue thresholding of c.
ActionSolution solve_normal_equations(double a0, const RealVector& b,
                                      const RealMatrix& c);

}  // namespace detail

}  // namespace pspin
