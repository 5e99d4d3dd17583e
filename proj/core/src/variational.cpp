#include "pspin/variational.hpp"

#include <cmath>
#include <stdexcept>

namespace pspin {

namespace {

Matrix commutator(const Matrix& a, const Matrix& b) {
  Matrix c = a * b;
  c.noalias() -= b * a;
  return c;
}

void check_rep(const Operator& a, const Operator& b) {
  if (!(a.rep == b.rep)) {
    throw std::invalid_argument("operators live in different representations");
  }
}

ActionSolution minimize_with_response(const Matrix& o0,
                                      const std::vector<Matrix>& responses,
                                      const Representation& rep, double eta,
                                      const DickeEmbedding* emb) {
  const int l = static_cast<int>(responses.size());
  const double a0 = detail::wtrace_prod(o0, o0, rep, eta, emb).real();
  RealVector b(l);
  RealMatrix c(l, l);
  for (int j = 0; j < l; ++j) {
    b(j) = detail::wtrace_prod(o0, responses[j], rep, eta, emb).real();
    for (int k = j; k < l; ++k) {
      const double v = detail::wtrace_prod(responses[j], responses[k], rep, eta, emb).real();
      c(j, k) = v;
      c(k, j) = v;
    }
  }
  return detail::solve_normal_equations(a0, b, c);
}

}  // namespace

namespace detail {

ActionSolution solve_normal_equations(double a0, const RealVector& b,
                                      const RealMatrix& c) {
  const int l = static_cast<int>(b.size());
  ActionSolution out;
  out.alphas = RealVector::Zero(l);
  out.linear = b;
  out.gram = c;
  out.action_min = a0;

  // Scale each direction to unit diagonal so the threshold measures
  // collinearity, not operator norm.
  RealVector scale(l);
  double smax = 0.0;
  for (int j = 0; j < l; ++j) {
    scale(j) = std::sqrt(std::max(c(j, j), 0.0));
    smax = std::max(smax, scale(j));
  }
  if (smax == 0.0) {
    out.dropped_modes = l;
    return out;
  }
  RealVector s = scale;
  for (int j = 0; j < l; ++j) {
    if (s(j) < smax * 1e-150) s(j) = smax;  // dead direction, stays zero
  }
  const RealMatrix cn = s.cwiseInverse().asDiagonal() * c * s.cwiseInverse().asDiagonal();
  const RealVector bn = b.cwiseQuotient(s);

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(cn);
  const RealVector& d = es.eigenvalues();
  const RealMatrix& u = es.eigenvectors();
  const double dmax = d.maxCoeff();
  if (dmax <= 0.0) {
    out.dropped_modes = l;
    return out;
  }

  const RealVector bp = u.transpose() * bn;
  RealVector ap = RealVector::Zero(l);
  double dmin_kept = dmax;
  int kept = 0;
  for (int k = 0; k < l; ++k) {
    if (d(k) >= kGramRelTol * dmax) {
      ap(k) = -bp(k) / d(k);
      dmin_kept = std::min(dmin_kept, d(k));
      ++kept;
    }
  }
  out.dropped_modes = l - kept;
  out.gram_condition = kept > 0 ? dmax / dmin_kept : 0.0;
  out.alphas = (u * ap).cwiseQuotient(s);
  out.action_min = a0 + 2.0 * b.dot(out.alphas) + out.alphas.dot(c * out.alphas);
  return out;
}

}  // namespace detail

std::vector<Operator> nested_operators(const Operator& h0, const Operator& dh0,
                                       int order) {
  check_rep(h0, dh0);
  if (order < 1) throw std::invalid_argument("commutator order must be >= 1");
  std::vector<Operator> ops;
  ops.reserve(2 * order + 1);
  ops.push_back(dh0);
  for (int k = 1; k <= 2 * order; ++k) {
    Matrix next = commutator(h0.mat, ops.back().mat);
    ops.push_back(Operator{h0.rep, std::move(next), k % 2 == 0});
  }
  return ops;
}

ActionSolution minimize_quadratic_action(const Operator& h0, const Operator& dh0,
                                         const VariationalBasis& basis, double eta,
                                         const DickeEmbedding* emb) {
  if (basis.ops.empty()) throw std::invalid_argument("empty variational basis");
  check_rep(h0, dh0);
  std::vector<Matrix> responses;
  responses.reserve(basis.ops.size());
  for (const Operator& op : basis.ops) {
    check_rep(h0, op);
    responses.push_back(kI * commutator(op.mat, h0.mat));
  }
  return minimize_with_response(dh0.mat, responses, h0.rep, eta, emb);
}

PotentialResult nc_potential(const Operator& h0, const Operator& dh0, int order,
                             double eta, const DickeEmbedding* emb) {
  std::vector<Operator> ops = nested_operators(h0, dh0, order);
  // i [i O_{2k-1}, H0] = O_{2k}, so the response matrices are already at hand.
  std::vector<Matrix> responses;
  responses.reserve(order);
  for (int k = 1; k <= order; ++k) responses.push_back(ops[2 * k].mat);
  ActionSolution sol = minimize_with_response(dh0.mat, responses, h0.rep, eta, emb);
  Matrix a = Matrix::Zero(h0.rep.dim, h0.rep.dim);
  for (int k = 1; k <= order; ++k) {
    a.noalias() += sol.alphas(k - 1) * (kI * ops[2 * k - 1].mat);
  }
  a = 0.5 * (a + a.adjoint()).eval();
  return {Operator{h0.rep, std::move(a), true}, std::move(sol)};
}

VariationalBasis ca_basis(int n, const Representation& rep) {
  SpinOps s = collective_spin_ops(n, rep);
  Matrix sy3 = s.y.mat * s.y.mat * s.y.mat;
  sy3 = 0.5 * (sy3 + sy3.adjoint()).eval();
  Matrix xyz = s.x.mat * s.y.mat * s.z.mat;
  Matrix cyc = xyz + xyz.adjoint();
  VariationalBasis basis;
  basis.ops.push_back(s.y);
  basis.ops.push_back(hermitian_operator(rep, std::move(sy3)));
  basis.ops.push_back(hermitian_operator(rep, std::move(cyc)));
  basis.labels = {"Sy", "Sy^3", "SxSySz+h.c."};
  return basis;
}

PotentialResult ca_potential(const Operator& h0, const Operator& dh0, double eta,
                             const DickeEmbedding* emb) {
  VariationalBasis basis = ca_basis(h0.rep.n, h0.rep);
  ActionSolution sol = minimize_quadratic_action(h0, dh0, basis, eta, emb);
  Matrix a = Matrix::Zero(h0.rep.dim, h0.rep.dim);
  for (std::size_t j = 0; j < basis.ops.size(); ++j) {
    a.noalias() += sol.alphas(static_cast<int>(j)) * basis.ops[j].mat;
  }
  return {Operator{h0.rep, std::move(a), true}, std::move(sol)};
}

Operator exact_cd(const Operator& h0, const Operator& dh0) {
  check_rep(h0, dh0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h0.mat);
  const RealVector& eps = es.eigenvalues();
  for (Eigen::Index k = 1; k < eps.size(); ++k) {
    if (eps(k) - eps(k - 1) <= 1e-10) {
      throw std::domain_error("exact gauge potential: spectrum is (near-)degenerate");
    }
  }
  const Matrix& w = es.eigenvectors();
  Matrix dt = w.adjoint() * dh0.mat * w;
  Matrix a_eig = Matrix::Zero(dt.rows(), dt.cols());
  for (Eigen::Index m = 0; m < dt.rows(); ++m) {
    for (Eigen::Index l = 0; l < dt.cols(); ++l) {
      if (m == l) continue;
      a_eig(m, l) = kI * dt(m, l) / (eps(l) - eps(m));
    }
  }
  Matrix a = w * a_eig * w.adjoint();
  a = 0.5 * (a + a.adjoint()).eval();
  return Operator{h0.rep, std::move(a), true};
}

double p1_alpha_analytic(double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw std::out_of_range("lambda outside [0, 1]");
  return -1.0 / (4.0 - 8.0 * lambda + 8.0 * lambda * lambda);
}

}  // namespace pspin
