#include "pspin/spin.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pspin {

namespace {

Eigen::Index pow2(int n) { return Eigen::Index{1} << n; }

void check_same_space(const Representation& a, const Representation& b) {
  if (!(a == b)) {
    throw std::invalid_argument("operators live in different representations");
  }
}

}  // namespace

Representation Representation::subspace(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  return {RepKind::MaxSpinSubspace, n, n + 1};
}

Representation Representation::full(int n, int cap) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  if (n > cap) {
    throw std::invalid_argument("full Hilbert space rejected for n = " +
                                std::to_string(n) + " (cap " + std::to_string(cap) + ")");
  }
  return {RepKind::FullHilbert, n, pow2(n)};
}

Operator hermitian_operator(const Representation& rep, Matrix m) {
  if (m.rows() != rep.dim || m.cols() != rep.dim) {
    throw std::invalid_argument("operator dimension does not match representation");
  }
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermTol) {
    throw std::invalid_argument("operator is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
  return Operator{rep, std::move(m), true};
}

SpinOps collective_spin_ops(int n, const Representation& rep) {
  if (rep.n != n) throw std::invalid_argument("representation size mismatch");
  if (rep.kind == RepKind::MaxSpinSubspace) {
    const int d = n + 1;
    const double j = 0.5 * n;
    Matrix sz = Matrix::Zero(d, d);
    Matrix sp = Matrix::Zero(d, d);  // raising operator
    for (int w = 0; w < d; ++w) sz(w, w) = j - w;
    for (int w = 1; w < d; ++w) {
      const double m = j - w;
      sp(w - 1, w) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    Matrix sx = 0.5 * (sp + sp.adjoint());
    Matrix sy = (sp - sp.adjoint()) / (2.0 * kI);
    return {hermitian_operator(rep, std::move(sx)),
            hermitian_operator(rep, std::move(sy)),
            hermitian_operator(rep, std::move(sz))};
  }
  Matrix sx = Matrix::Zero(rep.dim, rep.dim);
  Matrix sy = sx, sz = sx;
  for (int site = 1; site <= n; ++site) {
    sx += 0.5 * site_pauli(n, site, Axis::X).mat;
    sy += 0.5 * site_pauli(n, site, Axis::Y).mat;
    sz += 0.5 * site_pauli(n, site, Axis::Z).mat;
  }
  return {hermitian_operator(rep, std::move(sx)),
          hermitian_operator(rep, std::move(sy)),
          hermitian_operator(rep, std::move(sz))};
}

Operator site_pauli(int n, int site, Axis axis) {
  if (site < 1 || site > n) throw std::invalid_argument("site index out of range");
  const Representation rep = Representation::full(n);
  const Eigen::Index d = rep.dim;
  const Eigen::Index mask = Eigen::Index{1} << (n - site);  // site 1 = MSB
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    const bool down = (b & mask) != 0;
    switch (axis) {
      case Axis::Z:
        m(b, b) = down ? -1.0 : 1.0;
        break;
      case Axis::X:
        m(b ^ mask, b) = 1.0;
        break;
      case Axis::Y:
        m(b ^ mask, b) = down ? -kI : kI;
        break;
    }
  }
  return Operator{rep, std::move(m), true};
}

DickeEmbedding dicke_embedding(int n, int cap) {
  const Representation rep = Representation::full(n, cap);
  Matrix basis = Matrix::Zero(rep.dim, n + 1);
  std::vector<double> norm(n + 1, 0.0);
  for (Eigen::Index b = 0; b < rep.dim; ++b) {
    norm[std::popcount(static_cast<unsigned long long>(b))] += 1.0;
  }
  for (Eigen::Index b = 0; b < rep.dim; ++b) {
    const int w = std::popcount(static_cast<unsigned long long>(b));
    basis(b, w) = 1.0 / std::sqrt(norm[w]);
  }
  return {n, std::move(basis)};
}

namespace detail {

std::complex<double> wtrace(const Matrix& m, const Representation& rep, double eta,
                            const DickeEmbedding* emb) {
  if (rep.kind == RepKind::MaxSpinSubspace) return m.trace();
  const std::complex<double> full = m.trace();
  const double sym_weight = 1.0 - 2.0 * eta;
  if (sym_weight == 0.0) return eta * full;
  if (emb == nullptr || emb->n != rep.n) {
    throw std::invalid_argument("weighted trace needs a matching Dicke embedding");
  }
  std::complex<double> sym = 0.0;
  for (Eigen::Index w = 0; w < emb->basis.cols(); ++w) {
    sym += emb->basis.col(w).dot(m * emb->basis.col(w));
  }
  return eta * full + sym_weight * sym;
}

std::complex<double> wtrace_prod(const Matrix& a, const Matrix& b,
                                 const Representation& rep, double eta,
                                 const DickeEmbedding* emb) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace of product: dimension mismatch");
  }
  const std::complex<double> full = (a.array() * b.transpose().array()).sum();
  if (rep.kind == RepKind::MaxSpinSubspace) return full;
  const double sym_weight = 1.0 - 2.0 * eta;
  if (sym_weight == 0.0) return eta * full;
  if (emb == nullptr || emb->n != rep.n) {
    throw std::invalid_argument("weighted trace needs a matching Dicke embedding");
  }
  const Matrix left = a.adjoint() * emb->basis;
  const Matrix right = b * emb->basis;
  std::complex<double> sym = 0.0;
  for (Eigen::Index w = 0; w < left.cols(); ++w) {
    sym += left.col(w).dot(right.col(w));
  }
  return eta * full + sym_weight * sym;
}

}  // namespace detail

std::complex<double> weighted_trace(const Operator& op, double eta,
                                    const DickeEmbedding* emb) {
  return detail::wtrace(op.mat, op.rep, eta, emb);
}

std::complex<double> weighted_trace_product(const Operator& a, const Operator& b,
                                            double eta, const DickeEmbedding* emb) {
  check_same_space(a.rep, b.rep);
  return detail::wtrace_prod(a.mat, b.mat, a.rep, eta, emb);
}

}  // namespace pspin
