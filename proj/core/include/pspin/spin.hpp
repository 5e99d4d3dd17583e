#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace pspin {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr std::complex<double> kI{0.0, 1.0};

/// Largest qubit count for which full-Hilbert operators may be built.
inline constexpr int kFullHilbertCap = 12;

/// Absolute tolerance for Hermiticity checks (units of the coupling J).
inline constexpr double kHermTol = 1e-12;

enum class RepKind { MaxSpinSubspace, FullHilbert };

/// Matrix representation: either the (n+1)-dimensional maximal-spin sector
/// or the full 2^n Hilbert space.
struct Representation {
  RepKind kind = RepKind::MaxSpinSubspace;
  int n = 1;
  Eigen::Index dim = 2;

  static Representation subspace(int n);
  static Representation full(int n, int cap = kFullHilbertCap);

  bool operator==(const Representation&) const = default;
};

struct Operator {
  Representation rep;
  Matrix mat;
  bool hermitian_hint = false;
};

/// Wraps a matrix as a Hermitian operator; throws std::invalid_argument if
/// max |M - M^dagger| exceeds kHermTol.
Operator hermitian_operator(const Representation& rep, Matrix m);

struct SpinOps {
  Operator x, y, z;
};

/// Total spin operators for j = n/2. Subspace basis is ordered by
/// descending S_z eigenvalue; the full-space versions are sums of
/// single-site Pauli operators over two.
SpinOps collective_spin_ops(int n, const Representation& rep);

enum class Axis { X, Y, Z };

/// Pauli operator acting on one site (1-based, site 1 is the most
/// significant bit) of an n-qubit register.
Operator site_pauli(int n, int site, Axis axis);

/// Orthonormal symmetric (Dicke) states embedded in the full Hilbert space.
/// Column w is the uniform superposition of all computational states with
/// w flipped spins, i.e. the S_z = n/2 - w member of the j = n/2 multiplet.
struct DickeEmbedding {
  int n = 0;
  Matrix basis;  // 2^n x (n+1)
};

DickeEmbedding dicke_embedding(int n, int cap = kFullHilbertCap);

/// (1-eta) Tr_sym(O) + eta Tr_perp(O) for full-space operators, where
/// Tr_sym restricts to the symmetric sector spanned by `emb` and
/// Tr_perp = Tr - Tr_sym. Subspace operators ignore eta and return the
/// plain trace. `emb` may be null whenever the symmetric part carries
/// zero weight (eta = 1/2) or the operator lives in the subspace.
std::complex<double> weighted_trace(const Operator& op, double eta,
                                    const DickeEmbedding* emb = nullptr);

/// Same weighting applied to Tr[A B] without forming the product.
std::complex<double> weighted_trace_product(const Operator& a, const Operator& b,
                                            double eta,
                                            const DickeEmbedding* emb = nullptr);

namespace detail {

std::complex<double> wtrace(const Matrix& m, const Representation& rep, double eta,
                            const DickeEmbedding* emb);
std::complex<double> wtrace_prod(const Matrix& a, const Matrix& b,
                                 const Representation& rep, double eta,
                                 const DickeEmbedding* emb);

}  // namespace detail

}  // namespace pspin
