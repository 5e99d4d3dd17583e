#include <doctest.h>

#include "pspin/spin.hpp"

#include <cmath>
#include <complex>

using namespace pspin;

namespace {

double comm_dev(const Matrix& a, const Matrix& b, const Matrix& c) {
  return (a * b - b * a - kI * c).cwiseAbs().maxCoeff();
}

Matrix random_hermitian(Eigen::Index d, unsigned seed) {
  std::srand(seed);
  Matrix m = Matrix::Random(d, d);
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST_SUITE("spin") {

TEST_CASE("representation dimensions") {
  CHECK(Representation::subspace(7).dim == 8);
  CHECK(Representation::full(7).dim == 128);
  CHECK(Representation::subspace(1000).dim == 1001);
  CHECK_THROWS_AS((void)Representation::full(13), std::invalid_argument);
  CHECK_NOTHROW((void)Representation::full(13, 14));
  CHECK_THROWS_AS((void)Representation::subspace(0), std::invalid_argument);
}

TEST_CASE("spin half and spin one matrices") {
  SpinOps s1 = collective_spin_ops(1, Representation::subspace(1));
  CHECK(s1.z.mat(0, 0).real() == doctest::Approx(0.5));
  CHECK(s1.z.mat(1, 1).real() == doctest::Approx(-0.5));
  CHECK(std::abs(s1.x.mat(0, 1) - 0.5) < 1e-15);
  CHECK(std::abs(s1.y.mat(0, 1) - (-0.5 * kI)) < 1e-15);
  CHECK(std::abs(s1.y.mat(1, 0) - 0.5 * kI) < 1e-15);

  SpinOps s2 = collective_spin_ops(2, Representation::subspace(2));
  CHECK(s2.z.mat(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(s2.z.mat(1, 1)) < 1e-15);
  CHECK(s2.z.mat(2, 2).real() == doctest::Approx(-1.0));
}

TEST_CASE("commutation relations") {
  for (int n : {2, 5, 12}) {
    SpinOps s = collective_spin_ops(n, Representation::subspace(n));
    CHECK(comm_dev(s.x.mat, s.y.mat, s.z.mat) < 1e-12);
    CHECK(comm_dev(s.y.mat, s.z.mat, s.x.mat) < 1e-12);
    CHECK(comm_dev(s.z.mat, s.x.mat, s.y.mat) < 1e-12);
  }
  for (int n : {3, 6}) {
    SpinOps s = collective_spin_ops(n, Representation::full(n));
    CHECK(comm_dev(s.x.mat, s.y.mat, s.z.mat) < 1e-12);
    CHECK(comm_dev(s.y.mat, s.z.mat, s.x.mat) < 1e-12);
    CHECK(comm_dev(s.z.mat, s.x.mat, s.y.mat) < 1e-12);
  }
}

TEST_CASE("commutation at large subspace sizes") {
  // Entries grow like n^2/4, so the check is relative to the operator scale.
  for (int n : {200, 1000}) {
    SpinOps s = collective_spin_ops(n, Representation::subspace(n));
    const double scale = s.z.mat.cwiseAbs().maxCoeff() * s.x.mat.cwiseAbs().maxCoeff();
    CHECK(comm_dev(s.x.mat, s.y.mat, s.z.mat) < 1e-12 * scale);
  }
}

TEST_CASE("casimir identity") {
  for (int n : {1, 4, 9, 12}) {
    SpinOps s = collective_spin_ops(n, Representation::subspace(n));
    const double j = 0.5 * n;
    Matrix s2 = s.x.mat * s.x.mat + s.y.mat * s.y.mat + s.z.mat * s.z.mat;
    s2 -= j * (j + 1.0) * Matrix::Identity(n + 1, n + 1);
    CHECK(s2.cwiseAbs().maxCoeff() < 1e-12 * (1.0 + j * j));
  }
}

TEST_CASE("site pauli structure") {
  Operator z1 = site_pauli(2, 1, Axis::Z);
  CHECK(z1.mat(0, 0) == std::complex<double>(1.0));
  CHECK(z1.mat(1, 1) == std::complex<double>(1.0));
  CHECK(z1.mat(2, 2) == std::complex<double>(-1.0));
  CHECK(z1.mat(3, 3) == std::complex<double>(-1.0));

  for (int site = 1; site <= 3; ++site) {
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
      Operator op = site_pauli(3, site, ax);
      Matrix sq = op.mat * op.mat - Matrix::Identity(8, 8);
      CHECK(sq.cwiseAbs().maxCoeff() < 1e-15);
      CHECK((op.mat - op.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    }
  }

  SpinOps s = collective_spin_ops(3, Representation::full(3));
  Matrix sum = Matrix::Zero(8, 8);
  for (int site = 1; site <= 3; ++site) sum += 0.5 * site_pauli(3, site, Axis::X).mat;
  CHECK((sum - s.x.mat).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS((void)site_pauli(3, 0, Axis::X), std::invalid_argument);
  CHECK_THROWS_AS((void)site_pauli(3, 4, Axis::X), std::invalid_argument);
}

TEST_CASE("dicke embedding states") {
  DickeEmbedding e1 = dicke_embedding(1);
  CHECK(std::abs(e1.basis(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(e1.basis(1, 1) - 1.0) < 1e-15);

  DickeEmbedding e2 = dicke_embedding(2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(e2.basis(1, 1) - r) < 1e-15);
  CHECK(std::abs(e2.basis(2, 1) - r) < 1e-15);
  CHECK(std::abs(e2.basis(0, 1)) < 1e-15);
  CHECK(std::abs(e2.basis(3, 1)) < 1e-15);

  DickeEmbedding e6 = dicke_embedding(6);
  Matrix gram = e6.basis.adjoint() * e6.basis;
  CHECK((gram - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dicke states are collective spin eigenvectors") {
  const int n = 5;
  DickeEmbedding emb = dicke_embedding(n);
  SpinOps s = collective_spin_ops(n, Representation::full(n));
  const double j = 0.5 * n;
  Matrix s2 = s.x.mat * s.x.mat + s.y.mat * s.y.mat + s.z.mat * s.z.mat;
  for (int w = 0; w <= n; ++w) {
    Vector col = emb.basis.col(w);
    CHECK((s2 * col - j * (j + 1.0) * col).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s.z.mat * col - (j - w) * col).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("embedding intertwines collective operators") {
  const int n = 4;
  DickeEmbedding emb = dicke_embedding(n);
  SpinOps f = collective_spin_ops(n, Representation::full(n));
  SpinOps s = collective_spin_ops(n, Representation::subspace(n));
  auto poly = [](const SpinOps& o) {
    return Matrix(o.x.mat * o.y.mat + o.z.mat * o.z.mat - 0.7 * o.y.mat);
  };
  Matrix lhs = poly(f) * emb.basis;
  Matrix rhs = emb.basis * poly(s);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("weighted trace of identity") {
  const int n = 5;
  const Representation rep = Representation::full(n);
  DickeEmbedding emb = dicke_embedding(n);
  Operator id = hermitian_operator(rep, Matrix::Identity(32, 32));
  for (double eta : {0.0, 0.3, 0.5, 1.0}) {
    const double expected = (1.0 - eta) * (n + 1) + eta * (32 - n - 1);
    CHECK(weighted_trace(id, eta, &emb).real() == doctest::Approx(expected));
    CHECK(std::abs(weighted_trace(id, eta, &emb).imag()) < 1e-14);
  }
}

TEST_CASE("weighted trace splits and products") {
  const int n = 4;
  const Representation rep = Representation::full(n);
  DickeEmbedding emb = dicke_embedding(n);
  Matrix o = random_hermitian(16, 11);
  Operator op{rep, o, true};

  // eta = 1/2 collapses to half the plain trace.
  CHECK(std::abs(weighted_trace(op, 0.5, nullptr) - 0.5 * o.trace()) < 1e-12);

  // Symmetric and orthogonal parts add up to the plain trace.
  const std::complex<double> sym = weighted_trace(op, 0.0, &emb);
  const std::complex<double> perp = weighted_trace(op, 1.0, &emb);
  CHECK(std::abs(sym + perp - o.trace()) < 1e-10);

  // Independent symmetric trace from explicitly built Dicke states.
  std::complex<double> sym_direct = 0.0;
  for (int w = 0; w <= n; ++w) {
    Vector v = Vector::Zero(16);
    int count = 0;
    for (int b = 0; b < 16; ++b) {
      if (__builtin_popcount(b) == w) {
        v(b) = 1.0;
        ++count;
      }
    }
    v /= std::sqrt(double(count));
    sym_direct += v.dot(o * v);
  }
  CHECK(std::abs(sym - sym_direct) < 1e-12);

  // Product form agrees with tracing the explicit product.
  Matrix b = random_hermitian(16, 17);
  Operator opb{rep, b, true};
  for (double eta : {0.0, 0.25, 0.5}) {
    const std::complex<double> lhs = weighted_trace_product(op, opb, eta, &emb);
    const std::complex<double> rhs =
        weighted_trace(Operator{rep, Matrix(o * b), false}, eta, &emb);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("symmetric trace matches subspace trace for collective polynomials") {
  const int n = 5;
  DickeEmbedding emb = dicke_embedding(n);
  SpinOps f = collective_spin_ops(n, Representation::full(n));
  SpinOps s = collective_spin_ops(n, Representation::subspace(n));
  Matrix pf = f.x.mat * f.x.mat + 2.0 * f.z.mat * f.y.mat * f.z.mat;
  Matrix ps = s.x.mat * s.x.mat + 2.0 * s.z.mat * s.y.mat * s.z.mat;
  Operator opf{Representation::full(n), pf, false};
  CHECK(std::abs(weighted_trace(opf, 0.0, &emb) - ps.trace()) < 1e-10);
}

TEST_CASE("subspace trace ignores the weight") {
  const int n = 6;
  const Representation rep = Representation::subspace(n);
  Matrix o = random_hermitian(n + 1, 23);
  Operator op{rep, o, true};
  CHECK(std::abs(weighted_trace(op, 0.0, nullptr) - o.trace()) < 1e-14);
  CHECK(std::abs(weighted_trace(op, 0.37, nullptr) - o.trace()) < 1e-14);
}

TEST_CASE("construction guards") {
  Matrix bad = Matrix::Zero(3, 3);
  bad(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS((void)hermitian_operator(Representation::subspace(2), bad),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)hermitian_operator(Representation::subspace(3), Matrix::Identity(3, 3)),
      std::invalid_argument);

  const Representation rep = Representation::full(4);
  Operator op{rep, Matrix::Identity(16, 16), true};
  CHECK_THROWS_AS((void)weighted_trace(op, 0.0, nullptr), std::invalid_argument);
  DickeEmbedding wrong = dicke_embedding(3);
  CHECK_THROWS_AS((void)weighted_trace(op, 0.0, &wrong), std::invalid_argument);
}

}  // TEST_SUITE
