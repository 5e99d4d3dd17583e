#include <doctest.h>

#include "pspin/model.hpp"

#include <array>
#include <cmath>

using namespace pspin;

TEST_SUITE("model") {

TEST_CASE("schedule endpoints and midpoint") {
  for (double total : {1.0, 2.5}) {
    Schedule sched{total};
    CHECK(std::abs(sched.lambda(0.0)) < 1e-12);
    CHECK(std::abs(sched.lambda(total) - 1.0) < 1e-12);
    CHECK(sched.lambda(0.5 * total) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(sched.lambda_dot(0.0)) < 1e-12);
    CHECK(std::abs(sched.lambda_dot(total)) < 1e-12);
    const double pi = std::acos(-1.0);
    CHECK(sched.lambda_dot(0.5 * total) ==
          doctest::Approx(pi * pi / (4.0 * total)).epsilon(1e-12));
  }
  Schedule sched{1.0};
  CHECK_THROWS_AS((void)sched.lambda(-1e-9), std::out_of_range);
  CHECK_THROWS_AS((void)sched.lambda(1.0 + 1e-9), std::out_of_range);
  CHECK_THROWS_AS((void)sched.lambda_dot(2.0), std::out_of_range);
}

TEST_CASE("schedule derivative matches finite differences") {
  Schedule sched{1.7};
  const double h = 1e-6;
  for (int i = 1; i < 40; ++i) {
    const double t = 1.7 * i / 40.0;
    const double fd = (sched.lambda(t + h) - sched.lambda(t - h)) / (2.0 * h);
    const double an = sched.lambda_dot(t);
    CHECK(std::abs(an - fd) < 1e-7 * std::max(1.0, std::abs(an)));
  }
}

TEST_CASE("schedule is monotone") {
  Schedule sched{1.0};
  double prev = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double cur = sched.lambda(i / 1000.0);
    CHECK(cur >= prev - 1e-15);
    prev = cur;
  }
}

TEST_CASE("tuple distance") {
  std::array<int, 3> a{1, 2, 3}, b{1, 1, 2}, c{1, 3, 5};
  CHECK(tuple_distance(a) == doctest::Approx(1.0));
  CHECK(tuple_distance(b) == doctest::Approx(1.0));
  CHECK(tuple_distance(c) == doctest::Approx(2.0));
  std::array<int, 1> single{4};
  CHECK(tuple_distance(single) == doctest::Approx(1.0));
}

TEST_CASE("driver hamiltonian") {
  ModelSpec spec{1, 1, Uniform{}, Representation::full(1)};
  Operator hq = driver_hamiltonian(spec);
  // -sigma_x for one qubit
  CHECK(std::abs(hq.mat(0, 1) + 1.0) < 1e-15);
  CHECK(std::abs(hq.mat(1, 0) + 1.0) < 1e-15);
  CHECK(std::abs(hq.mat(0, 0)) < 1e-15);

  // Ground state in the full space is the uniform superposition.
  ModelSpec spec4{4, 3, Uniform{}, Representation::full(4)};
  Eigen::SelfAdjointEigenSolver<Matrix> es(driver_hamiltonian(spec4).mat);
  Vector g = es.eigenvectors().col(0);
  g /= g(0);
  CHECK((g - Vector::Ones(16)).cwiseAbs().maxCoeff() < 1e-10);

  // Full-space and subspace versions agree through the Dicke embedding.
  DickeEmbedding emb = dicke_embedding(4);
  ModelSpec spec4s{4, 3, Uniform{}, Representation::subspace(4)};
  Matrix lhs = driver_hamiltonian(spec4).mat * emb.basis;
  Matrix rhs = emb.basis * driver_hamiltonian(spec4s).mat;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("uniform target hamiltonian") {
  ModelSpec spec{5, 1, Uniform{}, Representation::subspace(5)};
  SpinOps s = collective_spin_ops(5, spec.rep);
  CHECK((target_hamiltonian(spec).mat + 2.0 * s.z.mat).cwiseAbs().maxCoeff() < 1e-12);

  ModelSpec spec3{5, 3, Uniform{}, Representation::subspace(5)};
  Operator hp = target_hamiltonian(spec3);
  for (int w = 0; w <= 5; ++w) {
    const double m = 2.5 - w;
    CHECK(hp.mat(w, w).real() ==
          doctest::Approx(-std::pow(2.0 * m, 3) / 25.0).epsilon(1e-12));
    CHECK(std::abs(hp.mat(w, w).imag()) < 1e-15);
  }

  // Full-space uniform target agrees with the subspace through the embedding.
  ModelSpec specf{5, 3, Uniform{}, Representation::full(5)};
  DickeEmbedding emb = dicke_embedding(5);
  Matrix lhs = target_hamiltonian(specf).mat * emb.basis;
  Matrix rhs = emb.basis * hp.mat;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("variant reductions") {
  ModelSpec uni{4, 3, Uniform{}, Representation::full(4)};
  ModelSpec ran{4, 3, RandomDilution{1.0, 99}, Representation::full(4)};
  ModelSpec fin{4, 3, FiniteRange{0.0}, Representation::full(4)};
  const Matrix hu = target_hamiltonian(uni).mat;
  CHECK((target_hamiltonian(ran).mat - hu).cwiseAbs().maxCoeff() == 0.0);
  CHECK((target_hamiltonian(fin).mat - hu).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random variant determinism and survival frequency") {
  ModelSpec spec{5, 3, RandomDilution{0.3, 1234}, Representation::full(5)};
  const Matrix a = target_hamiltonian(spec).mat;
  const Matrix b = target_hamiltonian(spec).mat;
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);

  const std::vector<double> table = coupling_table(spec);
  CHECK(table.size() == 125);
  double survived = 0.0;
  for (double v : table) {
    CHECK((v == 0.0 || v == 1.0));
    survived += v;
  }
  const double freq = survived / 125.0;
  const double sigma = std::sqrt(0.3 * 0.7 / 125.0);
  CHECK(std::abs(freq - 0.3) < 3.0 * sigma);

  ModelSpec other{5, 3, RandomDilution{0.3, 1235}, Representation::full(5)};
  CHECK((target_hamiltonian(other).mat - a).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("finite range couplings") {
  ModelSpec spec{5, 3, FiniteRange{2.0}, Representation::full(5)};
  const std::vector<double> table = coupling_table(spec);
  // Lexicographic order over [1,5]^3: first tuple (1,1,1), distance 1.
  CHECK(table[0] == doctest::Approx(1.0));
  // Tuple (1,3,5) sits at offset (0*25 + 2*5 + 4), distance 2, weight 1/4.
  CHECK(table[14] == doctest::Approx(0.25));
}

TEST_CASE("interpolated hamiltonian") {
  ModelSpec spec{6, 3, Uniform{}, Representation::subspace(6)};
  Hamiltonians ham = build_hamiltonians(spec);
  CHECK((h0(spec, 0.0).mat - ham.hq).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((h0(spec, 1.0).mat - ham.hp).cwiseAbs().maxCoeff() < 1e-15);

  // Linearity makes the centered difference exact.
  Matrix fd = (h0(spec, 0.75).mat - h0(spec, 0.25).mat) / 0.5;
  CHECK((fd - dh0(spec).mat).cwiseAbs().maxCoeff() < 1e-12);

  ModelSpec p1{4, 1, Uniform{}, Representation::subspace(4)};
  SpinOps s = collective_spin_ops(4, p1.rep);
  const double lm = 0.3;
  Matrix expected = -2.0 * (1.0 - lm) * s.x.mat - 2.0 * lm * s.z.mat;
  CHECK((h0(p1, lm).mat - expected).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS((void)h0(spec, -0.1), std::out_of_range);
  CHECK_THROWS_AS((void)h0(spec, 1.1), std::out_of_range);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(
      (ModelSpec{4, 3, FiniteRange{1.0}, Representation::subspace(4)}.validate()),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (ModelSpec{4, 3, RandomDilution{0.5, 0}, Representation::subspace(4)}.validate()),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (ModelSpec{3, 3, FiniteRange{1.0}, Representation::full(3)}.validate()),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (ModelSpec{4, 3, RandomDilution{1.5, 0}, Representation::full(4)}.validate()),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (ModelSpec{4, 3, FiniteRange{-1.0}, Representation::full(4)}.validate()),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (ModelSpec{4, 3, Uniform{}, Representation::subspace(5)}.validate()),
      std::invalid_argument);
  CHECK_NOTHROW((ModelSpec{4, 3, FiniteRange{1.0}, Representation::full(4)}.validate()));
}

TEST_CASE("rng provenance name") {
  CHECK(std::string(rng_algorithm_name()) == "splitmix64");
}

}  // TEST_SUITE
