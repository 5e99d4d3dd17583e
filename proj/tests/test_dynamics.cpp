#include <doctest.h>

#include "pspin/dynamics.hpp"

#include <cmath>

using namespace pspin;

namespace {

ModelSpec sub_spec(int n, int p) {
  return ModelSpec{n, p, Uniform{}, Representation::subspace(n)};
}

double min_pgs(const RunRecord& rec) {
  double m = 1.0;
  for (double v : rec.pgs) m = std::min(m, v);
  return m;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("bare linear-model anneal is diabatic") {
  RunRecord rec = propagate(sub_spec(10, 1), {}, Schedule{1.0}, 1e-3);
  CHECK(rec.fidelity > 3e-4);
  CHECK(rec.fidelity < 3e-3);
  CHECK(rec.pgs.front() == 1.0);
  CHECK(rec.fidelity == rec.pgs.back());
}

TEST_CASE("first-order commutator driving closes the linear model") {
  AnsatzSpec nc{AnsatzKind::NestedCommutator, 1, 0.0};
  RunRecord rec = propagate(sub_spec(20, 1), nc, Schedule{1.0}, 1e-3);
  CHECK(rec.fidelity >= 0.9999);
}

TEST_CASE("exact driving keeps the ground state") {
  AnsatzSpec exact{AnsatzKind::Exact, 1, 0.0};
  for (int n : {4, 6}) {
    RunRecord rec = propagate(sub_spec(n, 3), exact, Schedule{1.0}, 1e-3);
    CHECK(min_pgs(rec) >= 0.999);
  }
}

TEST_CASE("output grid and record fields") {
  RunRecord rec = propagate(sub_spec(6, 3), {}, Schedule{1.0}, 1e-3,
                            {.output_stride = 10});
  REQUIRE(rec.times.size() == 101);
  CHECK(rec.times.front() == 0.0);
  CHECK(rec.times.back() == doctest::Approx(1.0));
  for (std::size_t i = 2; i < rec.times.size(); ++i) {
    CHECK(rec.times[i] - rec.times[i - 1] == doctest::Approx(0.01).epsilon(1e-9));
  }
  CHECK(rec.dt == doctest::Approx(1e-3));
  CHECK(rec.rng_algorithm.empty());

  ModelSpec random{4, 3, RandomDilution{0.6, 42}, Representation::full(4)};
  RunRecord rrec = propagate(random, {}, Schedule{1.0}, 1e-2);
  CHECK(rrec.seed == 42);
  CHECK(rrec.rng_algorithm == "splitmix64");
}

TEST_CASE("even target needs the degenerate-pair projection") {
  const int n = 10;
  RunRecord rec = propagate(sub_spec(n, 2), {}, Schedule{1.0}, 1e-3);
  const double two_level = std::pow(2.0, 1.0 - n);
  CHECK(rec.fidelity > two_level / 3.0);
  CHECK(rec.fidelity < two_level * 3.0);

  // The final projection sums the two symmetric wells explicitly.
  ModelSpec spec = sub_spec(6, 2);
  Hamiltonians ham = build_hamiltonians(spec);
  Vector psi = Vector::Zero(7);
  psi(0) = std::sqrt(0.3);
  psi(3) = std::sqrt(0.2);
  psi(6) = std::sqrt(0.5);
  const Operator hp{spec.rep, ham.hp, true};
  CHECK(ground_state_probability({spec.rep, psi}, hp, true) ==
        doctest::Approx(0.8).epsilon(1e-10));
  CHECK(ground_state_probability({spec.rep, psi}, hp, false) <= 0.5 + 1e-10);
}

TEST_CASE("projection ignores state phases") {
  ModelSpec spec = sub_spec(5, 3);
  Hamiltonians ham = build_hamiltonians(spec);
  Vector psi = Vector::Random(6);
  psi.normalize();
  const Operator h{spec.rep, ham.at(0.4), true};
  const double base = ground_state_probability({spec.rep, psi}, h, false);
  Vector rotated = std::exp(kI * 0.7) * psi;
  CHECK(ground_state_probability({spec.rep, rotated}, h, false) ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("halving the step leaves the fidelity unchanged") {
  AnsatzSpec nc{AnsatzKind::NestedCommutator, 3, 0.0};
  RunRecord a = propagate(sub_spec(10, 3), nc, Schedule{1.0}, 1e-3);
  RunRecord b = propagate(sub_spec(10, 3), nc, Schedule{1.0}, 5e-4);
  CHECK(std::abs(a.fidelity - b.fidelity) < 1e-6);
}

TEST_CASE("recorded coefficients match the standalone minimizer") {
  const ModelSpec spec = sub_spec(6, 3);
  AnsatzSpec nc{AnsatzKind::NestedCommutator, 2, 0.0};
  const Schedule sched{1.0};
  RunRecord rec = propagate(spec, nc, sched, 1e-3, {.record_alphas = true});
  REQUIRE(rec.alphas_trace.size() == 1000);
  for (long i : {137L, 499L, 881L}) {
    const double lm = sched.lambda((i + 0.5) * 1e-3);
    auto [a, sol] = nc_potential(h0(spec, lm), dh0(spec), 2, 0.0, nullptr);
    CHECK((rec.alphas_trace[i] - sol.alphas).cwiseAbs().maxCoeff() <
          1e-8 * std::max(1.0, sol.alphas.cwiseAbs().maxCoeff()));
  }

  AnsatzSpec ca{AnsatzKind::Cyclic, 1, 0.0};
  RunRecord crec = propagate(spec, ca, sched, 1e-3, {.record_alphas = true});
  const double lm = sched.lambda(499.5 * 1e-3);
  auto [a, sol] = ca_potential(h0(spec, lm), dh0(spec), 0.0, nullptr);
  CHECK((crec.alphas_trace[499] - sol.alphas).cwiseAbs().maxCoeff() <
        1e-8 * std::max(1.0, sol.alphas.cwiseAbs().maxCoeff()));
}

TEST_CASE("interpolated coefficient cache tracks the direct path") {
  AnsatzSpec ca{AnsatzKind::Cyclic, 1, 0.0};
  RunRecord direct = propagate(sub_spec(8, 3), ca, Schedule{1.0}, 1e-3);
  RunRecord cached = propagate(sub_spec(8, 3), ca, Schedule{1.0}, 1e-3,
                               {.coefficient_cache = true});
  CHECK(std::abs(direct.fidelity - cached.fidelity) < 1e-6);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS((void)propagate(sub_spec(4, 3), {}, Schedule{1.0}, 0.0),
                  std::invalid_argument);
  AnsatzSpec bad{AnsatzKind::NestedCommutator, 0, 0.0};
  CHECK_THROWS_AS((void)propagate(sub_spec(4, 3), bad, Schedule{1.0}, 1e-3),
                  std::invalid_argument);
  AnsatzSpec bad_eta{AnsatzKind::Cyclic, 1, 1.5};
  CHECK_THROWS_AS((void)propagate(sub_spec(4, 3), bad_eta, Schedule{1.0}, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("two-level crossing gap") {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  GapResult res = minimal_gap(sub_spec(1, 1), grid);
  CHECK(res.gap == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(res.lambda_at_min == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_THROWS_AS((void)minimal_gap(sub_spec(1, 1), {0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("quadratic model gap narrows with a one-third power") {
  // The even target commutes with the global spin flip; the gap is measured
  // inside the symmetric sector, so the paired partner level does not count.
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  std::vector<double> logn, logg;
  for (int n : {10, 20, 40, 60}) {
    GapResult res = minimal_gap(sub_spec(n, 2), grid);
    logn.push_back(std::log(double(n)));
    logg.push_back(std::log(res.gap));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = logn.size();
  for (std::size_t i = 0; i < logn.size(); ++i) {
    sx += logn[i];
    sy += logg[i];
    sxx += logn[i] * logn[i];
    sxy += logn[i] * logg[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-1.0 / 3.0).epsilon(0.3));
}

}  // TEST_SUITE
