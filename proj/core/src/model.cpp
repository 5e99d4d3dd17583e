#include "pspin/model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pspin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Weyl-sequence mixer; splittable and cheap, draws are a pure function of
// (seed, draw index).
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_time(double t, double total) {
  if (t < 0.0 || t > total) {
    throw std::out_of_range("time outside the annealing window [0, T]");
  }
}

// Calls fn once per lexicographic index tuple in [1,n]^p.
template <typename Fn>
void for_each_tuple(int n, int p, Fn&& fn) {
  std::vector<int> idx(p, 1);
  for (;;) {
    fn(std::span<const int>(idx));
    int j = p - 1;
    while (j >= 0 && idx[j] == n) {
      idx[j] = 1;
      --j;
    }
    if (j < 0) break;
    ++idx[j];
  }
}

}  // namespace

void ModelSpec::validate() const {
  if (n < 1) throw std::invalid_argument("model: n must be positive");
  if (p < 1) throw std::invalid_argument("model: p must be positive");
  if (rep.n != n) throw std::invalid_argument("model: representation size mismatch");
  if (const auto* fr = std::get_if<FiniteRange>(&variant)) {
    if (fr->range_exponent < 0.0) {
      throw std::invalid_argument("model: range exponent must be nonnegative");
    }
    if (rep.kind != RepKind::FullHilbert) {
      throw std::invalid_argument("model: finite-range variant breaks spin symmetry; "
                                  "use the full Hilbert space");
    }
    if (p == 3 && n == 3) {
      throw std::invalid_argument("model: finite-range couplings are degenerate for "
                                  "n = 3, p = 3 (all distances equal 1)");
    }
  } else if (const auto* rd = std::get_if<RandomDilution>(&variant)) {
    if (rd->survival_probability < 0.0 || rd->survival_probability > 1.0) {
      throw std::invalid_argument("model: survival probability must be in [0, 1]");
    }
    if (rep.kind != RepKind::FullHilbert) {
      throw std::invalid_argument("model: random variant breaks spin symmetry; "
                                  "use the full Hilbert space");
    }
  }
}

ModelSpec ModelSpec::with_n(int new_n) const {
  ModelSpec out = *this;
  out.n = new_n;
  out.rep = rep.kind == RepKind::MaxSpinSubspace ? Representation::subspace(new_n)
                                                 : Representation::full(new_n);
  return out;
}

double Schedule::lambda(double t) const {
  check_time(t, total_time);
  const double v = std::sin(kPi * t / (2.0 * total_time));
  const double u = std::sin(0.5 * kPi * v * v);
  return u * u;
}

double Schedule::lambda_dot(double t) const {
  check_time(t, total_time);
  const double v = kPi * t / (2.0 * total_time);
  const double sv = std::sin(v);
  const double u = 0.5 * kPi * sv * sv;
  return kPi * kPi / (4.0 * total_time) * std::sin(2.0 * u) * std::sin(2.0 * v);
}

double tuple_distance(std::span<const int> indices) {
  const int p = static_cast<int>(indices.size());
  if (p < 2) return 1.0;
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k) {
      if (indices[j] == indices[k]) return 1.0;
    }
  }
  double sum = 0.0;
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k) {
      sum += std::abs(indices[k] - indices[j]);
    }
  }
  const double z = static_cast<double>(p) * (p - 1) * (p + 1) / 6.0;
  return sum / z;
}

Operator driver_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  SpinOps s = collective_spin_ops(spec.n, spec.rep);
  return hermitian_operator(spec.rep, -2.0 * s.x.mat);
}

std::vector<double> coupling_table(const ModelSpec& spec) {
  spec.validate();
  std::size_t count = 1;
  for (int i = 0; i < spec.p; ++i) count *= static_cast<std::size_t>(spec.n);
  std::vector<double> table;
  table.reserve(count);
  if (const auto* fr = std::get_if<FiniteRange>(&spec.variant)) {
    for_each_tuple(spec.n, spec.p, [&](std::span<const int> idx) {
      table.push_back(1.0 / std::pow(tuple_distance(idx), fr->range_exponent));
    });
  } else if (const auto* rd = std::get_if<RandomDilution>(&spec.variant)) {
    SplitMix64 rng{rd->seed};
    for_each_tuple(spec.n, spec.p, [&](std::span<const int>) {
      table.push_back(rng.uniform() < rd->survival_probability ? 1.0 : 0.0);
    });
  } else {
    table.assign(count, 1.0);
  }
  return table;
}

Operator target_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  const double scale = 1.0 / ipow(static_cast<double>(spec.n), spec.p - 1);
  Matrix m = Matrix::Zero(spec.rep.dim, spec.rep.dim);
  if (spec.rep.kind == RepKind::MaxSpinSubspace) {
    for (int w = 0; w <= spec.n; ++w) {
      m(w, w) = -ipow(static_cast<double>(spec.n - 2 * w), spec.p) * scale;
    }
    return Operator{spec.rep, std::move(m), true};
  }
  if (std::holds_alternative<Uniform>(spec.variant)) {
    for (Eigen::Index b = 0; b < spec.rep.dim; ++b) {
      const int w = std::popcount(static_cast<unsigned long long>(b));
      m(b, b) = -ipow(static_cast<double>(spec.n - 2 * w), spec.p) * scale;
    }
    return Operator{spec.rep, std::move(m), true};
  }
  const std::vector<double> couplings = coupling_table(spec);
  RealVector diag = RealVector::Zero(spec.rep.dim);
  std::size_t t = 0;
  for_each_tuple(spec.n, spec.p, [&](std::span<const int> idx) {
    const double c = couplings[t++];
    if (c == 0.0) return;
    for (Eigen::Index b = 0; b < spec.rep.dim; ++b) {
      int sign = 1;
      for (int j = 0; j < spec.p; ++j) {
        const Eigen::Index mask = Eigen::Index{1} << (spec.n - idx[j]);
        if (b & mask) sign = -sign;
      }
      diag(b) += c * sign;
    }
  });
  for (Eigen::Index b = 0; b < spec.rep.dim; ++b) m(b, b) = -diag(b) * scale;
  return Operator{spec.rep, std::move(m), true};
}

Operator h0(const ModelSpec& spec, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::out_of_range("lambda outside [0, 1]");
  }
  Hamiltonians ham = build_hamiltonians(spec);
  return hermitian_operator(spec.rep, ham.at(lambda));
}

Operator dh0(const ModelSpec& spec) {
  Hamiltonians ham = build_hamiltonians(spec);
  return hermitian_operator(spec.rep, ham.difference());
}

Hamiltonians build_hamiltonians(const ModelSpec& spec) {
  return {spec.rep, driver_hamiltonian(spec).mat, target_hamiltonian(spec).mat};
}

const char* rng_algorithm_name() { return "splitmix64"; }

}  // namespace pspin
