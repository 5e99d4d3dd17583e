#include "pspin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>

namespace pspin {

namespace {

using EigSolver = Eigen::SelfAdjointEigenSolver<Matrix>;

/// Per-step supplier of the gauge potential at the midpoint lambda.
class CdEvaluator {
 public:
  virtual ~CdEvaluator() = default;
  virtual Matrix potential(double lambda, RealVector* alphas_out) = 0;
};

double combine_traces(double full, double sym, const Representation& rep, double eta) {
  if (rep.kind == RepKind::MaxSpinSubspace) return full;
  return eta * full + (1.0 - 2.0 * eta) * sym;
}

/// Commutator-ansatz coefficients and potential evaluated in the
/// instantaneous eigenbasis, where the k-fold commutator with H0 is an
/// elementwise power of the level spacings. Algebraically identical to the
/// recursion in nested_operators; avoids order-many dense products per step.
class CommutatorEvaluator final : public CdEvaluator {
 public:
  CommutatorEvaluator(const Hamiltonians& ham, Matrix dh, int order, double eta,
                      const DickeEmbedding* emb)
      : ham_(ham), dh_(std::move(dh)), order_(order), eta_(eta) {
    use_sym_ = ham.rep.kind == RepKind::FullHilbert && (1.0 - 2.0 * eta) != 0.0;
    if (use_sym_) emb_basis_ = emb->basis;
  }

  Matrix potential(double lambda, RealVector* alphas_out) override {
    const Eigen::Index d = ham_.rep.dim;
    EigSolver es(ham_.at(lambda));
    const RealVector& eps = es.eigenvalues();
    const Matrix& w = es.eigenvectors();
    const Matrix dtil = w.adjoint() * dh_ * w;
    const RealMatrix abs2 = dtil.cwiseAbs2();
    RealMatrix omega(d, d), om2(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
      for (Eigen::Index l = 0; l < d; ++l) {
        omega(m, l) = eps(m) - eps(l);
        om2(m, l) = omega(m, l) * omega(m, l);
      }
    }

    // Full-space trace moments sum |dH|^2 w^{2r}.
    std::vector<double> moment(2 * order_ + 1);
    RealMatrix pw = abs2;
    moment[0] = pw.sum();
    for (int r = 1; r <= 2 * order_; ++r) {
      pw.array() *= om2.array();
      moment[r] = pw.sum();
    }

    RealMatrix sym(order_ + 1, order_ + 1);
    sym.setZero();
    if (use_sym_) {
      const Matrix vt = w.adjoint() * emb_basis_;
      std::vector<Matrix> q(order_ + 1);
      Matrix even = dtil;
      q[0] = even * vt;
      for (int k = 1; k <= order_; ++k) {
        even.array() *= om2.array();
        q[k] = even * vt;
      }
      for (int j = 0; j <= order_; ++j) {
        for (int k = j; k <= order_; ++k) {
          double acc = 0.0;
          for (Eigen::Index col = 0; col < vt.cols(); ++col) {
            acc += q[j].col(col).dot(q[k].col(col)).real();
          }
          sym(j, k) = acc;
          sym(k, j) = acc;
        }
      }
    }

    const double a0 = combine_traces(moment[0], sym(0, 0), ham_.rep, eta_);
    RealVector b(order_);
    RealMatrix c(order_, order_);
    for (int k = 1; k <= order_; ++k) {
      b(k - 1) = combine_traces(moment[k], sym(0, k), ham_.rep, eta_);
      for (int j = 1; j <= order_; ++j) {
        c(j - 1, k - 1) = combine_traces(moment[j + k], sym(j, k), ham_.rep, eta_);
      }
    }
    ActionSolution sol = detail::solve_normal_equations(a0, b, c);
    if (alphas_out) *alphas_out = sol.alphas;

    // A = sum_k alpha_k i w^{2k-1} dH in the eigenbasis.
    RealMatrix fac = sol.alphas(0) * omega;
    RealMatrix odd = omega;
    for (int k = 2; k <= order_; ++k) {
      odd.array() *= om2.array();
      fac.array() += sol.alphas(k - 1) * odd.array();
    }
    Matrix a_eig = kI * (fac.array() * dtil.array()).matrix();
    Matrix a = w * a_eig * w.adjoint();
    return 0.5 * (a + a.adjoint());
  }

 private:
  const Hamiltonians& ham_;
  Matrix dh_;
  int order_;
  double eta_;
  bool use_sym_ = false;
  Matrix emb_basis_;
};

/// Fixed-operator basis (cyclic ansatz). The response i[A_j, H0(lambda)]
/// is linear in lambda, so the normal equations are assembled from
/// endpoint traces precomputed once per run.
class FixedBasisEvaluator final : public CdEvaluator {
 public:
  FixedBasisEvaluator(const Hamiltonians& ham, const Matrix& dh,
                      VariationalBasis basis, double eta, const DickeEmbedding* emb,
                      std::optional<double> cache_grid)
      : rep_(ham.rep) {
    const int l = static_cast<int>(basis.ops.size());
    for (Operator& op : basis.ops) ops_.push_back(std::move(op.mat));
    std::vector<Matrix> mq(l), mp(l);
    for (int j = 0; j < l; ++j) {
      mq[j] = kI * (ops_[j] * ham.hq - ham.hq * ops_[j]);
      mp[j] = kI * (ops_[j] * ham.hp - ham.hp * ops_[j]);
    }
    a0_ = detail::wtrace_prod(dh, dh, rep_, eta, emb).real();
    bq_ = RealVector(l);
    bp_ = RealVector(l);
    cqq_ = RealMatrix(l, l);
    cqp_ = RealMatrix(l, l);
    cpq_ = RealMatrix(l, l);
    cpp_ = RealMatrix(l, l);
    for (int j = 0; j < l; ++j) {
      bq_(j) = detail::wtrace_prod(dh, mq[j], rep_, eta, emb).real();
      bp_(j) = detail::wtrace_prod(dh, mp[j], rep_, eta, emb).real();
      for (int k = 0; k < l; ++k) {
        cqq_(j, k) = detail::wtrace_prod(mq[j], mq[k], rep_, eta, emb).real();
        cqp_(j, k) = detail::wtrace_prod(mq[j], mp[k], rep_, eta, emb).real();
        cpq_(j, k) = detail::wtrace_prod(mp[j], mq[k], rep_, eta, emb).real();
        cpp_(j, k) = detail::wtrace_prod(mp[j], mp[k], rep_, eta, emb).real();
      }
    }
    if (cache_grid) build_cache(*cache_grid);
  }

  Matrix potential(double lambda, RealVector* alphas_out) override {
    const RealVector alphas = cache_.empty() ? solve(lambda) : interpolate(lambda);
    if (alphas_out) *alphas_out = alphas;
    Matrix a = Matrix::Zero(rep_.dim, rep_.dim);
    for (std::size_t j = 0; j < ops_.size(); ++j) {
      a.noalias() += alphas(static_cast<int>(j)) * ops_[j];
    }
    return a;
  }

 private:
  RealVector solve(double lm) const {
    const double q = 1.0 - lm;
    const RealVector b = q * bq_ + lm * bp_;
    const RealMatrix c =
        q * q * cqq_ + q * lm * (cqp_ + cpq_) + lm * lm * cpp_;
    return detail::solve_normal_equations(a0_, b, 0.5 * (c + c.transpose())).alphas;
  }

  void build_cache(double grid) {
    const int nodes = static_cast<int>(std::ceil(1.0 / grid)) + 1;
    cache_grid_ = 1.0 / (nodes - 1);
    cache_.reserve(nodes);
    for (int i = 0; i < nodes; ++i) cache_.push_back(solve(i * cache_grid_));
  }

  RealVector interpolate(double lm) const {
    const double x = std::clamp(lm, 0.0, 1.0) / cache_grid_;
    const int i = std::min(static_cast<int>(x), static_cast<int>(cache_.size()) - 2);
    const double f = x - i;
    return (1.0 - f) * cache_[i] + f * cache_[i + 1];
  }

  Representation rep_;
  std::vector<Matrix> ops_;
  double a0_ = 0.0;
  RealVector bq_, bp_;
  RealMatrix cqq_, cqp_, cpq_, cpp_;
  std::vector<RealVector> cache_;
  double cache_grid_ = 0.0;
};

class ExactEvaluator final : public CdEvaluator {
 public:
  ExactEvaluator(const Hamiltonians& ham, Matrix dh) : ham_(ham), dh_(std::move(dh)) {}

  Matrix potential(double lambda, RealVector* alphas_out) override {
    if (alphas_out) *alphas_out = RealVector();
    Operator h{ham_.rep, ham_.at(lambda), true};
    Operator d{ham_.rep, dh_, true};
    return exact_cd(h, d).mat;
  }

 private:
  const Hamiltonians& ham_;
  Matrix dh_;
};

std::unique_ptr<CdEvaluator> make_evaluator(const Hamiltonians& ham, const Matrix& dh,
                                            const AnsatzSpec& ansatz,
                                            const DickeEmbedding* emb,
                                            const PropagateOptions& opts) {
  switch (ansatz.kind) {
    case AnsatzKind::NestedCommutator:
      return std::make_unique<CommutatorEvaluator>(ham, dh, ansatz.order, ansatz.eta,
                                                   emb);
    case AnsatzKind::Cyclic:
      return std::make_unique<FixedBasisEvaluator>(
          ham, dh, ca_basis(ham.rep.n, ham.rep), ansatz.eta, emb,
          opts.coefficient_cache ? std::optional<double>(opts.cache_grid)
                                 : std::nullopt);
    case AnsatzKind::Exact:
      return std::make_unique<ExactEvaluator>(ham, dh);
    case AnsatzKind::None:
      break;
  }
  return nullptr;
}

bool needs_embedding(const ModelSpec& spec, const AnsatzSpec& ansatz) {
  if (spec.rep.kind != RepKind::FullHilbert) return false;
  if (ansatz.kind != AnsatzKind::NestedCommutator && ansatz.kind != AnsatzKind::Cyclic) {
    return false;
  }
  return (1.0 - 2.0 * ansatz.eta) != 0.0;
}

}  // namespace

void AnsatzSpec::validate() const {
  if (kind == AnsatzKind::NestedCommutator && order < 1) {
    throw std::invalid_argument("ansatz: commutator order must be >= 1");
  }
  if (eta < 0.0 || eta > 1.0) {
    throw std::invalid_argument("ansatz: trace weight must be in [0, 1]");
  }
}

RunRecord propagate(const ModelSpec& spec, const AnsatzSpec& ansatz,
                    const Schedule& sched, double dt, const PropagateOptions& opts) {
  spec.validate();
  ansatz.validate();
  if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
  const double total = sched.total_time;
  const long steps = std::max(1L, std::lround(total / dt));
  const double h = total / static_cast<double>(steps);
  const int stride = std::max(1, opts.output_stride);

  Hamiltonians ham = build_hamiltonians(spec);
  const Matrix dh = ham.difference();
  std::optional<DickeEmbedding> emb;
  if (needs_embedding(spec, ansatz)) emb = dicke_embedding(spec.n);
  std::unique_ptr<CdEvaluator> evaluator =
      make_evaluator(ham, dh, ansatz, emb ? &*emb : nullptr, opts);

  EigSolver es(ham.hq);
  Vector psi = es.eigenvectors().col(0);

  RunRecord rec;
  rec.spec = spec;
  rec.ansatz = ansatz;
  rec.total_time = total;
  rec.dt = h;
  if (const auto* rd = std::get_if<RandomDilution>(&spec.variant)) {
    rec.seed = rd->seed;
    rec.rng_algorithm = rng_algorithm_name();
  }
  rec.times.push_back(0.0);
  rec.pgs.push_back(1.0);  // state starts in the ground level

  const bool sum_degenerate = spec.p % 2 == 0;
  RealVector alphas;
  for (long i = 0; i < steps; ++i) {
    const double tm = (static_cast<double>(i) + 0.5) * h;
    const double lm = sched.lambda(tm);
    Matrix step_h = ham.at(lm);
    if (evaluator) {
      const double ld = sched.lambda_dot(tm);
      step_h.noalias() +=
          ld * evaluator->potential(lm, opts.record_alphas ? &alphas : nullptr);
      if (opts.record_alphas) rec.alphas_trace.push_back(alphas);
    }
    const double herm_dev = (step_h - step_h.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-9 * std::max(1.0, step_h.cwiseAbs().maxCoeff())) {
      throw std::logic_error("propagate: step Hamiltonian lost Hermiticity");
    }
    es.compute(step_h);
    const Vector phases =
        (-kI * h * es.eigenvalues().array().cast<std::complex<double>>()).exp();
    psi = es.eigenvectors() *
          (phases.array() * (es.eigenvectors().adjoint() * psi).array()).matrix();
    if (std::abs(psi.norm() - 1.0) > 1e-6) {
      throw NumericalAbort("propagate: state norm drifted beyond 1e-6");
    }
    if ((i + 1) % stride == 0 || i + 1 == steps) {
      const double t = static_cast<double>(i + 1) * h;
      const Operator bare{spec.rep, ham.at(sched.lambda(t)), true};
      rec.times.push_back(t);
      rec.pgs.push_back(
          ground_state_probability({spec.rep, psi}, bare, sum_degenerate));
    }
  }
  rec.fidelity = rec.pgs.back();
  return rec;
}

double ground_state_probability(const QuantumState& state, const Operator& bare_h,
                                bool degenerate_sum) {
  if (state.rep.dim != bare_h.rep.dim) {
    throw std::invalid_argument("state and Hamiltonian dimension mismatch");
  }
  EigSolver es(bare_h.mat);
  const RealVector& eps = es.eigenvalues();
  double p = std::norm(es.eigenvectors().col(0).dot(state.amplitudes));
  if (degenerate_sum) {
    for (Eigen::Index k = 1; k < eps.size() && eps(k) - eps(0) < 1e-10; ++k) {
      p += std::norm(es.eigenvectors().col(k).dot(state.amplitudes));
    }
  }
  return p;
}

GapResult minimal_gap(const ModelSpec& spec, const std::vector<double>& lambda_grid) {
  spec.validate();
  if (lambda_grid.size() < 3) {
    throw std::invalid_argument("gap scan needs at least three grid points");
  }
  Hamiltonians ham = build_hamiltonians(spec);

  // For even p the uniform model commutes with the global spin flip and the
  // evolution never leaves the flip-symmetric sector, so the odd-parity
  // partner of the ground state (an exponentially small splitting) is not a
  // reachable excitation. Reduce to the symmetric sector before measuring.
  Matrix sym;
  if (spec.p % 2 == 0 && std::holds_alternative<Uniform>(spec.variant)) {
    const Eigen::Index dim = spec.rep.dim;
    auto flip = [&](Eigen::Index i) {
      return spec.rep.kind == RepKind::MaxSpinSubspace
                 ? spec.rep.n - i
                 : ~i & (dim - 1);
    };
    std::vector<Eigen::Index> reps;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i <= flip(i)) reps.push_back(i);
    }
    sym = Matrix::Zero(dim, static_cast<Eigen::Index>(reps.size()));
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const Eigen::Index i = reps[k], j = flip(i);
      if (i == j) {
        sym(i, k) = 1.0;
      } else {
        sym(i, k) = sym(j, k) = 1.0 / std::sqrt(2.0);
      }
    }
  }

  EigSolver es;
  auto gap_at = [&](double lm) {
    Matrix h = ham.at(lm);
    if (sym.size() > 0) h = sym.adjoint() * h * sym;
    es.compute(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(1) - es.eigenvalues()(0);
  };

  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double g = gap_at(lambda_grid[i]);
    if (g < best_gap) {
      best_gap = g;
      best = i;
    }
  }
  double lo = lambda_grid[best > 0 ? best - 1 : 0];
  double hi = lambda_grid[std::min(best + 1, lambda_grid.size() - 1)];
  double best_lm = lambda_grid[best];
  while (hi - lo > 1e-4) {
    const int refine = 10;
    const double step = (hi - lo) / refine;
    int local = 0;
    double local_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= refine; ++i) {
      const double lm = lo + i * step;
      const double g = gap_at(lm);
      if (g < local_gap) {
        local_gap = g;
        local = i;
      }
    }
    best_gap = local_gap;
    best_lm = lo + local * step;
    const double new_lo = lo + std::max(0, local - 1) * step;
    const double new_hi = lo + std::min(refine, local + 1) * step;
    lo = new_lo;
    hi = new_hi;
  }
  return {best_gap, best_lm};
}

}  // namespace pspin
