#include "effham/learner.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <random>

#include "effham/eigh.hpp"
#include "effham/errors.hpp"
#include "effham/kernels.hpp"

namespace effham {

namespace {

constexpr Complex kI{0.0, 1.0};

double sign_at(std::uint64_t sign, std::uint64_t n) {
  return (std::popcount(sign & ~n) & 1) ? -1.0 : 1.0;
}

// <phi| exp(-itH) |psi0> given the eigendecomposition of H.
Complex evolved_overlap(const Eigh& eig, const VectorXc& psi0,
                        const VectorXc& target, double t, VectorXc& a,
                        VectorXc& b, VectorXc& f) {
  const auto& V = eig.vectors;
  a.noalias() = V.adjoint() * psi0;
  b.noalias() = V.adjoint() * target;
  f.resize(eig.values.size());
  for (Eigen::Index j = 0; j < f.size(); ++j)
    f[j] = std::exp(-kI * (t * eig.values[j]));
  return (b.conjugate().array() * f.array() * a.array()).sum();
}

}  // namespace

std::string to_string(Termination t) {
  return t == Termination::cutoff ? "cutoff" : "epoch_limit";
}

MatrixXc assemble(const std::vector<RealizedOperator>& ops,
                  const Eigen::VectorXd& C) {
  if (ops.empty()) throw ConfigError("assemble: empty basis");
  if (C.size() != (Eigen::Index)ops.size())
    throw ConfigError("assemble: coefficient count does not match basis size");
  const std::uint64_t d = 1ull << ops.front().L;
  MatrixXc H = MatrixXc::Zero(d, d);
  for (std::size_t a = 0; a < ops.size(); ++a) {
    if (C[a] == 0.0) continue;
    for (const auto& s : ops[a].strings) {
      const Complex w = C[a] * s.prefactor;
      for (std::uint64_t n = 0; n < d; ++n)
        H(n ^ s.flip, n) += w * sign_at(s.sign, n);
    }
  }
  return H;
}

double loss_value(const std::vector<RealizedOperator>& ops,
                  const Eigen::VectorXd& C, const VectorXc& psi0,
                  const VectorXc& target, double t) {
  Eigh eig = hermitian_eigh(assemble(ops, C));
  VectorXc a, b, f;
  Complex u = evolved_overlap(eig, psi0, target, t, a, b, f);
  return 1.0 - std::norm(u);
}

LossGradient loss_and_gradient(const std::vector<RealizedOperator>& ops,
                               const Eigen::VectorXd& C, const VectorXc& psi0,
                               const VectorXc& target, double t,
                               double degeneracy_gap_rel) {
  const Eigen::Index d = psi0.size();
  Eigh eig = hermitian_eigh(assemble(ops, C));
  const auto& V = eig.vectors;
  const auto& lam = eig.values;

  VectorXc a, b, f;
  const Complex u = evolved_overlap(eig, psi0, target, t, a, b, f);

  LossGradient out;
  out.loss = 1.0 - std::norm(u);
  out.grad.resize(C.size());

  // T_jk = Gamma_jk conj(b_j) a_k with Gamma the divided differences of
  // exp(-itx); then K = conj(V) T V^T collects everything so that the
  // directional derivative along O_a is the plain entry sum of K o O_a.
  const double gap =
      degeneracy_gap_rel * std::max(std::abs(lam[0]), std::abs(lam[d - 1]));
  MatrixXc T(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex bj = std::conj(b[j]);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double dl = lam[j] - lam[k];
      Complex g;
      if (std::abs(dl) <= gap) {  // <= so exact ties survive even when gap = 0
        g = -kI * t * std::exp(-kI * (t * 0.5 * (lam[j] + lam[k])));
      } else {
        g = (f[j] - f[k]) / dl;
      }
      T(j, k) = g * bj * a[k];
    }
  }
  MatrixXc K(d, d);
  {
    MatrixXc Vc = V.conjugate();
    MatrixXc X = Vc * T;
    K.noalias() = X * V.transpose();
  }

  const Complex cu = std::conj(u);
  const std::uint64_t dim = (std::uint64_t)d;
  for (std::size_t al = 0; al < ops.size(); ++al) {
    Complex v = 0;
    for (const auto& s : ops[al].strings) {
      Complex acc = 0;
      for (std::uint64_t n = 0; n < dim; ++n)
        acc += sign_at(s.sign, n) * K(n ^ s.flip, n);
      v += s.prefactor * acc;
    }
    const double g = -2.0 * std::real(cu * v);
    if (!std::isfinite(g))
      throw OptimizerFailure("non-finite gradient for basis element '" +
                             ops[al].label + "'");
    out.grad[al] = g;
  }
  return out;
}

LearnRecord optimize(const std::vector<RealizedOperator>& ops,
                     const Eigen::VectorXd& C_start, const VectorXc& psi0,
                     const VectorXc& target, double t, const AdamConfig& cfg) {
  std::mt19937_64 rng(cfg.rng_seed);

  auto eval = [&](const Eigen::VectorXd& C) {
    try {
      return loss_and_gradient(ops, C, psi0, target, t, cfg.degeneracy_gap);
    } catch (const EigensolverFailure&) {
      // Paper-style fallback: nudge the coefficients and retry once.
      Eigen::VectorXd Cj = C;
      std::normal_distribution<double> noise(0.0, cfg.jitter_scale);
      for (Eigen::Index i = 0; i < Cj.size(); ++i) Cj[i] += noise(rng);
      return loss_and_gradient(ops, Cj, psi0, target, t, cfg.degeneracy_gap);
    }
  };

  LearnRecord rec;
  rec.t = t;

  Eigen::VectorXd C = C_start;
  Eigen::VectorXd m = Eigen::VectorXd::Zero(C.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(C.size());

  LossGradient lg = eval(C);
  rec.C = C;
  rec.loss = lg.loss;
  rec.loss_last = lg.loss;
  rec.epochs_used = 0;
  if (lg.loss < cfg.l_min) {
    rec.terminated_by = Termination::cutoff;
    return rec;
  }

  double b1p = 1.0, b2p = 1.0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    if (!std::isfinite(lg.loss))
      throw OptimizerFailure("non-finite loss at epoch " +
                             std::to_string(epoch - 1));
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * lg.grad;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * lg.grad.cwiseProduct(lg.grad);
    b1p *= cfg.beta1;
    b2p *= cfg.beta2;
    const double corr1 = 1.0 / (1.0 - b1p);
    const double corr2 = 1.0 / (1.0 - b2p);
    C -= cfg.alpha *
         (corr1 * m.array() / ((corr2 * v.array()).sqrt() + cfg.eps)).matrix();

    lg = eval(C);
    rec.loss_last = lg.loss;
    rec.epochs_used = epoch;
    if (lg.loss < rec.loss) {
      rec.loss = lg.loss;
      rec.C = C;
    }
    if (lg.loss < cfg.l_min) {
      rec.terminated_by = Termination::cutoff;
      return rec;
    }
  }
  rec.terminated_by = Termination::epoch_limit;
  return rec;
}

Eigen::VectorXd target_coupling_vector(const std::vector<RealizedOperator>& ops,
                                       const ChainParams& p) {
  Eigen::VectorXd C = Eigen::VectorXd::Zero(ops.size());
  bool have_x = false, have_z = false, have_zz = false;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].label == "X") C[i] = p.h_x, have_x = true;
    if (ops[i].label == "Z") C[i] = p.h_z, have_z = true;
    if (ops[i].label == "ZZ") C[i] = p.J_z, have_zz = true;
  }
  if (!have_x || !have_z || !have_zz)
    throw ConfigError("basis lacks one of the target labels X, Z, ZZ");
  return C;
}

std::vector<LearnRecord> learn_trajectory(const AdaTrajectory& traj,
                                          const std::vector<RealizedOperator>& ops,
                                          const AdamConfig& cfg,
                                          const LearnOptions& opt) {
  if (traj.checkpoints.empty())
    throw ConfigError("learn_trajectory: trajectory has no checkpoints");
  if (opt.stride < 1) throw ConfigError("learn_trajectory: stride must be >= 1");

  Eigen::VectorXd C = target_coupling_vector(ops, traj.params);
  std::vector<LearnRecord> records;
  for (std::size_t i = 0; i < traj.checkpoints.size(); i += opt.stride) {
    const double t = traj.checkpoint_time(i);
    LearnRecord rec;
    try {
      rec = optimize(ops, C, traj.initial.amps, traj.checkpoints[i].amps, t, cfg);
    } catch (const OptimizerFailure& e) {
      throw OptimizerFailure("checkpoint " + std::to_string(traj.steps[i].m) +
                             ": " + e.what());
    }
    rec.checkpoint = traj.steps[i].m;
    C = rec.C;  // warm start for the next checkpoint
    records.push_back(std::move(rec));
    if (opt.max_checkpoints > 0 &&
        (int)records.size() >= opt.max_checkpoints)
      break;
  }
  return records;
}

}  // namespace effham
