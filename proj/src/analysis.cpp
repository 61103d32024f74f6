#include "effham/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "effham/errors.hpp"
#include "effham/simulator.hpp"

namespace effham {

namespace {

double target_for(const std::string& label, const ChainParams& p) {
  if (label == "X") return p.h_x;
  if (label == "Z") return p.h_z;
  if (label == "ZZ") return p.J_z;
  return 0.0;
}

}  // namespace

DeviationStats deviation_stats(const std::vector<LearnRecord>& records,
                               const std::vector<std::string>& labels,
                               const ChainParams& p) {
  if (records.empty()) throw ConfigError("deviation_stats: no records");
  const Eigen::Index n = (Eigen::Index)labels.size();
  for (const auto& r : records)
    if (r.C.size() != n)
      throw ConfigError("deviation_stats: record basis size mismatch");

  DeviationStats st;
  st.labels = labels;
  st.samples.resize((Eigen::Index)records.size(), n);
  st.times.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    st.times.push_back(records[i].t);
    for (Eigen::Index a = 0; a < n; ++a)
      st.samples((Eigen::Index)i, a) =
          std::abs(records[i].C[a] - target_for(labels[(std::size_t)a], p));
  }
  st.mean_full = st.samples.colwise().mean();
  st.max_dev = st.samples.colwise().maxCoeff();
  const Eigen::Index rows = st.samples.rows();
  if (rows > 5) {
    st.mean_post5 = st.samples.bottomRows(rows - 5).colwise().mean();
  } else {
    st.mean_post5 = Eigen::VectorXd::Constant(
        n, std::numeric_limits<double>::quiet_NaN());
  }
  return st;
}

std::vector<RankedElement> rank_basis(const std::vector<DeviationStats>& stats) {
  if (stats.empty()) throw ConfigError("rank_basis: no input stats");
  const auto& labels = stats.front().labels;
  for (const auto& s : stats)
    if (s.labels != labels)
      throw ConfigError("rank_basis: inconsistent bases across settings");

  const double n_set = (double)stats.size();
  std::vector<RankedElement> out;
  out.reserve(labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a) {
    double mean = 0;
    for (const auto& s : stats) mean += s.mean_full[(Eigen::Index)a];
    mean /= n_set;
    double var = 0;
    for (const auto& s : stats) {
      const double d = s.mean_full[(Eigen::Index)a] - mean;
      var += d * d;
    }
    out.push_back({labels[a], mean, std::sqrt(var / n_set)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedElement& x, const RankedElement& y) {
                     return x.mean_deviation > y.mean_deviation;
                   });
  return out;
}

OperatorBasis truncate_basis(const OperatorBasis& basis,
                             const std::vector<RankedElement>& ranking, int N) {
  if (N < 3)
    throw ConfigError("truncate_basis: N < 3 cannot hold the bare couplings");
  if (N > basis.n())
    throw ConfigError("truncate_basis: N exceeds the basis size");

  std::set<std::string> kept{"X", "Z", "ZZ"};
  for (const auto& lbl : kept)
    if (basis.find(lbl) < 0)
      throw ConfigError("truncate_basis: basis lacks element '" + lbl + "'");

  for (const auto& r : ranking) {
    if ((int)kept.size() >= N) break;
    if (basis.find(r.label) < 0)
      throw ConfigError("truncate_basis: ranking label '" + r.label +
                        "' not in basis");
    kept.insert(r.label);
  }
  if ((int)kept.size() < N)
    throw ConfigError("truncate_basis: ranking too short for requested N");

  OperatorBasis out;
  out.options = basis.options;
  for (const auto& el : basis.elements)
    if (kept.count(el.label)) out.elements.push_back(el);
  return out;
}

SlopeFit fit_slope(const std::vector<LearnRecord>& records) {
  if (records.size() < 8)
    throw ConfigError("fit_slope: need at least 8 records");
  SlopeFit fit;
  const std::size_t n0 = (std::size_t)fit.window_start;
  const std::size_t n = records.size() - n0;

  double st = 0, sl = 0;
  for (std::size_t i = n0; i < records.size(); ++i) {
    st += records[i].t;
    sl += records[i].loss;
  }
  const double mt = st / (double)n, ml = sl / (double)n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = n0; i < records.size(); ++i) {
    const double dt = records[i].t - mt;
    sxx += dt * dt;
    sxy += dt * (records[i].loss - ml);
  }
  if (sxx == 0) throw ConfigError("fit_slope: degenerate time values");
  fit.gamma = sxy / sxx;
  fit.intercept = ml - fit.gamma * mt;
  double rss = 0;
  for (std::size_t i = n0; i < records.size(); ++i) {
    const double r = records[i].loss - (fit.intercept + fit.gamma * records[i].t);
    rss += r * r;
  }
  fit.residual_norm = std::sqrt(rss);
  return fit;
}

std::vector<double> rdm_error_series(const AdaTrajectory& traj,
                                     const std::vector<LearnRecord>& records,
                                     const std::vector<RealizedOperator>& ops,
                                     int window) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    const std::size_t i = (std::size_t)rec.checkpoint - 1;
    if (rec.checkpoint < 1 || i >= traj.checkpoints.size() ||
        std::abs(traj.checkpoint_time(i) - rec.t) > 1e-9)
      throw ConfigError("rdm_error_series: record/checkpoint misalignment");
    MatrixXc H = assemble(ops, rec.C);
    StateVector psi_l = evolve_exact(traj.initial, H, rec.t);
    MatrixXc diff = reduced_density_matrix(traj.checkpoints[i], window).rho -
                    reduced_density_matrix(psi_l, window).rho;
    out.push_back(diff.norm());
  }
  return out;
}

std::vector<DensityCurve> distribution_export(const DeviationStats& stats,
                                              double bandwidth) {
  constexpr int kGrid = 256;
  const Eigen::Index n_samples = stats.samples.rows();
  if (n_samples < 2)
    throw ConfigError("distribution_export: need at least 2 samples");

  std::vector<DensityCurve> out;
  out.reserve(stats.labels.size());
  for (std::size_t a = 0; a < stats.labels.size(); ++a) {
    DensityCurve c;
    c.label = stats.labels[a];
    c.samples.assign(stats.samples.col((Eigen::Index)a).data(),
                     stats.samples.col((Eigen::Index)a).data() + n_samples);

    const double lo = *std::min_element(c.samples.begin(), c.samples.end());
    const double hi_s = *std::max_element(c.samples.begin(), c.samples.end());
    c.degenerate = (lo == hi_s);
    const double span = hi_s > 0 ? 1.1 * hi_s : 1.0;
    const double step = span / (kGrid - 1);

    if (bandwidth > 0) {
      c.bandwidth = bandwidth;
    } else if (!c.degenerate) {
      // Silverman-style rule from the sample standard deviation.
      double mean = 0;
      for (double s : c.samples) mean += s;
      mean /= (double)c.samples.size();
      double var = 0;
      for (double s : c.samples) var += (s - mean) * (s - mean);
      var /= (double)(c.samples.size() - 1);
      c.bandwidth = 1.06 * std::sqrt(var) *
                    std::pow((double)c.samples.size(), -0.2);
    } else {
      // All samples coincide: keep the spike resolvable on the grid.
      c.bandwidth = step;
    }

    // Gaussian KDE, reflected at 0 (deviations are nonnegative), then
    // renormalized to unit trapezoid integral on the export grid.
    c.grid.resize(kGrid);
    c.density.resize(kGrid);
    const double h = c.bandwidth;
    const double norm = 1.0 / (h * std::sqrt(2 * std::numbers::pi) *
                               (double)c.samples.size());
    for (int g = 0; g < kGrid; ++g) {
      const double x = g * step;
      c.grid[(std::size_t)g] = x;
      double dens = 0;
      for (double s : c.samples) {
        const double u = (x - s) / h, v = (x + s) / h;
        dens += std::exp(-0.5 * u * u) + std::exp(-0.5 * v * v);
      }
      c.density[(std::size_t)g] = norm * dens;
    }
    double integral = 0;
    for (int g = 0; g + 1 < kGrid; ++g)
      integral +=
          0.5 * (c.density[(std::size_t)g] + c.density[(std::size_t)g + 1]) *
          step;
    if (integral > 0)
      for (double& d : c.density) d /= integral;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace effham
