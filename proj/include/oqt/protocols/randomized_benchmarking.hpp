#pragma once

#include "oqt/protocols/clifford.hpp"

namespace oqt {

// Benchmarking prior: perfect SPAM, generator buttons "H" and "S" with
// Gaussian overrotation of the given variance, each convex-mixed with a fresh
// random channel at mix_eps, framed by the fiducials {(), (H), (H,S,H),
// (S,H,S)}.
PriorSpec rb_prior(double mix_eps, double angle_variance);

// Survival statistics over a benchmarking plan: at each length, the mean and
// spread of the sequence probabilities across that length's draws.
struct SurvivalCurve {
  std::vector<int> lengths;
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

SurvivalCurve rb_survival(const GateSet& gs, const RbDesign& design);

// Per-particle curves over the shared plan; every hypothesis sees the same
// sequences. Rows follow the particle order.
std::vector<SurvivalCurve> rb_cloud_survivals(const ParticleCloud& cloud, const RbDesign& design);

struct DecayFit {
  double a = 1;         // asymptote at m = 0 (amplitude end)
  double b = 0.5;       // floor
  double p = 1;         // decay rate per Clifford
  double fidelity = 1;  // (1 + p) / 2
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  bool converged = false;
};

// Weighted Levenberg-Marquardt fit of mean(m) = (a - b) p^m + b with weights
// 1/variance (floored), boxes a, b in [0, 1] and p in [-0.5, 1]. Constant
// curves short-circuit to the degenerate exact fit p = 1.
DecayFit fit_decay(const std::vector<int>& lengths, const Eigen::VectorXd& mean,
                   const Eigen::VectorXd& variance);

struct Interval {
  double lo = 0;
  double hi = 0;
  double width() const { return hi - lo; }
};

struct RbIntervals {
  Interval a, b, p, fidelity;
};

// Joint credible region from per-particle fits: each parameter gets a
// weighted-quantile interval at level 1 - (1-level)/3, so the box holds the
// joint at >= level (union bound over the three parameters).
RbIntervals rb_credible_interval(const std::vector<DecayFit>& fits, const Eigen::VectorXd& weights,
                                 double level = 0.95);

}  // namespace oqt
