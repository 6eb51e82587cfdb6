#include "oqt/protocols/randomized_benchmarking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oqt/common/parallel.hpp"

namespace oqt {

PriorSpec rb_prior(double mix_eps, double angle_variance) {
  if (angle_variance < 0) throw std::invalid_argument("rb_prior: negative variance");
  const double stddev = std::sqrt(angle_variance);

  PriorSpec spec;
  spec.labels = {"H", "S"};
  spec.fiducials = {Sequence{}, Sequence{"H"}, Sequence{"H", "S", "H"}, Sequence{"S", "H", "S"}};

  SuperKet ground;
  ground.c = superket_from_bloch(Eigen::Vector3d(0, 0, 1)).c;
  spec.state = exact_state_prior(ground);
  SuperBra reader;
  reader.c = ground.c;
  spec.effect = exact_effect_prior(reader);

  ChannelPrior h;
  h.base = ChannelPrior::Base::hadamard_gate;
  h.angle_stddev = stddev;
  h.mix_eps = mix_eps;
  spec.gates.push_back(h);

  ChannelPrior s = rotation_gate_prior(Axis::z, 1.0, M_PI / 2, stddev);
  s.mix_eps = mix_eps;
  spec.gates.push_back(s);
  return spec;
}

namespace {

void length_stats(const std::vector<double>& probs, double& mean, double& variance) {
  const double n = static_cast<double>(probs.size());
  mean = std::accumulate(probs.begin(), probs.end(), 0.0) / n;
  double acc = 0;
  for (double p : probs) acc += (p - mean) * (p - mean);
  variance = acc / n;
}

// Composite transfer kernels of each Clifford under one hypothesis's
// evaluator, then chained per sequence. nf is capped by the evaluator cap.
struct CliffordKernels {
  int nf = 0;
  std::vector<double> mats;  // 24 row-major nf x nf blocks

  void build(const RepEvaluator& ev, const std::vector<std::vector<int>>& words) {
    if (ev.nf > 16) throw std::invalid_argument("rb kernels: fiducial count above the inline cap");
    nf = ev.nf;
    mats.assign(words.size() * static_cast<std::size_t>(nf) * nf, 0.0);
    std::vector<double> tmp(static_cast<std::size_t>(nf) * nf);
    for (std::size_t c = 0; c < words.size(); ++c) {
      double* out = mats.data() + c * nf * nf;
      for (int i = 0; i < nf; ++i) out[i * nf + i] = 1.0;
      for (int gid : words[c]) {
        const double* g = ev.m.data() + static_cast<std::size_t>(gid) * nf * nf;
        // tmp = g * out
        for (int i = 0; i < nf; ++i)
          for (int j = 0; j < nf; ++j) {
            double acc = 0;
            for (int k = 0; k < nf; ++k) acc += g[i * nf + k] * out[k * nf + j];
            tmp[static_cast<std::size_t>(i) * nf + j] = acc;
          }
        std::copy(tmp.begin(), tmp.end(), out);
      }
    }
  }

  double survival(const RepEvaluator& ev, const RbSequence& seq) const {
    double buf_a[16], buf_b[16];
    double* w = buf_a;
    double* x = buf_b;
    for (int i = 0; i < nf; ++i) w[i] = ev.v(i);
    auto apply = [&](int c) {
      const double* m = mats.data() + static_cast<std::size_t>(c) * nf * nf;
      for (int i = 0; i < nf; ++i) {
        double acc = 0;
        for (int j = 0; j < nf; ++j) acc += m[i * nf + j] * w[j];
        x[i] = acc;
      }
      std::swap(w, x);
    };
    for (int c : seq.cliffords) apply(c);
    apply(seq.inversion);
    double p = 0;
    for (int i = 0; i < nf; ++i) p += ev.e(i) * w[i];
    return std::min(1.0, std::max(0.0, p));
  }
};

std::vector<std::vector<int>> compile_words(const CliffordTable& table,
                                            const std::vector<std::string>& labels) {
  auto gate_id = [&](const std::string& label) {
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == label) return static_cast<int>(k);
    throw std::invalid_argument("rb: label '" + label + "' missing from the gate set");
  };
  std::vector<std::vector<int>> words;
  words.reserve(table.words.size());
  for (const auto& w : table.words) {
    std::vector<int> ids;
    ids.reserve(w.size());
    for (const auto& label : w) ids.push_back(gate_id(label));
    words.push_back(std::move(ids));
  }
  return words;
}

const CliffordTable& shared_table() {
  static const CliffordTable t = build_clifford_table();
  return t;
}

}  // namespace

SurvivalCurve rb_survival(const GateSet& gs, const RbDesign& design) {
  SurvivalCurve curve;
  curve.lengths = design.lengths;
  curve.mean.resize(static_cast<Eigen::Index>(design.lengths.size()));
  curve.variance.resize(static_cast<Eigen::Index>(design.lengths.size()));
  for (std::size_t li = 0; li < design.sequences.size(); ++li) {
    std::vector<double> probs;
    probs.reserve(design.sequences[li].size());
    for (const auto& seq : design.sequences[li])
      probs.push_back(std::min(1.0, std::max(0.0, sequence_probability(gs, seq.expanded))));
    double m, v;
    length_stats(probs, m, v);
    curve.mean(static_cast<Eigen::Index>(li)) = m;
    curve.variance(static_cast<Eigen::Index>(li)) = v;
  }
  return curve;
}

std::vector<SurvivalCurve> rb_cloud_survivals(const ParticleCloud& cloud, const RbDesign& design) {
  const auto words = compile_words(shared_table(), cloud.tmpl->labels);
  const auto& evals = cloud.evaluators();
  std::vector<SurvivalCurve> curves(static_cast<std::size_t>(cloud.size()));
  parallel_for(curves.size(), [&](std::size_t pi) {
    const RepEvaluator& ev = evals[pi];
    CliffordKernels kernels;
    kernels.build(ev, words);
    SurvivalCurve& curve = curves[pi];
    curve.lengths = design.lengths;
    curve.mean.resize(static_cast<Eigen::Index>(design.lengths.size()));
    curve.variance.resize(static_cast<Eigen::Index>(design.lengths.size()));
    std::vector<double> probs;
    for (std::size_t li = 0; li < design.sequences.size(); ++li) {
      probs.clear();
      for (const auto& seq : design.sequences[li]) probs.push_back(kernels.survival(ev, seq));
      double m, v;
      length_stats(probs, m, v);
      curve.mean(static_cast<Eigen::Index>(li)) = m;
      curve.variance(static_cast<Eigen::Index>(li)) = v;
    }
  });
  return curves;
}

DecayFit fit_decay(const std::vector<int>& lengths, const Eigen::VectorXd& mean,
                   const Eigen::VectorXd& variance) {
  const int n = static_cast<int>(lengths.size());
  if (n < 3 || mean.size() != n || variance.size() != n)
    throw std::invalid_argument("fit_decay: need at least 3 matched points");

  DecayFit fit;
  if ((mean.maxCoeff() - mean.minCoeff()) < 1e-12) {
    // constant curve: (a - b) p^m + b with p = 1 reproduces it exactly
    fit.a = std::min(1.0, std::max(0.0, mean(0)));
    fit.b = fit.a;
    fit.p = 1.0;
    fit.fidelity = 1.0;
    fit.converged = true;
    return fit;
  }

  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = 1.0 / std::max(variance(i), 1e-12);

  auto clamp_params = [](Eigen::Vector3d& t) {
    t(0) = std::min(1.0, std::max(0.0, t(0)));
    t(1) = std::min(1.0, std::max(0.0, t(1)));
    t(2) = std::min(1.0, std::max(-0.5, t(2)));
  };

  // init: floor at 1/2, amplitude from the shortest sequences, rate from a
  // log-linear pass over the decaying margin
  Eigen::Vector3d theta(std::min(1.0, std::max(0.0, mean(0))), 0.5, 0.95);
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int i = 0; i < n; ++i) {
      const double d = mean(i) - 0.5;
      if (d > 1e-6) {
        const double x = lengths[i];
        const double y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
      }
    }
    if (cnt >= 2) {
      const double det = cnt * sxx - sx * sx;
      if (std::abs(det) > 1e-12) {
        const double slope = (cnt * sxy - sx * sy) / det;
        theta(2) = std::min(0.999999, std::max(0.2, std::exp(slope)));
      }
    }
  }

  auto cost_and_model = [&](const Eigen::Vector3d& t, Eigen::VectorXd* model) {
    double cost = 0;
    for (int i = 0; i < n; ++i) {
      const double f = (t(0) - t(1)) * std::pow(t(2), lengths[i]) + t(1);
      if (model) (*model)(i) = f;
      const double r = f - mean(i);
      cost += w(i) * r * r;
    }
    return cost;
  };

  Eigen::VectorXd model(n);
  double cost = cost_and_model(theta, &model);
  double lambda = 1e-3;
  bool converged = false;
  Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
  for (int it = 0; it < 500; ++it) {
    jtj.setZero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) {
      const int m = lengths[i];
      const double pm = std::pow(theta(2), m);
      Eigen::Vector3d j;
      j(0) = pm;
      j(1) = 1.0 - pm;
      j(2) = (theta(0) - theta(1)) * m * (m >= 1 ? std::pow(theta(2), m - 1) : 0.0);
      const double r = model(i) - mean(i);
      jtj += w(i) * j * j.transpose();
      jtr += w(i) * j * r;
    }
    Eigen::Matrix3d damped = jtj;
    damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
    const Eigen::Vector3d step = damped.ldlt().solve(-jtr);
    Eigen::Vector3d trial = theta + step;
    clamp_params(trial);
    const double trial_cost = cost_and_model(trial, nullptr);
    if (trial_cost <= cost) {
      const double rel = (theta - trial).cwiseAbs().maxCoeff() /
                         std::max(1.0, theta.cwiseAbs().maxCoeff());
      theta = trial;
      cost = cost_and_model(theta, &model);
      lambda = std::max(lambda / 3.0, 1e-12);
      if (rel < 1e-10) {
        converged = true;
        break;
      }
    } else {
      lambda *= 4.0;
      if (lambda > 1e12) break;
    }
  }

  fit.a = theta(0);
  fit.b = theta(1);
  fit.p = theta(2);
  fit.fidelity = (1.0 + fit.p) / 2.0;
  fit.converged = converged;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(jtj);
  fit.covariance = lu.isInvertible() ? Eigen::Matrix3d(lu.inverse()) : Eigen::Matrix3d::Zero();
  return fit;
}

namespace {

Interval weighted_quantile_interval(std::vector<std::pair<double, double>> value_weight, double q_lo,
                                    double q_hi) {
  std::sort(value_weight.begin(), value_weight.end());
  double total = 0;
  for (const auto& [v, w] : value_weight) total += w;
  Interval out;
  double acc = 0;
  bool lo_set = false;
  out.lo = value_weight.front().first;
  out.hi = value_weight.back().first;
  for (const auto& [v, w] : value_weight) {
    acc += w / total;
    if (!lo_set && acc >= q_lo) {
      out.lo = v;
      lo_set = true;
    }
    if (acc >= q_hi) {
      out.hi = v;
      break;
    }
  }
  return out;
}

}  // namespace

RbIntervals rb_credible_interval(const std::vector<DecayFit>& fits, const Eigen::VectorXd& weights,
                                 double level) {
  if (fits.empty() || weights.size() != static_cast<Eigen::Index>(fits.size()))
    throw std::invalid_argument("rb_credible_interval: fit/weight mismatch");
  if (!(level > 0 && level < 1)) throw std::invalid_argument("rb_credible_interval: bad level");
  // split the allowed miss probability evenly across the three parameters
  const double alpha = (1.0 - level) / 3.0;
  const double q_lo = alpha / 2.0;
  const double q_hi = 1.0 - alpha / 2.0;

  auto collect = [&](auto getter) {
    std::vector<std::pair<double, double>> vw;
    vw.reserve(fits.size());
    for (std::size_t i = 0; i < fits.size(); ++i)
      vw.emplace_back(getter(fits[i]), weights(static_cast<Eigen::Index>(i)));
    return weighted_quantile_interval(std::move(vw), q_lo, q_hi);
  };

  RbIntervals out;
  out.a = collect([](const DecayFit& f) { return f.a; });
  out.b = collect([](const DecayFit& f) { return f.b; });
  out.p = collect([](const DecayFit& f) { return f.p; });
  out.fidelity = Interval{(1.0 + out.p.lo) / 2.0, (1.0 + out.p.hi) / 2.0};
  return out;
}

}  // namespace oqt
