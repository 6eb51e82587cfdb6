#include "oqt/smc/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oqt/common/parallel.hpp"
#include "oqt/gateset/serialization.hpp"

namespace oqt {

void ParticleCloud::check() const {
  if (!tmpl) throw std::invalid_argument("cloud: missing template");
  if (particles.cols() != tmpl->slot_count)
    throw std::invalid_argument("cloud: parameter count mismatch");
  if (weights.size() != particles.rows()) throw std::invalid_argument("cloud: weight count mismatch");
  if (weights.minCoeff() < 0) throw std::invalid_argument("cloud: negative weight");
  if (std::abs(weights.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("cloud: weights not normalized");
}

const std::vector<RepEvaluator>& ParticleCloud::evaluators() const {
  if (cache_.size() != static_cast<std::size_t>(particles.rows())) {
    cache_.assign(static_cast<std::size_t>(particles.rows()), RepEvaluator{});
    const RepTemplate& t = *tmpl;
    parallel_for(cache_.size(), [&](std::size_t i) {
      cache_[i] = make_evaluator(t, particles.row(static_cast<Eigen::Index>(i)).transpose());
    });
  }
  return cache_;
}

void ParticleCloud::invalidate_cache() { cache_.clear(); }

ParticleCloud induce_operational_prior(const PriorSpec& spec, int n_particles, Rng rng) {
  spec.validate();
  if (n_particles < 2) throw std::invalid_argument("prior induction: need at least 2 particles");

  ParticleCloud cloud;
  cloud.tmpl = std::make_shared<RepTemplate>(minimal_parameterization(spec.labels, spec.fiducials));
  cloud.particles.resize(n_particles, cloud.tmpl->slot_count);
  cloud.weights = Eigen::VectorXd::Constant(n_particles, 1.0 / n_particles);
  cloud.resample_root = rng.substream("resampling");

  Rng draw_rng = rng.substream("prior");
  const int d = 2;
  int consecutive_rejects = 0;
  for (int i = 0; i < n_particles;) {
    GateSet gs = sample_gate_set(spec, draw_rng);
    OperationalRep rep = build_operational_rep(gs, spec.fiducials);
    if (!informational_completeness(rep, d).complete) {
      if (++consecutive_rejects > 1000)
        throw std::runtime_error(
            "prior induction: 1000 consecutive draws had rank-deficient fiducial matrices; "
            "the fiducial set is not informationally complete");
      continue;
    }
    consecutive_rejects = 0;
    cloud.particles.row(i) = rep.params.transpose();
    ++i;
  }
  return cloud;
}

double effective_sample_size(const ParticleCloud& cloud) {
  const double s = cloud.weights.squaredNorm();
  if (s <= 0) return 0;
  return 1.0 / s;
}

UpdateReport bayes_update(ParticleCloud& cloud, const Datum& datum) {
  cloud.check();
  if (datum.trials <= 0 || datum.successes < 0 || datum.successes > datum.trials)
    throw std::invalid_argument("bayes_update: malformed datum");

  UpdateReport report;
  report.ess_before = effective_sample_size(cloud);

  const auto& evals = cloud.evaluators();
  const int n = cloud.size();
  std::vector<int> ids(datum.sequence.size());
  {
    const auto& labels = cloud.tmpl->labels;
    for (std::size_t s = 0; s < datum.sequence.size(); ++s) {
      int found = -1;
      for (std::size_t k = 0; k < labels.size(); ++k)
        if (labels[k] == datum.sequence[s]) {
          found = static_cast<int>(k);
          break;
        }
      if (found < 0)
        throw std::invalid_argument("bayes_update: unknown label '" + datum.sequence[s] + "'");
      ids[s] = found;
    }
  }

  // log-likelihoods, renormalized by the max before exponentiation
  Eigen::VectorXd ll(n);
  const double k = static_cast<double>(datum.successes);
  const double miss = static_cast<double>(datum.trials - datum.successes);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double p = evals[i].probability(ids.data(), ids.size(), true);
    double v = 0;
    if (k > 0) v += p > 0 ? k * std::log(p) : -std::numeric_limits<double>::infinity();
    if (miss > 0) v += p < 1 ? miss * std::log1p(-p) : -std::numeric_limits<double>::infinity();
    ll(static_cast<Eigen::Index>(i)) = v;
  });

  const double shift = ll.maxCoeff();
  if (!std::isfinite(shift)) throw InferenceFailure("bayes_update: no particle supports the datum");
  Eigen::VectorXd w = cloud.weights;
  for (int i = 0; i < n; ++i) w(i) *= std::exp(ll(i) - shift);
  const double total = w.sum();
  if (!(total > 0) || !std::isfinite(total))
    throw InferenceFailure("bayes_update: posterior weight underflow");
  cloud.weights = w / total;
  cloud.updates += 1;

  report.ess_after = effective_sample_size(cloud);
  if (report.ess_after < 0.5 * n) {
    liu_west_resample(cloud, 0.98, cloud.resample_root.substream(cloud.updates));
    report.resampled = true;
    report.ess_after = effective_sample_size(cloud);
  }
  return report;
}

void liu_west_resample(ParticleCloud& cloud, double a, Rng rng) {
  cloud.check();
  if (!(a >= 0 && a <= 1)) throw std::invalid_argument("liu_west_resample: a outside [0, 1]");
  const int n = cloud.size();
  const int p = static_cast<int>(cloud.particles.cols());

  const Eigen::VectorXd mu = posterior_mean(cloud);
  const bool perturb = a < 1.0;
  // Eigen square root of (1 - a^2) * cov. The posterior covariance is usually
  // rank-deficient (the model manifold is much thinner than the parameter
  // space), so the innovation must live in its support rather than require a
  // positive-definite factorization.
  Eigen::MatrixXd root;
  if (perturb) {
    const Eigen::MatrixXd cov = (1.0 - a * a) * posterior_covariance(cloud);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("liu_west_resample: covariance eigensolve failed");
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    root = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
  }

  // cumulative weights for inverse-CDF draws; one substream per output
  // particle keeps the result independent of scheduling
  Eigen::VectorXd cum(n);
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    acc += cloud.weights(i);
    cum(i) = acc;
  }
  cum(n - 1) = 1.0;

  Eigen::MatrixXd fresh(n, p);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    Rng ri = rng.substream(i);
    const double u = ri.uniform();
    const int src = static_cast<int>(
        std::lower_bound(cum.data(), cum.data() + n, u) - cum.data());
    if (!perturb) {
      fresh.row(static_cast<Eigen::Index>(i)) = cloud.particles.row(src);
      return;
    }
    Eigen::VectorXd x = a * cloud.particles.row(src).transpose() + (1.0 - a) * mu;
    Eigen::VectorXd z(p);
    for (int q = 0; q < p; ++q) z(q) = ri.normal(0.0, 1.0);
    x += root * z;
    fresh.row(static_cast<Eigen::Index>(i)) = x.transpose();
  });

  cloud.particles = std::move(fresh);
  cloud.weights = Eigen::VectorXd::Constant(n, 1.0 / n);
  cloud.invalidate_cache();
}

Eigen::VectorXd posterior_mean(const ParticleCloud& cloud) {
  return cloud.particles.transpose() * cloud.weights;
}

Eigen::MatrixXd posterior_covariance(const ParticleCloud& cloud) {
  const Eigen::VectorXd mu = posterior_mean(cloud);
  const Eigen::MatrixXd centered = cloud.particles.rowwise() - mu.transpose();
  return centered.transpose() * cloud.weights.asDiagonal() * centered;
}

Prediction predict(const ParticleCloud& cloud, const std::vector<int>& compiled) {
  cloud.check();
  const auto& evals = cloud.evaluators();
  const int n = cloud.size();
  Eigen::VectorXd probs(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    probs(static_cast<Eigen::Index>(i)) = evals[i].probability(compiled.data(), compiled.size(), true);
  });
  Prediction out;
  out.bme = probs.dot(cloud.weights);
  out.variance = (probs.array() - out.bme).square().matrix().dot(cloud.weights);
  return out;
}

Prediction predict(const ParticleCloud& cloud, const Sequence& s) {
  const auto& labels = cloud.tmpl->labels;
  std::vector<int> ids;
  ids.reserve(s.size());
  for (const auto& label : s) {
    int found = -1;
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == label) {
        found = static_cast<int>(k);
        break;
      }
    if (found < 0) throw std::invalid_argument("predict: unknown label '" + label + "'");
    ids.push_back(found);
  }
  return predict(cloud, ids);
}

double prediction_loss(double p_hat, double p, LossKind kind) {
  if (!(p_hat >= 0 && p_hat <= 1 && p >= 0 && p <= 1))
    throw std::invalid_argument("prediction_loss: probabilities outside [0, 1]");
  if (kind == LossKind::quadratic) {
    const double d = p_hat - p;
    return d * d;
  }
  auto safe_log = [](double x) { return std::log(std::max(x, 1e-12)); };
  double loss = 0;
  if (p > 0) loss += p * (safe_log(p) - safe_log(p_hat));
  if (p < 1) loss += (1 - p) * (safe_log(1 - p) - safe_log(1 - p_hat));
  return loss;
}

nlohmann::json checkpoint_to_json(const ParticleCloud& cloud) {
  cloud.check();
  nlohmann::json j;
  j["version"] = 1;
  j["template"] = rep_template_to_json(*cloud.tmpl);
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < cloud.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int q = 0; q < cloud.particles.cols(); ++q) row.push_back(cloud.particles(i, q));
    rows.push_back(std::move(row));
  }
  j["particles"] = std::move(rows);
  nlohmann::json w = nlohmann::json::array();
  for (int i = 0; i < cloud.size(); ++i) w.push_back(cloud.weights(i));
  j["weights"] = std::move(w);
  j["rng"] = cloud.resample_root.save_state();
  j["updates"] = cloud.updates;
  return j;
}

ParticleCloud checkpoint_from_json(const nlohmann::json& j) {
  if (j.value("version", -1) != 1) throw std::invalid_argument("checkpoint: unsupported version");
  ParticleCloud cloud;
  cloud.tmpl = std::make_shared<RepTemplate>(rep_template_from_json(j.at("template")));
  const auto& rows = j.at("particles");
  const auto& w = j.at("weights");
  if (rows.empty() || rows.size() != w.size())
    throw std::invalid_argument("checkpoint: particle/weight count mismatch");
  cloud.particles.resize(rows.size(), cloud.tmpl->slot_count);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows.at(i).size() != static_cast<std::size_t>(cloud.tmpl->slot_count))
      throw std::invalid_argument("checkpoint: parameter count mismatch");
    for (std::size_t q = 0; q < rows.at(i).size(); ++q)
      cloud.particles(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q)) =
          rows.at(i).at(q).get<double>();
  }
  cloud.weights.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    cloud.weights(static_cast<Eigen::Index>(i)) = w.at(i).get<double>();
  cloud.resample_root.restore_state(j.at("rng").get<std::string>());
  cloud.updates = j.at("updates").get<std::uint64_t>();
  cloud.check();
  return cloud;
}

}  // namespace oqt
