#pragma once

#include <json.hpp>

#include "oqt/smc/prior.hpp"

namespace oqt {

// One measurement record: `successes` detections out of `trials` repetitions
// of the button sequence.
struct Datum {
  Sequence sequence;
  long trials = 0;
  long successes = 0;
};

// Raised when every particle becomes incompatible with a datum (total weight
// underflows to zero): the prior cannot explain the data.
struct InferenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParticleCloud {
  std::shared_ptr<const RepTemplate> tmpl;
  Eigen::MatrixXd particles;  // N x slot_count, row per hypothesis
  Eigen::VectorXd weights;    // N, nonnegative, sums to 1
  Rng resample_root{0};       // lineage root; one substream per update index
  std::uint64_t updates = 0;  // Bayes updates applied so far

  int size() const { return static_cast<int>(particles.rows()); }
  void check() const;  // weight normalization to 1e-12, shape agreement

  // Per-particle evaluation kernels, built lazily and dropped whenever the
  // particle matrix changes.
  const std::vector<RepEvaluator>& evaluators() const;
  void invalidate_cache();

 private:
  mutable std::vector<RepEvaluator> cache_;
};

// Draws gate sets from the prior, projects each into operational form, and
// keeps only draws whose fiducial matrix has full rank. More than 1000
// consecutive rejections aborts: the fiducial set itself is deficient.
ParticleCloud induce_operational_prior(const PriorSpec& spec, int n_particles, Rng rng);

double effective_sample_size(const ParticleCloud& cloud);

struct UpdateReport {
  double ess_before = 0;
  double ess_after = 0;
  bool resampled = false;
};

// Reweights by the binomial likelihood of the datum (probabilities clipped to
// [0, 1] at evaluation), renormalizes, and resamples when ESS drops below
// half the cloud size. Data are processed one record at a time, in the order
// given.
UpdateReport bayes_update(ParticleCloud& cloud, const Datum& datum);

// Shrinks particles toward the weighted mean (a = 0.98 preserves the first
// two moments) and adds Gaussian innovation from the shrunk covariance, drawn
// through its eigen square root so rank-deficient spreads perturb only within
// their support. a = 1 is plain multinomial resampling.
void liu_west_resample(ParticleCloud& cloud, double a, Rng rng);

Eigen::VectorXd posterior_mean(const ParticleCloud& cloud);
Eigen::MatrixXd posterior_covariance(const ParticleCloud& cloud);

struct Prediction {
  double bme = 0;       // weighted mean of clipped per-particle probabilities
  double variance = 0;  // weighted spread of the same values
};

Prediction predict(const ParticleCloud& cloud, const Sequence& s);
Prediction predict(const ParticleCloud& cloud, const std::vector<int>& compiled);

enum class LossKind { quadratic, kl };

// Pointwise Bernoulli loss of a forecast p_hat against an outcome frequency
// p. KL clamps its logarithms at 1e-12 to stay finite at the boundary.
double prediction_loss(double p_hat, double p, LossKind kind);

nlohmann::json checkpoint_to_json(const ParticleCloud& cloud);
ParticleCloud checkpoint_from_json(const nlohmann::json& j);

}  // namespace oqt
