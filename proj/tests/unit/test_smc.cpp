#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "oqt/gateset/operational_rep.hpp"
#include "oqt/linalg/gates.hpp"
#include "oqt/protocols/gst_design.hpp"
#include "oqt/protocols/ramsey.hpp"
#include "oqt/smc/inference.hpp"

using namespace oqt;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// single parameter: the empty-sequence probability
ParticleCloud scalar_cloud(const std::vector<double>& values, const std::vector<double>& weights) {
  ParticleCloud cloud;
  cloud.tmpl = std::make_shared<RepTemplate>(minimal_parameterization({}, {Sequence{}}));
  cloud.particles.resize(static_cast<int>(values.size()), 1);
  cloud.weights.resize(static_cast<int>(weights.size()));
  for (std::size_t i = 0; i < values.size(); ++i) cloud.particles(static_cast<int>(i), 0) = values[i];
  for (std::size_t i = 0; i < weights.size(); ++i) cloud.weights(static_cast<int>(i)) = weights[i];
  cloud.resample_root = Rng(0);
  cloud.check();
  return cloud;
}

}  // namespace

TEST_CASE("prior induction") {
  SUBCASE("a noiseless prior induces one repeated particle") {
    PriorSpec spec = three_button_prior(0.0, 0.0);
    ParticleCloud cloud = induce_operational_prior(spec, 50, Rng(2));
    CHECK(cloud.size() == 50);
    for (int i = 0; i < cloud.size(); ++i) {
      CHECK(max_abs(cloud.particles.row(i) - cloud.particles.row(0)) == 0.0);
      CHECK(cloud.weights(i) == 1.0 / 50);
    }
    Rng rng(77);
    GateSet gs = sample_gate_set(spec, rng);
    OperationalRep rep = build_operational_rep(gs, spec.fiducials);
    CHECK(max_abs(cloud.particles.row(0).transpose() - rep.params) == 0.0);
  }

  SUBCASE("every induced parameter is a probability") {
    PriorSpec spec = ramsey_prior(0.2, 0.8, 0.01, 0.05);
    ParticleCloud cloud = induce_operational_prior(spec, 100, Rng(5));
    CHECK(cloud.particles.minCoeff() >= -1e-12);
    CHECK(cloud.particles.maxCoeff() <= 1.0 + 1e-12);
  }

  SUBCASE("a cloud needs at least two particles") {
    CHECK_THROWS_AS(induce_operational_prior(ramsey_prior(0.2, 0.8, 0.01, 0.05), 1, Rng(0)),
                    std::invalid_argument);
  }
}

TEST_CASE("bayes update validates its datum") {
  ParticleCloud cloud = scalar_cloud({0.2, 0.8}, {0.5, 0.5});
  CHECK_THROWS_AS(bayes_update(cloud, Datum{Sequence{}, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(bayes_update(cloud, Datum{Sequence{}, 10, 11}), std::invalid_argument);
  CHECK_THROWS_AS(bayes_update(cloud, Datum{Sequence{}, 10, -1}), std::invalid_argument);
  CHECK_THROWS_AS(bayes_update(cloud, Datum{Sequence{"Gz"}, 10, 5}), std::invalid_argument);
}

TEST_CASE("bayes update reweights by the binomial likelihood") {
  ParticleCloud cloud = scalar_cloud({0.2, 0.8}, {0.5, 0.5});

  UpdateReport r1 = bayes_update(cloud, Datum{Sequence{}, 1, 1});
  CHECK(cloud.weights(0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(cloud.weights(1) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK_FALSE(r1.resampled);
  CHECK(r1.ess_before == doctest::Approx(2.0));
  CHECK(cloud.updates == 1);

  bayes_update(cloud, Datum{Sequence{}, 1, 0});
  CHECK(cloud.weights(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cloud.weights(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cloud.updates == 2);
}

TEST_CASE("a flat likelihood leaves the cloud untouched") {
  ParticleCloud cloud = scalar_cloud({0.37, 0.37}, {0.3, 0.7});
  bayes_update(cloud, Datum{Sequence{}, 100, 37});
  CHECK(cloud.weights(0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(cloud.weights(1) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("update order commutes while no resampling happens") {
  const Datum d1{Sequence{}, 2, 1};
  const Datum d2{Sequence{}, 1, 1};

  ParticleCloud a = scalar_cloud({0.2, 0.5, 0.8}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  ParticleCloud b = scalar_cloud({0.2, 0.5, 0.8}, {1.0 / 3, 1.0 / 3, 1.0 / 3});

  UpdateReport ra1 = bayes_update(a, d1);
  UpdateReport ra2 = bayes_update(a, d2);
  UpdateReport rb1 = bayes_update(b, d2);
  UpdateReport rb2 = bayes_update(b, d1);
  REQUIRE_FALSE(ra1.resampled);
  REQUIRE_FALSE(ra2.resampled);
  REQUIRE_FALSE(rb1.resampled);
  REQUIRE_FALSE(rb2.resampled);
  CHECK(max_abs(a.weights - b.weights) < 1e-12);
}

TEST_CASE("effective sample size") {
  CHECK(effective_sample_size(scalar_cloud({0.1, 0.2, 0.3}, {1.0 / 3, 1.0 / 3, 1.0 / 3})) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(effective_sample_size(scalar_cloud({0.1, 0.2}, {1.0, 0.0})) == doctest::Approx(1.0));
  CHECK(effective_sample_size(scalar_cloud({0.1, 0.2}, {0.5, 0.5})) == doctest::Approx(2.0));
}

TEST_CASE("liu-west resampling") {
  SUBCASE("a = 1 is plain multinomial copying") {
    ParticleCloud cloud = scalar_cloud({0.1, 0.3, 0.6, 0.9}, {0.4, 0.3, 0.2, 0.1});
    const std::vector<double> originals = {0.1, 0.3, 0.6, 0.9};
    liu_west_resample(cloud, 1.0, Rng(5));
    for (int i = 0; i < cloud.size(); ++i) {
      bool found = false;
      for (double v : originals) found = found || cloud.particles(i, 0) == v;
      CHECK(found);
      CHECK(cloud.weights(i) == 1.0 / 4);
    }
  }

  SUBCASE("shrinkage preserves the posterior mean on average") {
    const int n = 200;
    Rng rng(11);
    std::vector<double> values(n);
    for (auto& v : values) v = rng.uniform();
    ParticleCloud base = scalar_cloud(values, std::vector<double>(n, 1.0 / n));
    const double mean0 = posterior_mean(base)(0);

    double grand = 0.0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
      ParticleCloud copy = base;
      liu_west_resample(copy, 0.98, Rng(1000 + t));
      grand += posterior_mean(copy)(0);
    }
    grand /= trials;
    CHECK(std::abs(grand - mean0) < 0.02);
  }

  SUBCASE("a degenerate cloud stays put") {
    ParticleCloud cloud = scalar_cloud({0.37, 0.37, 0.37}, {0.2, 0.5, 0.3});
    liu_west_resample(cloud, 0.98, Rng(3));
    for (int i = 0; i < cloud.size(); ++i)
      CHECK(cloud.particles(i, 0) == doctest::Approx(0.37).epsilon(1e-12));
  }
}

TEST_CASE("posterior moments") {
  ParticleCloud cloud = scalar_cloud({0.2, 0.8}, {0.25, 0.75});
  CHECK(posterior_mean(cloud)(0) == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(posterior_covariance(cloud)(0, 0) == doctest::Approx(0.0675).epsilon(1e-12));
}

TEST_CASE("the posterior mean minimizes weighted quadratic risk") {
  Rng rng(13);
  RepTemplate tmpl = minimal_parameterization({"Gx"}, {Sequence{}, Sequence{"Gx"}});
  const int n = 50;
  ParticleCloud cloud;
  cloud.tmpl = std::make_shared<RepTemplate>(tmpl);
  cloud.particles.resize(n, tmpl.slot_count);
  cloud.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < tmpl.slot_count; ++j) cloud.particles(i, j) = rng.uniform();
    cloud.weights(i) = rng.uniform(0.1, 1.0);
  }
  cloud.weights /= cloud.weights.sum();
  cloud.resample_root = Rng(0);
  cloud.check();

  auto risk = [&](const Eigen::VectorXd& q) {
    double r = 0.0;
    for (int i = 0; i < n; ++i)
      r += cloud.weights(i) * (cloud.particles.row(i).transpose() - q).squaredNorm();
    return r;
  };

  Eigen::VectorXd mean = posterior_mean(cloud);
  const double best = risk(mean);
  for (int c = 0; c < 100; ++c) {
    const int i = static_cast<int>(rng.integer(n));
    const int j = static_cast<int>(rng.integer(n));
    const double lam = rng.uniform();
    Eigen::VectorXd q =
        lam * cloud.particles.row(i).transpose() + (1 - lam) * cloud.particles.row(j).transpose();
    CHECK(best <= risk(q) + 1e-12);
  }
}

TEST_CASE("posterior prediction") {
  SUBCASE("a deterministic cloud predicts with zero variance") {
    PriorSpec spec = three_button_prior(0.0, 0.0);
    ParticleCloud cloud = induce_operational_prior(spec, 10, Rng(4));
    Prediction p = predict(cloud, Sequence{"Gx"});
    CHECK(p.bme == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(p.variance <= 1e-20);
  }

  SUBCASE("an even zero-one split predicts one half") {
    ParticleCloud cloud = scalar_cloud({0.0, 1.0}, {0.5, 0.5});
    Prediction p = predict(cloud, Sequence{});
    CHECK(p.bme == 0.5);
    CHECK(p.variance == 0.25);
  }
}

TEST_CASE("pointwise forecast losses") {
  CHECK(prediction_loss(0.5, 0.5, LossKind::quadratic) == 0.0);
  CHECK(prediction_loss(0.4, 0.5, LossKind::quadratic) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(prediction_loss(0.5, 0.75, LossKind::kl) ==
        doctest::Approx(0.130812035941137).epsilon(1e-9));
  CHECK(prediction_loss(1.0, 1.0, LossKind::kl) == doctest::Approx(0.0));
  CHECK_THROWS_AS(prediction_loss(-0.1, 0.5, LossKind::quadratic), std::invalid_argument);
  CHECK_THROWS_AS(prediction_loss(0.5, 1.2, LossKind::kl), std::invalid_argument);
}

TEST_CASE("checkpoints round trip bit for bit") {
  PriorSpec spec = ramsey_prior(0.2, 0.6, 0.02, 0.05);
  ParticleCloud cloud = induce_operational_prior(spec, 20, Rng(9));
  bayes_update(cloud, Datum{Sequence{"Rx", "dt", "Rx"}, 100, 40});

  nlohmann::json j1 = checkpoint_to_json(cloud);
  ParticleCloud restored = checkpoint_from_json(j1);
  nlohmann::json j2 = checkpoint_to_json(restored);
  CHECK(j1.dump() == j2.dump());

  const Datum next{Sequence{"Rx", "dt", "dt", "Rx"}, 100, 55};
  UpdateReport ra = bayes_update(cloud, next);
  UpdateReport rb = bayes_update(restored, next);
  CHECK(max_abs(cloud.weights - restored.weights) == 0.0);
  CHECK(max_abs(cloud.particles - restored.particles) == 0.0);
  CHECK(ra.resampled == rb.resampled);
  CHECK(cloud.updates == restored.updates);
}

TEST_CASE("an unexplainable datum raises an inference failure") {
  ParticleCloud cloud = scalar_cloud({0.0}, {1.0});
  CHECK_THROWS_AS(bayes_update(cloud, Datum{Sequence{}, 10, 10}), InferenceFailure);
}
