#include "oqt/io/runner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "oqt/dynamics/evolution.hpp"
#include "oqt/dynamics/generator.hpp"
#include "oqt/gateset/serialization.hpp"
#include "oqt/io/dataset.hpp"
#include "oqt/io/reports.hpp"
#include "oqt/protocols/gst_design.hpp"
#include "oqt/protocols/ramsey.hpp"
#include "oqt/protocols/randomized_benchmarking.hpp"
#include "oqt/protocols/state_tomography.hpp"

namespace oqt {
namespace {

namespace fs = std::filesystem;

fs::path prepare_out(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  if (!dir.empty()) fs::create_directories(dir);
  return dir;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("run: cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("run: short write to '" + path.string() + "'");
}

double observed_frequency(const Datum& d) {
  return d.trials > 0 ? static_cast<double>(d.successes) / static_cast<double>(d.trials) : 0.0;
}

// sequence, trials, successes, observed, predicted, variance
void write_predictions(const fs::path& path, const ParticleCloud& cloud,
                       const std::vector<Datum>& data) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(data.size());
  for (const auto& d : data) {
    const Prediction pr = predict(cloud, d.sequence);
    rows.push_back({sequence_cell(d.sequence), std::to_string(d.trials),
                    std::to_string(d.successes), format_number(observed_frequency(d)),
                    format_number(pr.bme), format_number(pr.variance)});
  }
  write_csv(path, {"sequence", "trials", "successes", "observed", "predicted", "variance"}, rows);
}

void write_losses(const fs::path& path, const ParticleCloud& cloud,
                  const std::vector<Datum>& data) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(data.size());
  for (const auto& d : data) {
    const Prediction pr = predict(cloud, d.sequence);
    const double obs = observed_frequency(d);
    rows.push_back({sequence_cell(d.sequence), format_number(obs), format_number(pr.bme),
                    format_number(prediction_loss(pr.bme, obs, LossKind::quadratic)),
                    format_number(prediction_loss(pr.bme, obs, LossKind::kl)),
                    format_number(pr.variance)});
  }
  write_csv(path, {"sequence", "observed", "predicted", "quadratic", "kl", "variance"}, rows);
}

struct UpdateTrace {
  std::vector<std::vector<std::string>> rows;

  void record(int step, const Datum& d, const UpdateReport& rep) {
    rows.push_back({std::to_string(step), sequence_cell(d.sequence), format_number(rep.ess_before),
                    format_number(rep.ess_after), rep.resampled ? "1" : "0"});
  }
  void write(const fs::path& path) const {
    write_csv(path, {"step", "sequence", "ess_before", "ess_after", "resampled"}, rows);
  }
};

ParticleCloud run_updates(const PriorSpec& prior, int particles, Rng root,
                          const std::vector<Datum>& train, const fs::path& dir) {
  ParticleCloud cloud = induce_operational_prior(prior, particles, root);
  UpdateTrace trace;
  int step = 0;
  for (const auto& d : train) trace.record(step++, d, bayes_update(cloud, d));
  trace.write(dir / "updates.csv");
  return cloud;
}

RamseyParams ramsey_params_from(const RunConfig& cfg) {
  RamseyParams p;
  p.omega = cfg.num("omega", 0.346754);
  p.epsilon = cfg.num("epsilon", -0.003824);
  p.dt = cfg.num("time_step", 1.0);
  p.rho_depol = cfg.num("state_depol", 0.038311);
  p.effect_depol = cfg.num("effect_depol", 0.023933);
  return p;
}

ExperimentDesign ramsey_design_from(const RunConfig& cfg) {
  const long shots = cfg.integer("shots", 500);
  return ramsey_design(static_cast<int>(cfg.integer("train_min", 2)),
                       static_cast<int>(cfg.integer("train_max", 49)),
                       static_cast<int>(cfg.integer("test_min", 50)),
                       static_cast<int>(cfg.integer("test_max", 100)), shots, shots);
}

ExperimentDesign three_button_design_from(const RunConfig& cfg) {
  const long shots = cfg.integer("shots", 500);
  return three_button_design(static_cast<int>(cfg.integer("depth_max", 13)), shots, shots);
}

int run_simulate(const RunConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  const std::string protocol = cfg.text("protocol", "ramsey");
  Rng root(cfg.seed);

  GateSet truth;
  ExperimentDesign design;
  if (protocol == "ramsey") {
    truth = ramsey_gate_set(ramsey_params_from(cfg));
    design = ramsey_design_from(cfg);
  } else if (protocol == "three_button") {
    Rng truth_rng = root.substream("truth");
    truth = sample_gate_set(
        three_button_prior(cfg.num("gate_eps", 1e-4), cfg.num("spam_eps", 1e-4)), truth_rng);
    design = three_button_design_from(cfg);
  } else {
    throw std::runtime_error("run: unknown protocol '" + protocol + "'");
  }

  Rng seq = root.substream("sequences");
  const auto train = simulate_design(truth, design.training, seq);
  const auto test = simulate_design(truth, design.testing, seq);

  write_dataset(dir / "train.txt", DataSet{design.labels, protocol, train});
  write_dataset(dir / "test.txt", DataSet{design.labels, protocol, test});
  write_text_file(dir / "truth.json", gate_set_to_json(truth).dump(2) + "\n");
  return 0;
}

int run_infer(const RunConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  const std::string protocol = cfg.text("protocol", "ramsey");
  Rng root(cfg.seed);

  PriorSpec prior;
  ExperimentDesign design;
  if (protocol == "ramsey") {
    prior = ramsey_prior(cfg.num("omega_min", 0.0), cfg.num("omega_max", 1.0),
                         cfg.num("pulse_stddev", std::sqrt(1e-3)), cfg.num("spam_depol_max", 0.1),
                         cfg.num("time_step", 1.0));
    design = ramsey_design_from(cfg);
  } else if (protocol == "three_button") {
    prior = three_button_prior(cfg.num("gate_eps", 1e-4), cfg.num("spam_eps", 1e-4));
    design = three_button_design_from(cfg);
  } else {
    throw std::runtime_error("run: unknown protocol '" + protocol + "'");
  }

  // Data either come from files or are simulated from the configured truth.
  const bool synthetic = !cfg.has("dataset");
  std::vector<Datum> train, test;
  if (synthetic) {
    GateSet truth;
    if (protocol == "ramsey") {
      truth = ramsey_gate_set(ramsey_params_from(cfg));
    } else {
      Rng truth_rng = root.substream("truth");
      truth = sample_gate_set(prior, truth_rng);
    }
    Rng seq = root.substream("sequences");
    train = simulate_design(truth, design.training, seq);
    test = simulate_design(truth, design.testing, seq);
    write_text_file(dir / "truth.json", gate_set_to_json(truth).dump(2) + "\n");
  } else {
    train = ingest_dataset(cfg.text("dataset", "")).records;
    if (cfg.has("testset")) test = ingest_dataset(cfg.text("testset", "")).records;
  }

  ParticleCloud cloud = run_updates(prior, cfg.particles, root, train, dir);
  write_text_file(dir / "checkpoint.json", checkpoint_to_json(cloud).dump() + "\n");

  if (!test.empty()) {
    write_predictions(dir / "predictions.csv", cloud, test);
    write_losses(dir / "losses.csv", cloud, test);
  }

  if (protocol == "ramsey") {
    // Posterior fringe: predicted mean against step count n (sequence is
    // pulse + n steps + pulse, so n = length - 2).
    std::vector<std::pair<double, double>> points;
    for (const auto* block : {&design.training, &design.testing}) {
      for (const auto& entry : *block) {
        const double n = static_cast<double>(entry.sequence.size()) - 2.0;
        points.emplace_back(n, predict(cloud, entry.sequence).bme);
      }
    }
    const FringeFit fit = fit_ramsey_frequency(points, cfg.num("time_step", 1.0));
    std::vector<std::vector<std::string>> rows{
        {"omega_hat", format_number(fit.omega)},
        {"phase", format_number(fit.phase)},
        {"residual", format_number(fit.residual)},
        {"converged", fit.converged ? "1" : "0"},
    };
    if (synthetic) rows.push_back({"omega_true", format_number(cfg.num("omega", 0.346754))});
    write_csv(dir / "fit.csv", {"quantity", "value"}, rows);
  } else if (!test.empty()) {
    double total = 0;
    std::vector<std::vector<std::string>> rows;
    for (const auto& d : test) {
      const double pred = predict(cloud, d.sequence).bme;
      const double each = tvd(pred, observed_frequency(d));
      total += each;
      rows.push_back({sequence_cell(d.sequence), format_number(observed_frequency(d)),
                      format_number(pred), format_number(each)});
    }
    rows.push_back({"total", "", "", format_number(total)});
    write_csv(dir / "tvd.csv", {"sequence", "observed", "predicted", "tvd"}, rows);
  }
  return 0;
}

int run_rb(const RunConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  Rng root(cfg.seed);
  const CliffordTable table = build_clifford_table();
  const PriorSpec prior = rb_prior(cfg.num("mix_eps", 1e-3), cfg.num("angle_variance", 0.0015));

  Rng truth_rng = root.substream("truth");
  const GateSet truth = sample_gate_set(prior, truth_rng);
  write_text_file(dir / "truth.json", gate_set_to_json(truth).dump(2) + "\n");

  // Training: random benchmarking sequences whose lengths cycle through
  // [train_min, train_max].
  Rng seq = root.substream("sequences");
  const int train_count = static_cast<int>(cfg.integer("train_count", 100));
  const int lo = static_cast<int>(cfg.integer("train_min", 40));
  const int hi = static_cast<int>(cfg.integer("train_max", 60));
  if (hi < lo) throw std::runtime_error("run: train_max below train_min");
  const long shots = cfg.integer("shots", 100);
  std::vector<DesignEntry> training;
  training.reserve(train_count);
  for (int i = 0; i < train_count; ++i) {
    const int m = lo + i % (hi - lo + 1);
    training.push_back({rb_sequence(m, table, seq).expanded, shots});
  }
  const auto train = simulate_design(truth, training, seq);

  ParticleCloud cloud = run_updates(prior, cfg.particles, root, train, dir);
  write_text_file(dir / "checkpoint.json", checkpoint_to_json(cloud).dump() + "\n");

  // Held-out plan: fresh draws at the standard log-spaced lengths, scored by
  // exact survival probabilities rather than sampled counts.
  const int test_draws = static_cast<int>(cfg.integer("test_draws", 100));
  const RbDesign eval = rb_design(rb_test_lengths(), test_draws, 1, table, seq);

  const SurvivalCurve true_curve = rb_survival(truth, eval);
  const DecayFit true_fit = fit_decay(true_curve.lengths, true_curve.mean, true_curve.variance);

  const auto curves = rb_cloud_survivals(cloud, eval);
  std::vector<DecayFit> fits(curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i)
    fits[i] = fit_decay(curves[i].lengths, curves[i].mean, curves[i].variance);
  const RbIntervals iv = rb_credible_interval(fits, cloud.weights);

  double post_a = 0, post_b = 0, post_p = 0, post_f = 0;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const double w = cloud.weights(static_cast<int>(i));
    post_a += w * fits[i].a;
    post_b += w * fits[i].b;
    post_p += w * fits[i].p;
    post_f += w * fits[i].fidelity;
  }

  write_csv(dir / "decay_fit.csv", {"param", "true_fit", "posterior_fit", "lo", "hi"},
            {{"a", format_number(true_fit.a), format_number(post_a), format_number(iv.a.lo),
              format_number(iv.a.hi)},
             {"b", format_number(true_fit.b), format_number(post_b), format_number(iv.b.lo),
              format_number(iv.b.hi)},
             {"p", format_number(true_fit.p), format_number(post_p), format_number(iv.p.lo),
              format_number(iv.p.hi)},
             {"fidelity", format_number(true_fit.fidelity), format_number(post_f),
              format_number(iv.fidelity.lo), format_number(iv.fidelity.hi)}});

  Eigen::VectorXd post_mean = Eigen::VectorXd::Zero(true_curve.mean.size());
  for (std::size_t i = 0; i < curves.size(); ++i)
    post_mean += cloud.weights(static_cast<int>(i)) * curves[i].mean;
  std::vector<std::vector<std::string>> survival_rows;
  for (std::size_t l = 0; l < true_curve.lengths.size(); ++l)
    survival_rows.push_back({std::to_string(true_curve.lengths[l]),
                             format_number(true_curve.mean(static_cast<int>(l))),
                             format_number(post_mean(static_cast<int>(l)))});
  write_csv(dir / "survival.csv", {"length", "true_mean", "posterior_mean"}, survival_rows);
  return 0;
}

int run_statetomo(const RunConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  Rng root(cfg.seed);
  const PriorSpec prior =
      rebit_prior(cfg.num("pulse_stddev", std::sqrt(1e-3)), cfg.num("depol_max", 0.1));

  const int states = static_cast<int>(cfg.integer("states", 20));
  const int count_train = static_cast<int>(cfg.integer("train_count", 50));
  const int train_lo = static_cast<int>(cfg.integer("train_min", 1));
  const int train_hi = static_cast<int>(cfg.integer("train_max", 10));
  const int count_test = static_cast<int>(cfg.integer("test_count", 50));
  const int test_lo = static_cast<int>(cfg.integer("test_min", 5));
  const int test_hi = static_cast<int>(cfg.integer("test_max", 15));
  const long shots = cfg.integer("shots", 100);

  Rng truth_rng = root.substream("truth");
  Rng seq = root.substream("sequences");
  const Rng cloud_root = root.substream("cloud");

  const auto planar_norm = [](const Eigen::Vector3d& a) {
    return std::sqrt(a.x() * a.x() + a.z() * a.z());
  };

  std::vector<std::vector<std::string>> rows;
  double naive_total = 0, post_total = 0;
  int naive_outside = 0, post_outside = 0;
  for (int s = 0; s < states; ++s) {
    const GateSet truth = sample_gate_set(prior, truth_rng);
    const ExperimentDesign design =
        rebit_design(count_train, train_lo, train_hi, count_test, test_lo, test_hi, shots, seq);
    const auto train = simulate_design(truth, design.training, seq);

    // Direct read: frequencies of (), (Rx), (Ry) at the same shot budget.
    const std::vector<DesignEntry> reader{{Sequence{}, shots}, {{"Rx"}, shots}, {{"Ry"}, shots}};
    const auto reads = simulate_design(truth, reader, seq);
    const Eigen::Vector3d naive = pseudo_bloch_from_frequencies(
        observed_frequency(reads[0]), observed_frequency(reads[1]), observed_frequency(reads[2]));

    ParticleCloud cloud = induce_operational_prior(
        prior, cfg.particles, cloud_root.substream(static_cast<std::uint64_t>(s)));
    for (const auto& d : train) bayes_update(cloud, d);
    const Eigen::Vector3d post = pseudo_bloch_from_params(*cloud.tmpl, posterior_mean(cloud));

    const Eigen::Vector3d tru = bloch_vector(truth.rho);
    const double naive_dist = (naive - tru).norm();
    const double post_dist = (post - tru).norm();
    const bool naive_out = planar_norm(naive) > 1.0;
    const bool post_out = planar_norm(post) > 1.0;
    naive_total += naive_dist;
    post_total += post_dist;
    naive_outside += naive_out ? 1 : 0;
    post_outside += post_out ? 1 : 0;

    rows.push_back({std::to_string(s), format_number(tru.x()), format_number(tru.y()),
                    format_number(tru.z()), format_number(naive.x()), format_number(naive.y()),
                    format_number(naive.z()), format_number(post.x()), format_number(post.y()),
                    format_number(post.z()), format_number(naive_dist), format_number(post_dist),
                    naive_out ? "1" : "0", post_out ? "1" : "0"});
  }
  write_csv(dir / "statetomo.csv",
            {"state", "true_x", "true_y", "true_z", "naive_x", "naive_y", "naive_z", "post_x",
             "post_y", "post_z", "naive_dist", "post_dist", "naive_outside", "post_outside"},
            rows);

  const double denom = states > 0 ? static_cast<double>(states) : 1.0;
  write_csv(dir / "summary.csv", {"quantity", "value"},
            {{"states", std::to_string(states)},
             {"mean_naive_dist", format_number(naive_total / denom)},
             {"mean_post_dist", format_number(post_total / denom)},
             {"naive_outside", std::to_string(naive_outside)},
             {"post_outside", std::to_string(post_outside)}});
  return 0;
}

Eigen::Matrix2cd axis_rotation_unitary(const Eigen::Vector3d& n, double theta) {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  const Eigen::Matrix2cd h = n.x() * sx + n.y() * sy + n.z() * sz;
  return std::cos(theta / 2) * Eigen::Matrix2cd::Identity() -
         i * std::sin(theta / 2) * h;
}

Eigen::Vector3d random_direction(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * M_PI);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

int run_dynamics(const RunConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  Rng root(cfg.seed);
  Rng inst = root.substream("truth");

  const int order = static_cast<int>(cfg.integer("group_order", 4));
  if (order < 1 || order > 12)
    throw std::runtime_error("run: group_order must lie in [1, 12]");
  const double t_span = cfg.num("t_span", 1.0);
  const int steps = static_cast<int>(cfg.integer("steps", 20));
  if (steps < 1) throw std::runtime_error("run: steps must be positive");
  const double alpha_scale = cfg.num("alpha_scale", 1.0);

  // Buttons are the cyclic rotation group of the requested order about a
  // random axis; the fiducials press one button each, so the fiducial algebra
  // is the group itself and closes exactly.
  const Eigen::Vector3d axis = random_direction(inst);
  GateSet gs;
  std::vector<Sequence> fseqs;
  for (int k = 0; k < order; ++k) {
    const double theta = 2.0 * M_PI * k / order;
    gs.labels.push_back("F" + std::to_string(k));
    gs.gates.push_back(unitary_superop(axis_rotation_unitary(axis, theta)));
    fseqs.push_back({gs.labels.back()});
  }
  const double radius = 0.9 * std::cbrt(inst.uniform());
  gs.rho = superket_from_bloch(radius * random_direction(inst));
  gs.effect.c = superket_from_bloch(0.9 * random_direction(inst)).c;

  const FiducialAlgebra algebra = close_fiducial_algebra(gs.gates);
  if (!algebra.closed) throw std::runtime_error("run: rotation group failed to close");

  Eigen::VectorXd alpha(order);
  for (int k = 0; k < order; ++k) alpha(k) = inst.normal(0.0, 1.0);
  const double l1 = alpha.lpNorm<1>();
  if (l1 > 0) alpha *= alpha_scale / l1;

  const ClosedState start = closed_state_from_gate_set(gs, fseqs, algebra);
  const auto trajectory = evolve_closed(start, algebra, alpha, t_span, steps);

  // Oracle check: push rho through the matrix exponential of the generator
  // and rebuild the observables directly at every output time.
  const SuperOperator lindblad = lindblad_from_alpha(algebra.elements, alpha);
  const Eigen::MatrixXd prop = (lindblad.m * (t_span / steps)).exp();
  GateSet cur = gs;
  double max_dev = 0;
  std::vector<std::vector<std::string>> traj_rows;
  for (std::size_t s = 0; s < trajectory.size(); ++s) {
    if (s > 0) cur.rho.c = prop * cur.rho.c;
    const ClosedState direct = closed_state_from_gate_set(cur, fseqs, algebra);
    const auto& [t, state] = trajectory[s];
    max_dev = std::max(max_dev, (direct.v - state.v).cwiseAbs().maxCoeff());
    for (std::size_t k = 0; k < state.w.size(); ++k)
      max_dev = std::max(max_dev, (direct.w[k] - state.w[k]).cwiseAbs().maxCoeff());

    std::vector<std::string> row{format_number(t)};
    for (int a = 0; a < state.v.size(); ++a) row.push_back(format_number(state.v(a)));
    for (std::size_t k = 0; k < state.w.size(); ++k)
      for (int i = 0; i < state.w[k].rows(); ++i)
        for (int a = 0; a < state.w[k].cols(); ++a)
          row.push_back(format_number(state.w[k](i, a)));
    traj_rows.push_back(std::move(row));
  }
  std::vector<std::string> traj_header{"t"};
  for (int a = 0; a < algebra.size(); ++a) traj_header.push_back("v_" + std::to_string(a));
  for (int k = 0; k < gs.gate_count(); ++k)
    for (int i = 0; i < order; ++i)
      for (int a = 0; a < algebra.size(); ++a)
        traj_header.push_back("w_" + std::to_string(k) + "_" + std::to_string(i) + "_" +
                              std::to_string(a));
  write_csv(dir / "closed_trajectory.csv", traj_header, traj_rows);

  // Truncation orders for one integrator-sized step, with the tail bound each
  // order guarantees.
  const double strength = alpha.lpNorm<1>();
  const double delta = strength > 0 ? std::min(t_span / steps, strength) : 0.0;
  std::vector<std::vector<std::string>> report_rows{
      {"group_order", std::to_string(order)},
      {"algebra_size", std::to_string(algebra.size())},
      {"algebra_closed", algebra.closed ? "1" : "0"},
      {"alpha_l1", format_number(strength)},
      {"t_span", format_number(t_span)},
      {"steps", std::to_string(steps)},
      {"delta", format_number(delta)},
      {"max_closed_vs_exponential", format_number(max_dev)},
  };
  if (strength > 0) {
    const double rate = strength * delta;
    const std::pair<const char*, double> tols[] = {
        {"1e-3", 1e-3}, {"1e-6", 1e-6}, {"1e-9", 1e-9}};
    int k_mid = 0;
    for (const auto& [label, eps] : tols) {
      const int k = taylor_truncation_order(alpha, delta, eps);
      if (eps == 1e-6) k_mid = k;
      const double bound = std::exp((k + 1) * (std::log(rate) - std::log(k + 1.0)));
      report_rows.push_back({std::string("taylor_k_") + label, std::to_string(k)});
      report_rows.push_back({std::string("taylor_bound_") + label, format_number(bound)});
    }

    // One truncated Taylor step at the middle tolerance against the exact
    // propagated readout values.
    const ExtendedTensors tensors = extended_tensors_from_gate_set(gs, fseqs, k_mid + 1);
    const ExtendedTensors stepped = evolve_truncated(tensors, alpha, delta, k_mid);
    GateSet at_delta = gs;
    at_delta.rho.c = (lindblad.m * delta).exp() * gs.rho.c;
    double trunc_err = 0;
    for (int i = 0; i < order; ++i) {
      const double exact = at_delta.effect.c.dot(
          sequence_superop(at_delta, fseqs[static_cast<std::size_t>(i)]).m * at_delta.rho.c);
      trunc_err = std::max(trunc_err, std::abs(stepped.levels[1](i) - exact));
    }
    report_rows.push_back({"truncated_step_error", format_number(trunc_err)});
  }
  write_csv(dir / "dynamics_report.csv", {"quantity", "value"}, report_rows);

  // Generator learning demo on the flattened observable vector: fit on the
  // first 80% of snapshots, score on the held-out tail.
  const int snapshots = static_cast<int>(cfg.integer("snapshots", 200));
  const double snapshot_dt = cfg.num("snapshot_dt", 1e-3);
  const auto psi_traj = generate_op_trajectory(gs, fseqs, lindblad, snapshot_dt, snapshots);

  std::vector<std::string> psi_header{"t"};
  const OpStateVector& p0 = psi_traj.front().second;
  for (int i = 0; i < p0.nf; ++i) psi_header.push_back("e_" + std::to_string(i));
  for (int i = 0; i < p0.nf; ++i)
    for (int j = 0; j < p0.nf; ++j)
      psi_header.push_back("f_" + std::to_string(i) + "_" + std::to_string(j));
  for (int k = 0; k < p0.ng; ++k)
    for (int i = 0; i < p0.nf; ++i)
      for (int j = 0; j < p0.nf; ++j)
        psi_header.push_back("g2_" + std::to_string(k) + "_" + std::to_string(i) + "_" +
                             std::to_string(j));
  for (int k = 0; k < p0.ng; ++k)
    for (int i = 0; i < p0.nf; ++i)
      for (int j = 0; j < p0.nf; ++j)
        for (int l = 0; l < p0.nf; ++l)
          psi_header.push_back("g3_" + std::to_string(k) + "_" + std::to_string(i) + "_" +
                               std::to_string(j) + "_" + std::to_string(l));
  std::vector<std::vector<std::string>> psi_rows;
  for (const auto& [t, psi] : psi_traj) {
    std::vector<std::string> row{format_number(t)};
    for (int i = 0; i < psi.psi.size(); ++i) row.push_back(format_number(psi.psi(i)));
    psi_rows.push_back(std::move(row));
  }
  write_csv(dir / "psi_trajectory.csv", psi_header, psi_rows);

  const std::size_t cut = std::max<std::size_t>(2, (psi_traj.size() * 8) / 10);
  const std::vector<std::pair<double, OpStateVector>> head(psi_traj.begin(),
                                                           psi_traj.begin() + cut);
  const GeneratorFit fit = learn_generator(head);
  double heldout = 0;
  for (std::size_t s = cut; s < psi_traj.size(); ++s) {
    const auto& [t, actual] = psi_traj[s];
    const OpStateVector pred = apply_generator(fit.k, psi_traj.front().second, t);
    heldout = std::max(heldout, (pred.psi - actual.psi).norm() /
                                    std::max(1.0, actual.psi.norm()));
  }
  write_csv(dir / "generator.csv", {"quantity", "value"},
            {{"psi_dim", std::to_string(p0.dim())},
             {"snapshots", std::to_string(snapshots)},
             {"snapshot_dt", format_number(snapshot_dt)},
             {"fit_snapshots", std::to_string(cut)},
             {"rank_deficient", fit.rank_deficient ? "1" : "0"},
             {"fit_residual", format_number(fit.residual)},
             {"heldout_max_rel_err", format_number(heldout)}});
  return 0;
}

int run_report(const RunConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  if (!cfg.has("dataset")) throw std::runtime_error("run: report mode needs 'dataset'");
  if (!cfg.has("checkpoint")) throw std::runtime_error("run: report mode needs 'checkpoint'");
  const DataSet data = ingest_dataset(cfg.text("dataset", ""));
  const ParticleCloud cloud = checkpoint_from_json(load_json_file(cfg.text("checkpoint", "")));
  write_predictions(dir / "predictions.csv", cloud, data.records);
  write_losses(dir / "losses.csv", cloud, data.records);
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    switch (config.mode) {
      case RunMode::simulate:
        return run_simulate(config);
      case RunMode::infer:
        return run_infer(config);
      case RunMode::rb:
        return run_rb(config);
      case RunMode::statetomo:
        return run_statetomo(config);
      case RunMode::dynamics:
        return run_dynamics(config);
      case RunMode::report:
        return run_report(config);
    }
    throw std::logic_error("run: unhandled mode");
  } catch (const InferenceFailure& e) {
    std::cerr << "inference failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace oqt
