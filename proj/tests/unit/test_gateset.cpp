#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "oqt/gateset/gate_set.hpp"
#include "oqt/gateset/operational_rep.hpp"
#include "oqt/linalg/gates.hpp"
#include "oqt/linalg/random_channels.hpp"
#include "oqt/protocols/gst_design.hpp"
#include "oqt/protocols/ramsey.hpp"
#include "oqt/smc/prior.hpp"

using namespace oqt;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

SuperKet ground_state() {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  rho(0, 0) = 1.0;
  return to_superket(rho);
}

SuperBra ground_effect() {
  Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
  e(0, 0) = 1.0;
  return to_superbra(e);
}

GateSet three_button_perfect() {
  GateSet gs;
  gs.rho = ground_state();
  gs.effect = ground_effect();
  gs.labels = {"Gi", "Gx", "Gy"};
  gs.gates = {identity_ptm(), rotation_ptm(Axis::x, M_PI / 2), rotation_ptm(Axis::y, M_PI / 2)};
  return gs;
}

GateSet random_gate_set(int n_gates, Rng& rng) {
  GateSet gs;
  gs.rho = sample_ginibre_superket(false, rng);
  gs.effect.c = sample_ginibre_superket(false, rng).c;
  for (int k = 0; k < n_gates; ++k) {
    gs.labels.push_back("G" + std::to_string(k));
    gs.gates.push_back(sample_bcsz(2, rng));
  }
  return gs;
}

Sequence random_sequence(const std::vector<std::string>& labels, int maxlen, Rng& rng) {
  Sequence s(rng.integer(static_cast<std::uint64_t>(maxlen) + 1));
  for (auto& b : s) b = labels[rng.integer(labels.size())];
  return s;
}

}  // namespace

TEST_CASE("sequence keys") {
  CHECK(sequence_key(Sequence{}) == "()");
  CHECK(sequence_key(Sequence{"Gx"}) == "Gx");
  CHECK(sequence_key(Sequence{"Gx", "Gy"}) == "Gx,Gy");
}

TEST_CASE("born rule on a perfect pulse") {
  GateSet gs;
  gs.rho = ground_state();
  gs.effect = ground_effect();
  gs.labels = {"Rx"};
  gs.gates = {rotation_ptm(Axis::x, M_PI / 2)};
  gs.validate();

  CHECK(sequence_probability(gs, Sequence{}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sequence_probability(gs, Sequence{"Rx"}) == doctest::Approx(0.5).epsilon(1e-12));
  // two quarter turns flip the qubit
  CHECK(std::abs(sequence_probability(gs, Sequence{"Rx", "Rx"})) < 1e-12);
  CHECK(compile_sequence(gs, Sequence{"Rx", "Rx"}) == std::vector<int>{0, 0});
}

TEST_CASE("precession fringe follows sin^2") {
  RamseyParams p;
  p.omega = 0.35;
  p.epsilon = 0.0;
  p.dt = 1.0;
  p.rho_depol = 0.0;
  p.effect_depol = 0.0;
  GateSet gs = ramsey_gate_set(p);

  for (int n = 0; n <= 20; ++n) {
    Sequence s;
    s.push_back("Rx");
    for (int k = 0; k < n; ++k) s.push_back("dt");
    s.push_back("Rx");
    const double want = std::pow(std::sin(p.omega * n * p.dt / 2), 2);
    CHECK(sequence_probability(gs, s) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("sequence product map composes in time order") {
  Rng rng(41);
  GateSet gs = random_gate_set(2, rng);
  const Sequence s{"G0", "G1"};
  const Sequence t{"G1", "G0", "G0"};
  Sequence st = s;
  st.insert(st.end(), t.begin(), t.end());

  // pressing s then t multiplies t's map on the left
  Eigen::MatrixXd direct = sequence_superop(gs, st).m;
  Eigen::MatrixXd composed = sequence_superop(gs, t).m * sequence_superop(gs, s).m;
  CHECK(max_abs(direct - composed) < 1e-12);

  Eigen::MatrixXd empty = sequence_superop(gs, Sequence{}).m;
  CHECK(max_abs(empty - Eigen::MatrixXd::Identity(4, 4)) == 0.0);
}

TEST_CASE("sequence probabilities are gauge invariant") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    GateSet gs = random_gate_set(3, rng);
    SuperOperator b = sample_gauge(rng);
    GateSet moved = gauge_transform(gs, b);

    for (int k = 0; k < 20; ++k) {
      Sequence s = random_sequence(gs.labels, 10, rng);
      CHECK(std::abs(sequence_probability(moved, s) - sequence_probability(gs, s)) < 1e-9);
    }

    SuperOperator binv;
    binv.m = b.m.inverse();
    GateSet back = gauge_transform(moved, binv);
    CHECK(max_abs(back.rho.c - gs.rho.c) < 1e-8);
    CHECK(max_abs(back.effect.c - gs.effect.c) < 1e-8);
    for (int g = 0; g < gs.gate_count(); ++g) CHECK(max_abs(back.gates[g].m - gs.gates[g].m) < 1e-8);
  }

  GateSet gs = random_gate_set(1, rng);
  SuperOperator singular;
  singular.m = Eigen::MatrixXd::Zero(4, 4);
  CHECK_THROWS_AS(gauge_transform(gs, singular), std::invalid_argument);
}

TEST_CASE("operational parameters ignore the gauge frame") {
  Rng rng(19);
  const auto& cfg = three_button_config();
  PriorSpec spec = three_button_prior(0.05, 0.05);
  GateSet gs = sample_gate_set(spec, rng);
  GateSet moved = gauge_transform(gs, sample_gauge(rng));

  OperationalRep a = build_operational_rep(gs, cfg.fiducials);
  OperationalRep b = build_operational_rep(moved, cfg.fiducials);
  CHECK(max_abs(a.params - b.params) < 1e-9);
}

TEST_CASE("minimal parameterization deduplicates shared sequences") {
  SUBCASE("two-button precession template") {
    RepTemplate tmpl = minimal_parameterization({"Rx", "dt"}, ramsey_fiducials());
    CHECK(tmpl.nf() == 4);
    CHECK(tmpl.ng() == 2);
    CHECK(tmpl.raw_entry_count() == 52);
    CHECK(tmpl.slot_count == 27);
    CHECK(static_cast<int>(tmpl.slot_sequences.size()) == tmpl.slot_count);
  }

  SUBCASE("single button, two fiducials") {
    RepTemplate tmpl = minimal_parameterization({"Gx"}, {Sequence{}, Sequence{"Gx"}});
    CHECK(tmpl.raw_entry_count() == 10);
    CHECK(tmpl.slot_count == 4);

    // all entries whose button sequence is "Gx" share one slot
    CHECK(tmpl.e_slot(0) == tmpl.f_slot(0, 0));
    CHECK(tmpl.e_slot(1) == tmpl.f_slot(0, 1));
    CHECK(tmpl.e_slot(1) == tmpl.f_slot(1, 0));
    CHECK(tmpl.e_slot(1) == tmpl.g_slot[0](0, 0));
    CHECK(tmpl.f_slot(1, 1) == tmpl.g_slot[0](0, 1));
    CHECK(tmpl.f_slot(1, 1) == tmpl.g_slot[0](1, 0));
    CHECK(tmpl.g_slot[0](1, 1) != tmpl.f_slot(1, 1));

    // first-occurrence slot order: (), Gx, GxGx, GxGxGx
    CHECK(tmpl.slot_sequences[0].empty());
    CHECK(tmpl.slot_sequences[1] == Sequence{"Gx"});
    CHECK(tmpl.slot_sequences[2] == Sequence{"Gx", "Gx"});
    CHECK(tmpl.slot_sequences[3] == Sequence{"Gx", "Gx", "Gx"});
  }

  SUBCASE("perturbing one slot moves exactly its entries") {
    GateSet gs;
    gs.rho = ground_state();
    gs.effect = ground_effect();
    gs.labels = {"Gx"};
    gs.gates = {rotation_ptm(Axis::x, M_PI / 2)};
    OperationalRep rep = build_operational_rep(gs, {Sequence{}, Sequence{"Gx"}});

    OperationalRep bumped = rep;
    const int slot = rep.tmpl->f_slot(1, 1);
    bumped.params(slot) += 0.01;

    CHECK(max_abs(bumped.e_tilde() - rep.e_tilde()) == 0.0);
    Eigen::MatrixXd df = bumped.f_tilde() - rep.f_tilde();
    CHECK(df(1, 1) == 0.01);
    df(1, 1) = 0.0;
    CHECK(max_abs(df) == 0.0);
    Eigen::MatrixXd dg = bumped.g_tilde(0) - rep.g_tilde(0);
    CHECK(dg(0, 1) == 0.01);
    CHECK(dg(1, 0) == 0.01);
    dg(0, 1) = dg(1, 0) = 0.0;
    CHECK(max_abs(dg) == 0.0);
  }
}

TEST_CASE("informational completeness rank") {
  GateSet gs = three_button_perfect();

  SUBCASE("standard four fiducials span the qubit") {
    OperationalRep rep = build_operational_rep(gs, three_button_config().fiducials);
    CompletenessReport r = informational_completeness(rep, 2);
    CHECK(r.rank == 4);
    CHECK(r.complete);
  }

  SUBCASE("an overcomplete six-fiducial frame still has rank four") {
    std::vector<Sequence> fids = {Sequence{},           Sequence{"Gx"},
                                  Sequence{"Gy"},       Sequence{"Gx", "Gx"},
                                  Sequence{"Gx", "Gx", "Gx"}, Sequence{"Gy", "Gy", "Gy"}};
    OperationalRep rep = build_operational_rep(gs, fids);
    CompletenessReport r = informational_completeness(rep, 2);
    CHECK(r.rank == 4);
    CHECK(r.complete);
  }

  SUBCASE("a single fiducial cannot be complete") {
    OperationalRep rep = build_operational_rep(gs, {Sequence{}});
    CompletenessReport r = informational_completeness(rep, 2);
    CHECK(r.rank == 1);
    CHECK_FALSE(r.complete);
  }

  SUBCASE("noisy draws keep full rank") {
    Rng rng(3);
    PriorSpec spec = three_button_prior(0.02, 0.02);
    for (int i = 0; i < 5; ++i) {
      GateSet draw = sample_gate_set(spec, rng);
      OperationalRep rep = build_operational_rep(draw, spec.fiducials);
      CHECK(informational_completeness(rep, 2).complete);
    }
  }
}

TEST_CASE("linear-inversion reconstruction") {
  GateSet gs = three_button_perfect();
  const auto& fids = three_button_config().fiducials;
  OperationalRep rep = build_operational_rep(gs, fids);

  SUBCASE("the exact frame returns the original gate set") {
    Eigen::MatrixXd b(4, fids.size());
    for (std::size_t j = 0; j < fids.size(); ++j)
      b.col(static_cast<int>(j)) = sequence_superop(gs, fids[j]).m * gs.rho.c;
    GateSet rebuilt = lgst_reconstruct(rep, b);
    CHECK(max_abs(rebuilt.rho.c - gs.rho.c) < 1e-8);
    CHECK(max_abs(rebuilt.effect.c - gs.effect.c) < 1e-8);
    for (int g = 0; g < gs.gate_count(); ++g)
      CHECK(max_abs(rebuilt.gates[g].m - gs.gates[g].m) < 1e-8);
  }

  SUBCASE("the identity frame returns a probability-equivalent gate set") {
    GateSet rebuilt = lgst_reconstruct(rep);
    Rng rng(23);
    for (int k = 0; k < 20; ++k) {
      Sequence s = random_sequence(gs.labels, 8, rng);
      CHECK(std::abs(sequence_probability(rebuilt, s) - sequence_probability(gs, s)) < 1e-8);
    }
  }

  SUBCASE("a rank-deficient fiducial matrix is rejected") {
    GateSet idle;
    idle.rho = ground_state();
    idle.effect = ground_effect();
    idle.labels = {"Gi"};
    idle.gates = {identity_ptm()};
    // both fiducials prepare the same state, so the frame is rank one
    OperationalRep flat = build_operational_rep(idle, {Sequence{}, Sequence{"Gi"}});
    CHECK_THROWS_AS(lgst_reconstruct(flat), std::invalid_argument);
  }
}

TEST_CASE("probability-space evaluation matches the born rule") {
  Rng rng(29);
  PriorSpec spec = three_button_prior(0.02, 0.02);
  for (int trial = 0; trial < 3; ++trial) {
    GateSet gs = sample_gate_set(spec, rng);
    OperationalRep rep = build_operational_rep(gs, spec.fiducials);
    for (int k = 0; k < 20; ++k) {
      Sequence s = random_sequence(gs.labels, 20, rng);
      CHECK(std::abs(oprep_sequence_probability(rep, s) - sequence_probability(gs, s)) < 1e-8);
    }
    CHECK(std::abs(oprep_sequence_probability(rep, Sequence{}) -
                   sequence_probability(gs, Sequence{})) < 1e-10);
  }
}

TEST_CASE("clipping snaps out-of-range values into the unit interval") {
  OperationalRep rep;
  rep.tmpl = std::make_shared<RepTemplate>(minimal_parameterization({}, {Sequence{}}));
  CHECK(rep.tmpl->slot_count == 1);
  rep.params = Eigen::VectorXd::Constant(1, -0.03);
  CHECK(oprep_sequence_probability(rep, Sequence{}, false) == doctest::Approx(-0.03).epsilon(1e-12));
  CHECK(oprep_sequence_probability(rep, Sequence{}, true) == 0.0);
}

TEST_CASE("positivity probe flags unphysical parameters") {
  GateSet gs = three_button_perfect();
  const auto& fids = three_button_config().fiducials;
  OperationalRep rep = build_operational_rep(gs, fids);

  std::vector<Sequence> probes = {Sequence{}, Sequence{"Gx"}, Sequence{"Gx", "Gy"},
                                  Sequence{"Gy", "Gy", "Gx"}};
  PositivityReport ok = operational_positivity(rep, probes);
  CHECK(ok.positive);
  CHECK(ok.violations.empty());
  CHECK(operational_positivity(gs, probes).positive);

  OperationalRep bad = rep;
  bad.params *= 1.5;  // empty-sequence probability becomes 1.5
  PositivityReport hit = operational_positivity(bad, probes);
  CHECK_FALSE(hit.positive);
  REQUIRE(!hit.violations.empty());
  CHECK(hit.violations.front().empty());
}

TEST_CASE("flattened evaluator agrees with the generic path") {
  Rng rng(31);
  PriorSpec spec = three_button_prior(0.03, 0.03);
  GateSet gs = sample_gate_set(spec, rng);
  OperationalRep rep = build_operational_rep(gs, spec.fiducials);
  RepEvaluator ev = make_evaluator(*rep.tmpl, rep.params);
  CHECK(ev.nf == rep.tmpl->nf());
  CHECK(ev.ng == rep.tmpl->ng());

  for (int k = 0; k < 10; ++k) {
    Sequence s = random_sequence(rep.tmpl->labels, 12, rng);
    std::vector<int> ids;
    for (const auto& label : s)
      for (int g = 0; g < rep.tmpl->ng(); ++g)
        if (rep.tmpl->labels[g] == label) ids.push_back(g);
    REQUIRE(ids.size() == s.size());
    CHECK(ev.probability(ids, false) ==
          doctest::Approx(oprep_sequence_probability(rep, s, false)).epsilon(1e-12));
    CHECK(ev.probability(ids, true) ==
          doctest::Approx(oprep_sequence_probability(rep, s, true)).epsilon(1e-12));
  }
}
