#include "oqt/gateset/operational_rep.hpp"

#include <stdexcept>
#include <unordered_map>

#include "oqt/linalg/solve.hpp"

namespace oqt {

namespace {

Sequence concat(const Sequence& a, const Sequence& b) {
  Sequence out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Full button sequence of a tensor entry, in time order (prefix pressed
// first).
Sequence entry_sequence(const RepTemplate& t, int i, int j, int gate) {
  Sequence s = t.fiducials[static_cast<std::size_t>(j)];
  if (gate >= 0) s.push_back(t.labels[static_cast<std::size_t>(gate)]);
  return concat(s, t.fiducials[static_cast<std::size_t>(i)]);
}

}  // namespace

int RepTemplate::raw_entry_count() const {
  const int n = nf();
  return n + n * n + ng() * n * n;
}

RepTemplate minimal_parameterization(std::vector<std::string> labels,
                                     std::vector<Sequence> fiducials) {
  if (fiducials.empty()) throw std::invalid_argument("minimal_parameterization: no fiducials");
  RepTemplate t;
  t.labels = std::move(labels);
  t.fiducials = std::move(fiducials);
  const int n = t.nf();
  const int g = t.ng();

  std::unordered_map<std::string, int> slot_of;
  auto slot_for = [&](const Sequence& s) {
    const std::string key = sequence_key(s);
    auto it = slot_of.find(key);
    if (it != slot_of.end()) return it->second;
    const int slot = t.slot_count++;
    slot_of.emplace(key, slot);
    t.slot_sequences.push_back(s);
    return slot;
  };

  t.e_slot.resize(n);
  for (int i = 0; i < n; ++i) t.e_slot(i) = slot_for(t.fiducials[static_cast<std::size_t>(i)]);

  t.f_slot.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.f_slot(i, j) = slot_for(entry_sequence(t, i, j, -1));

  t.g_slot.resize(static_cast<std::size_t>(g));
  for (int k = 0; k < g; ++k) {
    auto& m = t.g_slot[static_cast<std::size_t>(k)];
    m.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = slot_for(entry_sequence(t, i, j, k));
  }
  return t;
}

Eigen::VectorXd OperationalRep::e_tilde() const {
  const auto& t = *tmpl;
  Eigen::VectorXd e(t.nf());
  for (int i = 0; i < t.nf(); ++i) e(i) = params(t.e_slot(i));
  return e;
}

Eigen::MatrixXd OperationalRep::f_tilde() const {
  const auto& t = *tmpl;
  Eigen::MatrixXd f(t.nf(), t.nf());
  for (int i = 0; i < t.nf(); ++i)
    for (int j = 0; j < t.nf(); ++j) f(i, j) = params(t.f_slot(i, j));
  return f;
}

Eigen::MatrixXd OperationalRep::g_tilde(int gate_index) const {
  const auto& t = *tmpl;
  if (gate_index < 0 || gate_index >= t.ng())
    throw std::out_of_range("g_tilde: gate index out of range");
  const auto& slots = t.g_slot[static_cast<std::size_t>(gate_index)];
  Eigen::MatrixXd g(t.nf(), t.nf());
  for (int i = 0; i < t.nf(); ++i)
    for (int j = 0; j < t.nf(); ++j) g(i, j) = params(slots(i, j));
  return g;
}

OperationalRep build_operational_rep(const GateSet& gs, const std::vector<Sequence>& fiducials) {
  gs.validate();
  auto tmpl = std::make_shared<RepTemplate>(minimal_parameterization(gs.labels, fiducials));
  OperationalRep rep;
  rep.params.resize(tmpl->slot_count);
  for (int s = 0; s < tmpl->slot_count; ++s)
    rep.params(s) = sequence_probability(gs, tmpl->slot_sequences[static_cast<std::size_t>(s)]);
  rep.tmpl = std::move(tmpl);
  return rep;
}

CompletenessReport informational_completeness(const OperationalRep& rep, int d) {
  const Eigen::MatrixXd f = rep.f_tilde();
  CompletenessReport r;
  r.rank = numerical_rank(f, kSingularTol);
  r.condition = condition_number(f);
  r.complete = r.rank >= d * d;
  return r;
}

GateSet lgst_reconstruct(const OperationalRep& rep, const Eigen::MatrixXd& b) {
  const auto& t = *rep.tmpl;
  const int n = t.nf();
  if (b.cols() != n) throw std::invalid_argument("lgst_reconstruct: frame has wrong column count");
  const int d2 = static_cast<int>(b.rows());
  const Eigen::MatrixXd f = rep.f_tilde();
  if (numerical_rank(f, kSingularTol) < std::min<int>(d2, n))
    throw std::invalid_argument("lgst_reconstruct: fiducial matrix is rank-deficient");
  const Eigen::MatrixXd fpinv = pinv(f, kSingularTol);
  const Eigen::MatrixXd bpinv = pinv(b, kSingularTol);

  GateSet out;
  out.labels = t.labels;
  out.rho.c = b * fpinv * rep.e_tilde();
  out.effect.c = bpinv.transpose() * rep.e_tilde();
  out.gates.reserve(static_cast<std::size_t>(t.ng()));
  for (int k = 0; k < t.ng(); ++k) {
    SuperOperator g;
    g.m = b * fpinv * rep.g_tilde(k) * bpinv;
    out.gates.push_back(std::move(g));
  }
  return out;
}

GateSet lgst_reconstruct(const OperationalRep& rep) {
  const int n = rep.tmpl->nf();
  // Identity frame: coordinates are defined by the fiducial images, an
  // arbitrary gauge. Only square frames keep the monoid structure intact.
  return lgst_reconstruct(rep, Eigen::MatrixXd::Identity(n, n));
}

double RepEvaluator::probability(const int* ids, std::size_t len, bool clip) const {
  constexpr int kMaxNf = 16;
  double a[kMaxNf];
  double b[kMaxNf];
  if (nf > kMaxNf) {
    Eigen::VectorXd w = v;
    Eigen::VectorXd tmp(nf);
    for (std::size_t s = 0; s < len; ++s) {
      const double* blk = m.data() + static_cast<std::size_t>(ids[s]) * nf * nf;
      for (int i = 0; i < nf; ++i) {
        double acc = 0;
        for (int j = 0; j < nf; ++j) acc += blk[i * nf + j] * w(j);
        tmp(i) = acc;
      }
      w.swap(tmp);
    }
    const double p = e.dot(w);
    return clip ? std::min(1.0, std::max(0.0, p)) : p;
  }
  double* w = a;
  double* x = b;
  for (int i = 0; i < nf; ++i) w[i] = v(i);
  for (std::size_t s = 0; s < len; ++s) {
    const double* blk = m.data() + static_cast<std::size_t>(ids[s]) * nf * nf;
    for (int i = 0; i < nf; ++i) {
      double acc = 0;
      for (int j = 0; j < nf; ++j) acc += blk[i * nf + j] * w[j];
      x[i] = acc;
    }
    std::swap(w, x);
  }
  double p = 0;
  for (int i = 0; i < nf; ++i) p += e(i) * w[i];
  return clip ? std::min(1.0, std::max(0.0, p)) : p;
}

RepEvaluator make_evaluator(const RepTemplate& tmpl, const Eigen::VectorXd& params) {
  if (params.size() != tmpl.slot_count)
    throw std::invalid_argument("make_evaluator: parameter count mismatch");
  OperationalRep rep;
  rep.tmpl = std::shared_ptr<const RepTemplate>(&tmpl, [](const RepTemplate*) {});
  rep.params = params;

  RepEvaluator ev;
  ev.nf = tmpl.nf();
  ev.ng = tmpl.ng();
  ev.e = rep.e_tilde();
  const Eigen::MatrixXd fpinv = pinv(rep.f_tilde(), kSingularTol);
  ev.v = fpinv * ev.e;
  ev.m.resize(static_cast<std::size_t>(ev.ng) * ev.nf * ev.nf);
  for (int k = 0; k < ev.ng; ++k) {
    const Eigen::MatrixXd mk = fpinv * rep.g_tilde(k);
    double* blk = ev.m.data() + static_cast<std::size_t>(k) * ev.nf * ev.nf;
    for (int i = 0; i < ev.nf; ++i)
      for (int j = 0; j < ev.nf; ++j) blk[i * ev.nf + j] = mk(i, j);
  }
  return ev;
}

double oprep_sequence_probability(const OperationalRep& rep, const Sequence& s, bool clip) {
  const auto& t = *rep.tmpl;
  const RepEvaluator ev = make_evaluator(t, rep.params);
  std::vector<int> ids;
  ids.reserve(s.size());
  for (const auto& label : s) {
    int found = -1;
    for (int k = 0; k < t.ng(); ++k)
      if (t.labels[static_cast<std::size_t>(k)] == label) {
        found = k;
        break;
      }
    if (found < 0) throw std::invalid_argument("oprep probability: unknown label '" + label + "'");
    ids.push_back(found);
  }
  return ev.probability(ids, clip);
}

PositivityReport operational_positivity(const OperationalRep& rep,
                                        const std::vector<Sequence>& probes) {
  constexpr double tol = 1e-9;
  PositivityReport r;
  const RepEvaluator ev = make_evaluator(*rep.tmpl, rep.params);
  const auto& t = *rep.tmpl;
  for (const auto& s : probes) {
    std::vector<int> ids;
    ids.reserve(s.size());
    for (const auto& label : s) {
      int found = -1;
      for (int k = 0; k < t.ng(); ++k)
        if (t.labels[static_cast<std::size_t>(k)] == label) {
          found = k;
          break;
        }
      if (found < 0) throw std::invalid_argument("positivity: unknown label '" + label + "'");
      ids.push_back(found);
    }
    const double p = ev.probability(ids, false);
    if (p < -tol || p > 1.0 + tol) {
      r.positive = false;
      r.violations.push_back(s);
    }
  }
  return r;
}

PositivityReport operational_positivity(const GateSet& gs, const std::vector<Sequence>& probes) {
  constexpr double tol = 1e-9;
  PositivityReport r;
  for (const auto& s : probes) {
    const double p = sequence_probability(gs, s);
    if (p < -tol || p > 1.0 + tol) {
      r.positive = false;
      r.violations.push_back(s);
    }
  }
  return r;
}

}  // namespace oqt
