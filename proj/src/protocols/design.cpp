#include "oqt/protocols/design.hpp"

#include <stdexcept>
#include <unordered_map>

namespace oqt {

std::vector<Datum> simulate_design(const GateSet& truth, const std::vector<DesignEntry>& entries,
                                   Rng& rng) {
  std::vector<Datum> data;
  data.reserve(entries.size());
  for (const auto& entry : entries) {
    const double p =
        std::min(1.0, std::max(0.0, sequence_probability(truth, entry.sequence)));
    Datum d;
    d.sequence = entry.sequence;
    d.trials = entry.shots;
    long k = 0;
    for (long t = 0; t < entry.shots; ++t)
      if (rng.uniform() < p) ++k;
    d.successes = k;
    data.push_back(std::move(d));
  }
  return data;
}

double tvd(double p_predicted, double p_observed) { return std::abs(p_predicted - p_observed); }

double tvd_total(const ParticleCloud& cloud, const std::vector<DesignEntry>& testing,
                 const std::vector<Datum>& data) {
  std::unordered_map<std::string, const Datum*> by_key;
  for (const auto& d : data) by_key[sequence_key(d.sequence)] = &d;
  double total = 0;
  for (const auto& entry : testing) {
    const auto it = by_key.find(sequence_key(entry.sequence));
    if (it == by_key.end())
      throw std::invalid_argument("tvd_total: no record for sequence " + sequence_key(entry.sequence));
    const Datum& d = *it->second;
    if (d.trials <= 0) throw std::invalid_argument("tvd_total: empty record");
    const double observed = static_cast<double>(d.successes) / static_cast<double>(d.trials);
    total += tvd(predict(cloud, entry.sequence).bme, observed);
  }
  return total;
}

}  // namespace oqt
