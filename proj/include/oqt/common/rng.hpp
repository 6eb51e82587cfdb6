#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace oqt {

// Deterministic stream tree over mt19937_64. A substream is derived from the
// parent's lineage id and a key, never from draw history, so adding draws in
// one code path cannot shift the values seen by another.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng substream(std::uint64_t key) const;
  Rng substream(std::string_view name) const;

  // uniform in [0, 1)
  double uniform();
  double uniform(double lo, double hi);
  double normal(double mean, double stddev);
  // uniform integer in [0, n); n must be positive
  std::uint64_t integer(std::uint64_t n);

  std::string save_state() const;
  void restore_state(const std::string& text);

 private:
  std::uint64_t lineage_;
  std::mt19937_64 engine_;
};

}  // namespace oqt
