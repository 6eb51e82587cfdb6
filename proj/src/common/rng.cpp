#include "oqt/common/rng.hpp"

#include <sstream>
#include <stdexcept>

namespace oqt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : lineage_(splitmix64(seed)), engine_(splitmix64(seed) ^ 0x6a09e667f3bcc908ull) {}

Rng Rng::substream(std::uint64_t key) const {
  return Rng(lineage_ ^ splitmix64(key ^ 0xd1b54a32d192ed03ull));
}

Rng Rng::substream(std::string_view name) const { return substream(fnv1a(name)); }

double Rng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double Rng::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("uniform: lo > hi");
  return lo + (hi - lo) * uniform();
}

double Rng::normal(double mean, double stddev) {
  if (stddev < 0) throw std::invalid_argument("normal: negative stddev");
  return std::normal_distribution<double>(mean, stddev)(engine_);
}

std::uint64_t Rng::integer(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("integer: empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

std::string Rng::save_state() const {
  std::ostringstream os;
  os << lineage_ << ' ' << engine_;
  return os.str();
}

void Rng::restore_state(const std::string& text) {
  std::istringstream is(text);
  is >> lineage_ >> engine_;
  if (is.fail()) throw std::invalid_argument("rng state: parse failure");
}

}  // namespace oqt
