#pragma once

#include <cstdint>
#include <random>

namespace swidopt {

// splitmix64 finalizer, used to whiten stream identifiers before seeding.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// A deterministic substream keyed by (seed, batch, user). Substreams are
// independent of how batches are scheduled onto threads, so simulation
// output is bitwise reproducible for any thread count.
class RngStream {
 public:
  static RngStream substream(std::uint64_t seed, std::uint64_t batch, std::uint64_t user) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ (batch + 0x9E3779B97F4A7C15ull));
    s = splitmix64(s ^ (user + 0xD1B54A32D192ED03ull));
    return RngStream(s);
  }

  // uniform in [0, 1) with 53 bits of precision
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next() { return engine_(); }

 private:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}
  std::mt19937_64 engine_;
};

}  // namespace swidopt
