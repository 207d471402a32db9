#ifndef RICSEL_RNG_HPP
#define RICSEL_RNG_HPP

#include <cmath>
#include <cstdint>

namespace ricsel {

/// Counter-based generator: each output is a stateless hash of
/// (seed, replication, stream, counter), so replication r produces the same
/// stream whether computed serially or on any worker.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t replication, std::uint64_t stream)
      : key_(mix(mix(mix(0x9e3779b97f4a7c15ull ^ seed) + replication) + stream)) {}

  std::uint64_t next_u64() {
    return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull);
  }

  /// Uniform on (0, 1), never returning the endpoints.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  // SplitMix64 finalizer (Stafford variant 13).
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ricsel

#endif  // RICSEL_RNG_HPP
