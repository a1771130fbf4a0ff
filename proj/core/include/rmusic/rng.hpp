#pragma once

#include <cmath>
#include <cstdint>

namespace rmusic {

// splitmix64 step; used to derive independent sub-stream seeds from one
// master seed so that adding a consumer never shifts the draws of another.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for the `index`-th sub-stream of `master`. Mixing both words keeps
// streams decorrelated even for adjacent master seeds.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x5851f42d4c957f2dULL * (index + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

// All randomized operators draw from this generator. Every transform below
// is spelled out here rather than delegated to <random> distributions, whose
// output sequences differ between standard library implementations; with
// this engine a seed pins the same draws on every platform and compiler.
class Engine {
 public:
  explicit Engine(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via the Marsaglia polar method. Draws come in pairs;
  // the spare is cached so consecutive calls amortize one log and sqrt per
  // two normals, with no trigonometry.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

}  // namespace rmusic
