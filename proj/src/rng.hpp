#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace nlslab {

// Deterministic generator with hand-rolled output transforms so that sampled
// streams are bit-identical across standard libraries (std::*_distribution
// sequences are implementation-defined, which would break the byte-identical
// artifact contract).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix(seed)) {
    for (int i = 0; i < 4; ++i) next_u64();
  }

  std::uint64_t next_u64() {
    // xorshift64* step
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // log-uniform modulus in [lo,hi], lo>0
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  // standard normal via Box-Muller (always consumes two uniforms)
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  std::complex<double> complex_normal() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

  // uniform phase, log-uniform modulus
  std::complex<double> log_uniform_complex(double lo, double hi) {
    double rho = log_uniform(lo, hi);
    double th = uniform(0.0, 6.283185307179586477);
    return std::polar(rho, th);
  }

  // derive an independent stream (for per-worker reproducibility)
  Rng fork(std::uint64_t salt) const {
    return Rng(splitmix(state_ ^ splitmix(salt ^ 0x9E3779B97F4A7C15ULL)));
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t state_;
};

}  // namespace nlslab
