// Deterministic random number generation.
//
// Every distribution used by the library is generated here from explicit,
// published algorithms rather than from <random>'s distribution classes:
// the C++ standard pins the engines but leaves distribution algorithms
// implementation-defined, which would break the bitwise-reproducibility
// contract across standard libraries.  Each generator below cites the
// algorithm it implements.
//
// Engine: PCG XSL-RR 128/64 (O'Neill, "PCG: A Family of Simple Fast
// Space-Efficient Statistically Good Algorithms for Random Number
// Generation", 2014).  128-bit LCG state, 64-bit rotated-xorshift output,
// 2^63 independent streams selected by the increment, and O(log n) jumps
// via Brown's LCG advance ("Random number generation with arbitrary
// strides", 1994), which gives cheap counter-based replay.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace heavytail {

class Pcg64 {
 public:
  using u128 = unsigned __int128;

  // Reference PCG seeding sequence: zero state, bump, add seed, bump.
  Pcg64(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(0), inc_((static_cast<u128>(stream) << 1u) | 1u) {
    step();
    state_ += (static_cast<u128>(splitmix64(seed)) << 64) |
              splitmix64(seed + 0x9E3779B97F4A7C15ull);
    step();
  }

  std::uint64_t next() noexcept {
    step();
    return output(state_);
  }

  // Brown (1994): advance an LCG by `delta` steps in O(log delta).
  void advance(std::uint64_t delta) noexcept {
    u128 acc_mult = 1, acc_plus = 0;
    u128 cur_mult = kMult, cur_plus = inc_;
    while (delta > 0) {
      if (delta & 1u) {
        acc_mult *= cur_mult;
        acc_plus = acc_plus * cur_mult + cur_plus;
      }
      cur_plus = (cur_mult + 1) * cur_plus;
      cur_mult *= cur_mult;
      delta >>= 1u;
    }
    state_ = acc_mult * state_ + acc_plus;
  }

 private:
  static constexpr u128 kMult =
      (static_cast<u128>(2549297995355413924ull) << 64) | 4865540595714422341ull;

  static std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  static std::uint64_t output(u128 state) noexcept {
    const auto rot = static_cast<unsigned>(state >> 122u);
    const auto xored =
        static_cast<std::uint64_t>(state >> 64u) ^ static_cast<std::uint64_t>(state);
    return (xored >> rot) | (xored << ((64u - rot) & 63u));
  }

  void step() noexcept { state_ = state_ * kMult + inc_; }

  u128 state_;
  u128 inc_;
};

// A named position in the generator's sequence space: (seed, stream,
// counter).  Identical triples reproduce identical draws on any platform
// and any worker count; `counter` counts raw 64-bit words consumed, so a
// stream can be re-opened mid-sequence in O(log counter).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                     std::uint64_t counter = 0) noexcept
      : engine_(seed, stream), seed_(seed), stream_(stream), counter_(counter) {
    if (counter != 0) engine_.advance(counter);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return engine_.next();
  }

  // Uniform on the open interval (0,1): 53 explicit bits, offset half an
  // ulp so 0 and 1 are unreachable (safe under log and reciprocal maps).
  double next_u01() noexcept {
    return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53 + 0x1.0p-54;
  }

  // --- elementary inverse-CDF / transformation draws -------------------

  double exponential() noexcept { return -std::log(next_u01()); }

  // Survival exp(-x^gamma): inverse transform of the Weibull law.
  double weibull(double gamma) noexcept {
    return std::pow(exponential(), 1.0 / gamma);
  }

  // Box & Muller (1958) polar-free form; consumes exactly two raw words
  // per variate (no cached spare), keeping replay arithmetic simple.
  double normal() noexcept {
    const double u1 = next_u01();
    const double u2 = next_u01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Standard Laplace (density exp(-|x|)/2) by inverse CDF.
  double laplace() noexcept {
    const double u = next_u01();
    return (u < 0.5) ? std::log(2.0 * u) : -std::log(2.0 - 2.0 * u);
  }

  // Fair sign in {-1,+1}.
  double sign() noexcept { return (next_u64() >> 63u) ? 1.0 : -1.0; }

  // Geometric on {1,2,...} with success probability p: inverse CDF,
  // Devroye (1986) ch. X.2.
  double geometric(double p) noexcept {
    if (p >= 1.0) return 1.0;
    return 1.0 + std::floor(std::log(next_u01()) / std::log1p(-p));
  }

  // --- heavier machinery, declared here, defined in rng.cpp ------------

  // Binomial(n, p) exactly; BTRD rejection (Hörmann 1993) for large
  // n*min(p,1-p), inverse-CDF search otherwise.  n may exceed 2^53; the
  // returned count is then accurate to one ulp, which is negligible
  // relative to the O(sqrt(n)) fluctuation scale.
  double binomial(double n, double p) noexcept;

  // Poisson(mean) exactly; PTRS rejection (Hörmann 1993) for mean >= 10,
  // product-of-uniforms inversion below.
  double poisson(double mean) noexcept;

  // Gamma(shape, 1) by Marsaglia & Tsang (2000) squeeze; shape < 1 via
  // the boosting relation G_a = G_{a+1} * U^{1/a}.
  double gamma(double shape) noexcept;

  // Positive strictly stable S(delta,1), delta in (0,1], normalised so
  // that E[exp(-s X)] = exp(-s^delta); Kanter (1975).  delta == 1 is the
  // degenerate point mass at 1.
  double positive_stable(double delta) noexcept;

  // Symmetric strictly stable S(alpha,0), alpha in (0,2], normalised so
  // that E[exp(i t X)] = exp(-|t|^alpha); Chambers, Mallows & Stuck
  // (1976).  alpha == 2 gives sqrt(2) * Normal, alpha == 1 Cauchy.
  double symmetric_stable(double alpha) noexcept;

 private:
  Pcg64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

// Deterministic substream labelling for sharded work: the logical stream
// index is (base << 21) | shard, so any task graph with fewer than 2^21
// shards per base stream gets collision-free increments no matter how
// many worker threads execute it.
inline std::uint64_t substream(std::uint64_t base, std::uint64_t shard) {
  if (shard >= (1ull << 21u)) throw std::invalid_argument("substream: shard index too large");
  return (base << 21u) | shard;
}

}  // namespace heavytail
