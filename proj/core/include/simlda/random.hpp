#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace simlda {

/// SplitMix64 finalizer. Used to turn (seed, stream) pairs into
/// decorrelated engine seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of child stream `stream` under `seed`. Pure function, so any
/// component can re-derive the seed of any other without shared state.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded generator used for all randomness in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. All variates (uniform, normal, gamma) are produced here
/// from raw engine output rather than through <random> distributions,
/// whose algorithms are implementation-defined. Identical seeds therefore
/// give identical streams on every conforming toolchain.
///
/// Stream splitting: `child(i)` returns a fresh generator seeded with
/// derive_seed(seed(), i). Children depend only on the parent's seed, not
/// on how far the parent has advanced.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  Rng child(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Uniform integer in [0, n). Unbiased (rejection sampling).
  std::size_t uniform_index(std::size_t n);
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Gamma(shape, 1) variate. shape > 0.
  double gamma(double shape);
  /// log of a Gamma(shape, 1) variate, computed without underflow for
  /// small shapes: log G(a) = log G(a + 1) + log(U) / a when a < 1.
  double log_gamma(double shape);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Draws from Dirichlet(concentration) via normalized Gamma variates.
/// Throws ParameterError on non-positive or non-finite concentrations.
std::vector<double> sample_dirichlet(std::span<const double> concentration, Rng& rng);

/// Draws index i with probability p[i]. `p` must sum to 1 within 1e-9.
/// Never returns an index with p[i] == 0.
std::size_t sample_categorical(std::span<const double> p, Rng& rng);

/// Distance between two positions on a circle of `span` slots.
std::size_t circular_distance(std::size_t a, std::size_t b, std::size_t span);

}  // namespace simlda
