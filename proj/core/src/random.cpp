#include "simlda/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simlda/errors.hpp"

namespace simlda {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream ^ 0x5851f42d4c957f2dULL));
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw ParameterError("uniform_index: empty range");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

double Rng::normal() {
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

double Rng::log_gamma(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw ParameterError("gamma shape must be positive and finite, got " +
                         std::to_string(shape));
  }
  if (shape < 1.0) return log_gamma(shape + 1.0) + std::log(uniform_open()) / shape;

  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return std::log(d) + std::log(v);
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return std::log(d) + std::log(v);
    }
  }
}

double Rng::gamma(double shape) { return std::exp(log_gamma(shape)); }

std::vector<double> sample_dirichlet(std::span<const double> concentration, Rng& rng) {
  if (concentration.empty()) throw ParameterError("dirichlet: empty concentration");
  for (double a : concentration) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ParameterError("dirichlet: concentration must be positive, got " +
                           std::to_string(a));
    }
  }
  std::vector<double> out(concentration.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.log_gamma(concentration[i]);

  const double top = *std::max_element(out.begin(), out.end());
  double total = 0.0;
  for (double& x : out) {
    x = std::exp(x - top);
    total += x;
  }
  for (double& x : out) x /= total;

  // Second pass pulls the sum to 1 within a couple of ulps.
  total = 0.0;
  for (double x : out) total += x;
  for (double& x : out) x /= total;
  return out;
}

std::size_t sample_categorical(std::span<const double> p, Rng& rng) {
  if (p.empty()) throw ParameterError("categorical: empty probability vector");
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ParameterError("categorical: probabilities must be finite and nonnegative");
    }
    total += x;
  }
  if (total == 0.0) throw ParameterError("categorical: all probabilities are zero");
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("categorical: probabilities sum to " + std::to_string(total));
  }

  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last_positive = i;
    cumulative += p[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

std::size_t circular_distance(std::size_t a, std::size_t b, std::size_t span) {
  if (a >= span || b >= span) {
    throw ParameterError("circular_distance: index outside circle of " + std::to_string(span));
  }
  const std::size_t direct = a > b ? a - b : b - a;
  return std::min(direct, span - direct);
}

}  // namespace simlda
