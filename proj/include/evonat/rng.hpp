// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deterministic randomness. Every stochastic component draws from a stream
// seeded through derive_seed(root, {labels...}), so one root seed pins down
// an entire run regardless of scheduling or worker count. The variate
// transforms are hand-rolled on top of std::mt19937_64 because the standard
// engine sequence is pinned by the standard while the standard distributions
// are not.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace evonat {

inline constexpr std::uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += kGolden64;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed-splitting rule: fold each path component into the hash with one
// SplitMix64 round per component. Identical (root, path) pairs always name
// the same stream; distinct paths decorrelate.
inline std::uint64_t derive_seed(std::uint64_t root,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(root);
  for (std::uint64_t part : path) h = mix64(h ^ mix64(part));
  return h;
}

// FNV-1a for string path components, folded through the same rule.
inline std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label) {
  return derive_seed(root, {label_hash(label)});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double u01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Floor of u01()*n; exact for the n used here (population and sample
  // sizes), never returns n.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(u01() * static_cast<double>(n));
  }

  bool bernoulli(double p) { return u01() < p; }

  // Marsaglia polar method with a cached spare.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * u01() - 1.0;
      v = 2.0 * u01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace evonat
