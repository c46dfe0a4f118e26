#pragma once

#include "paekit/embedding.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace paekit {

/// Seeded, platform-independent random source.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so
/// uniforms are built from the top 53 bits and normals via Box-Muller here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(theta);
    has_spare_ = true;
    return radius * std::cos(theta);
  }

  Vector normal_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Vector unit_vector(Eigen::Index n) {
    Vector v = normal_vector(n);
    while (v.norm() < 1e-12) v = normal_vector(n);
    return v.normalized();
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace paekit
