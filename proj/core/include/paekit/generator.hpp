#pragma once

#include "paekit/embedding.hpp"

#include <cstdint>
#include <string_view>

namespace paekit {

enum class GeneratorKind { Linear, Mlp1 };

std::string_view to_string(GeneratorKind kind) noexcept;
GeneratorKind generator_kind_from_string(std::string_view name);

/// Differentiable toy map from a latent code to the embedding space.
///
///   linear: out = W z + b
///   mlp1:   out = W2 tanh(W1 z + b1) + b2
///
/// Parameters are drawn uniformly from [-1/sqrt(fan_in), 1/sqrt(fan_in)] using
/// `Rng(seed)`, weights first then biases, layer by layer. The combination
/// (linear, seed 0, L == D) is reserved for the identity map.
class Generator {
 public:
  static Generator make(GeneratorKind kind, std::uint64_t seed, Eigen::Index latent_dim, Eigen::Index out_dim,
                        Eigen::Index hidden = 0);
  /// Linear generator with explicit parameters.
  static Generator linear(Matrix weight, Vector bias);

  GeneratorKind kind() const noexcept { return kind_; }
  std::uint64_t seed() const noexcept { return seed_; }
  Eigen::Index latent_dim() const noexcept { return w1_.cols(); }
  Eigen::Index out_dim() const noexcept { return kind_ == GeneratorKind::Linear ? w1_.rows() : w2_.rows(); }
  Eigen::Index hidden_dim() const noexcept { return kind_ == GeneratorKind::Mlp1 ? w1_.rows() : 0; }

  Vector forward(const Vector& z) const;
  /// d forward / d z, out_dim x latent_dim.
  Matrix jacobian(const Vector& z) const;
  /// J(z)^T * upstream without forming J.
  Vector backward(const Vector& z, const Vector& upstream) const;

  const Matrix& first_weight() const noexcept { return w1_; }
  const Vector& first_bias() const noexcept { return b1_; }
  const Matrix& second_weight() const noexcept { return w2_; }
  const Vector& second_bias() const noexcept { return b2_; }

 private:
  Generator() = default;
  void require_latent(const Vector& z) const;

  GeneratorKind kind_ = GeneratorKind::Linear;
  std::uint64_t seed_ = 0;
  Matrix w1_;
  Vector b1_;
  Matrix w2_;  // mlp1 only
  Vector b2_;  // mlp1 only
};

}  // namespace paekit
