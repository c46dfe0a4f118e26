#include "paekit/generator.hpp"

#include "paekit/error.hpp"
#include "paekit/rng.hpp"

#include <cmath>

namespace paekit {

namespace {

Matrix uniform_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double bound) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-bound, bound);
  }
  return m;
}

Vector uniform_vector(Rng& rng, Eigen::Index n, double bound) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform(-bound, bound);
  return v;
}

}  // namespace

std::string_view to_string(GeneratorKind kind) noexcept {
  return kind == GeneratorKind::Linear ? "linear" : "mlp1";
}

GeneratorKind generator_kind_from_string(std::string_view name) {
  if (name == "linear") return GeneratorKind::Linear;
  if (name == "mlp1") return GeneratorKind::Mlp1;
  fail(ErrorCode::InvalidArgument, "unknown generator kind '" + std::string(name) + "'");
}

Generator Generator::make(GeneratorKind kind, std::uint64_t seed, Eigen::Index latent_dim, Eigen::Index out_dim,
                          Eigen::Index hidden) {
  if (latent_dim < 1 || out_dim < 1) fail(ErrorCode::BadDims, "generator needs latent and output dims >= 1");
  if (kind == GeneratorKind::Mlp1 && hidden < 1) fail(ErrorCode::BadDims, "mlp1 generator needs hidden width >= 1");

  Generator g;
  g.kind_ = kind;
  g.seed_ = seed;
  if (kind == GeneratorKind::Linear && seed == 0 && latent_dim == out_dim) {
    g.w1_ = Matrix::Identity(out_dim, latent_dim);
    g.b1_ = Vector::Zero(out_dim);
    return g;
  }

  Rng rng(seed);
  const double first_bound = 1.0 / std::sqrt(static_cast<double>(latent_dim));
  if (kind == GeneratorKind::Linear) {
    g.w1_ = uniform_matrix(rng, out_dim, latent_dim, first_bound);
    g.b1_ = uniform_vector(rng, out_dim, first_bound);
  } else {
    const double second_bound = 1.0 / std::sqrt(static_cast<double>(hidden));
    g.w1_ = uniform_matrix(rng, hidden, latent_dim, first_bound);
    g.b1_ = uniform_vector(rng, hidden, first_bound);
    g.w2_ = uniform_matrix(rng, out_dim, hidden, second_bound);
    g.b2_ = uniform_vector(rng, out_dim, second_bound);
  }
  return g;
}

Generator Generator::linear(Matrix weight, Vector bias) {
  if (weight.rows() < 1 || weight.cols() < 1 || bias.size() != weight.rows()) {
    fail(ErrorCode::BadDims, "linear generator weight/bias shapes disagree");
  }
  Generator g;
  g.kind_ = GeneratorKind::Linear;
  g.w1_ = std::move(weight);
  g.b1_ = std::move(bias);
  return g;
}

void Generator::require_latent(const Vector& z) const {
  if (z.size() != latent_dim()) {
    fail(ErrorCode::DimMismatch, "latent has dimension " + std::to_string(z.size()) + ", generator expects " +
                                     std::to_string(latent_dim()));
  }
}

Vector Generator::forward(const Vector& z) const {
  require_latent(z);
  if (kind_ == GeneratorKind::Linear) return w1_ * z + b1_;
  const Vector h = (w1_ * z + b1_).array().tanh().matrix();
  return w2_ * h + b2_;
}

Matrix Generator::jacobian(const Vector& z) const {
  require_latent(z);
  if (kind_ == GeneratorKind::Linear) return w1_;
  const Vector h = (w1_ * z + b1_).array().tanh().matrix();
  const Vector slope = (1.0 - h.array().square()).matrix();
  return w2_ * slope.asDiagonal() * w1_;
}

Vector Generator::backward(const Vector& z, const Vector& upstream) const {
  require_latent(z);
  if (upstream.size() != out_dim()) fail(ErrorCode::DimMismatch, "backward: upstream gradient dimension");
  if (kind_ == GeneratorKind::Linear) return w1_.transpose() * upstream;
  const Vector h = (w1_ * z + b1_).array().tanh().matrix();
  const Vector hidden_grad = ((w2_.transpose() * upstream).array() * (1.0 - h.array().square())).matrix();
  return w1_.transpose() * hidden_grad;
}

}  // namespace paekit
