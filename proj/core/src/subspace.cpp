#include "paekit/subspace.hpp"

#include "paekit/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace paekit {

namespace {

void require_prompts(std::span<const Embedding> prompts, std::string_view op) {
  if (prompts.empty()) fail(ErrorCode::EmptyInput, std::string(op) + ": no prompt embeddings");
  const auto dim = prompts.front().vector.size();
  for (const auto& p : prompts) {
    if (p.kind != Modality::Text) {
      fail(ErrorCode::KindMismatch, std::string(op) + ": '" + p.id + "' is not a text embedding");
    }
    if (p.vector.size() != dim) {
      fail(ErrorCode::DimMismatch, std::string(op) + ": '" + p.id + "' has a different dimension");
    }
  }
}

std::vector<std::string> labels_of(std::span<const Embedding> items) {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& e : items) out.push_back(e.label.empty() ? e.id : e.label);
  return out;
}

void fix_sign(Eigen::Ref<Vector> v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0) v = -v;
}

}  // namespace

std::string_view to_string(BasisMethod method) noexcept {
  switch (method) {
    case BasisMethod::GramSchmidt: return "gram_schmidt";
    case BasisMethod::Raw: return "raw";
    case BasisMethod::Pca: return "pca";
  }
  return "raw";
}

BasisMethod basis_method_from_string(std::string_view name) {
  if (name == "gram_schmidt" || name == "gs") return BasisMethod::GramSchmidt;
  if (name == "raw") return BasisMethod::Raw;
  if (name == "pca") return BasisMethod::Pca;
  fail(ErrorCode::SchemaError, "unknown subspace method '" + std::string(name) + "'");
}

CorpusSubspace::CorpusSubspace(Matrix basis, BasisMethod method, std::vector<std::string> source_labels,
                               std::optional<std::vector<double>> explained_variance)
    : basis_(std::move(basis)),
      method_(method),
      source_labels_(std::move(source_labels)),
      explained_variance_(std::move(explained_variance)) {
  const auto n = basis_.cols();
  const auto d = basis_.rows();
  if (n < 1 || d < 1 || n > d) {
    fail(ErrorCode::InvalidArgument, "subspace basis must satisfy 1 <= N <= D (got N=" +
                                         std::to_string(n) + ", D=" + std::to_string(d) + ")");
  }
  if (!basis_.allFinite()) fail(ErrorCode::InvalidArgument, "subspace basis has non-finite entries");
  if (orthonormal()) {
    const Matrix gram = basis_.transpose() * basis_;
    const double err = (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (err >= kOrthonormalTolerance) {
      fail(ErrorCode::InvalidArgument,
           "basis declared orthonormal deviates from identity Gram matrix by " + std::to_string(err));
    }
  }
  if (explained_variance_) {
    const auto& ev = *explained_variance_;
    if (static_cast<Eigen::Index>(ev.size()) != n) {
      fail(ErrorCode::InvalidArgument, "explained_variance length must equal N");
    }
    for (std::size_t i = 1; i < ev.size(); ++i) {
      if (ev[i] > ev[i - 1]) fail(ErrorCode::InvalidArgument, "explained_variance must be non-increasing");
    }
  }
}

ManifoldSet::ManifoldSet(std::vector<ManifoldMember> members) : members_(std::move(members)) {
  if (members_.empty()) fail(ErrorCode::EmptyInput, "manifold sample set needs at least one member");
  const auto dim = members_.front().vector.size();
  for (const auto& m : members_) {
    if (m.vector.size() != dim) fail(ErrorCode::DimMismatch, "manifold member '" + m.label + "' dimension");
    if (std::abs(m.vector.norm() - 1.0) >= 1e-6) {
      fail(ErrorCode::InvalidArgument, "manifold member '" + m.label + "' is not unit norm");
    }
  }
}

CorpusSubspace build_gs(std::span<const Embedding> prompts) {
  require_prompts(prompts, "build_gs");
  const auto d = prompts.front().vector.size();
  Matrix basis(d, static_cast<Eigen::Index>(prompts.size()));
  Eigen::Index n = 0;
  for (const auto& p : prompts) {
    const double norm = p.vector.norm();
    if (!(norm >= kZeroNormTolerance)) {
      fail(ErrorCode::DegenerateBasis, "prompt '" + (p.label.empty() ? p.id : p.label) + "' is a zero vector");
    }
    Vector v = p.vector / norm;
    // Modified Gram-Schmidt, first pass decides degeneracy.
    for (Eigen::Index k = 0; k < n; ++k) v -= basis.col(k).dot(v) * basis.col(k);
    const double residual = v.norm();
    if (residual < kGramSchmidtTolerance) {
      fail(ErrorCode::DegenerateBasis, "prompt '" + (p.label.empty() ? p.id : p.label) +
                                           "' is nearly in the span of earlier prompts (residual " +
                                           std::to_string(residual) + ")");
    }
    // Second pass restores orthogonality lost to cancellation.
    for (Eigen::Index k = 0; k < n; ++k) v -= basis.col(k).dot(v) * basis.col(k);
    basis.col(n++) = v.normalized();
  }
  return CorpusSubspace(std::move(basis), BasisMethod::GramSchmidt, labels_of(prompts));
}

CorpusSubspace build_raw(std::span<const Embedding> prompts) {
  require_prompts(prompts, "build_raw");
  const auto d = prompts.front().vector.size();
  Matrix basis(d, static_cast<Eigen::Index>(prompts.size()));
  for (std::size_t k = 0; k < prompts.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = normalize(prompts[k].vector);
  }
  return CorpusSubspace(std::move(basis), BasisMethod::Raw, labels_of(prompts));
}

PrincipalComponents principal_components(const Matrix& samples, Eigen::Index n_components, PcaRoute route) {
  const auto n = samples.rows();
  const auto d = samples.cols();
  if (n_components < 1 || n_components > std::min(n, d)) {
    fail(ErrorCode::InvalidArgument, "principal_components: need 1 <= N <= min(samples, dim), got N=" +
                                         std::to_string(n_components));
  }
  PrincipalComponents out;
  out.mean = samples.colwise().mean().transpose();
  const Matrix centered = samples.rowwise() - out.mean.transpose();
  const double divisor = n > 1 ? static_cast<double>(n - 1) : 1.0;
  const double scale = samples.rowwise().squaredNorm().mean();

  if (route == PcaRoute::Auto) route = n < d ? PcaRoute::Gram : PcaRoute::Covariance;

  Vector eigenvalues;
  Matrix directions(d, n_components);
  if (route == PcaRoute::Covariance) {
    const Matrix cov = centered.transpose() * centered / divisor;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
    if (solver.info() != Eigen::Success) fail(ErrorCode::RankDeficient, "covariance eigensolver failed");
    eigenvalues = solver.eigenvalues().reverse();
    for (Eigen::Index k = 0; k < n_components; ++k) directions.col(k) = solver.eigenvectors().col(d - 1 - k);
  } else {
    const Matrix gram = centered * centered.transpose() / divisor;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
    if (solver.info() != Eigen::Success) fail(ErrorCode::RankDeficient, "Gram eigensolver failed");
    eigenvalues = solver.eigenvalues().reverse();
    for (Eigen::Index k = 0; k < n_components; ++k) {
      Vector v = centered.transpose() * solver.eigenvectors().col(n - 1 - k);
      const double norm = v.norm();
      if (norm > 0) v /= norm;
      directions.col(k) = v;
    }
  }

  const double top = std::max(eigenvalues(0), 0.0);
  const double threshold = 1e-10 * std::max(top, scale);
  if (!(eigenvalues(n_components - 1) > threshold)) {
    fail(ErrorCode::RankDeficient, "corpus covariance has fewer than " + std::to_string(n_components) +
                                       " directions with non-zero variance");
  }
  if (route == PcaRoute::Gram) {
    // Gram-route vectors are orthogonal only up to eigensolver accuracy; tidy with one QR pass.
    Eigen::HouseholderQR<Matrix> qr(directions);
    Matrix q = qr.householderQ() * Matrix::Identity(d, n_components);
    for (Eigen::Index k = 0; k < n_components; ++k) {
      if (q.col(k).dot(directions.col(k)) < 0) q.col(k) = -q.col(k);
    }
    directions = std::move(q);
  }
  for (Eigen::Index k = 0; k < n_components; ++k) fix_sign(directions.col(k));

  out.components = std::move(directions);
  out.variances.assign(eigenvalues.data(), eigenvalues.data() + n_components);
  return out;
}

CorpusSubspace build_pca(std::span<const Embedding> corpus, Eigen::Index n_components) {
  if (corpus.empty()) fail(ErrorCode::EmptyInput, "build_pca: empty corpus");
  if (n_components < 1 || static_cast<std::size_t>(n_components) > corpus.size()) {
    fail(ErrorCode::InvalidArgument, "build_pca: need corpus size >= N >= 1");
  }
  const auto d = corpus.front().vector.size();
  Matrix samples(static_cast<Eigen::Index>(corpus.size()), d);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].vector.size() != d) fail(ErrorCode::DimMismatch, "build_pca: '" + corpus[i].id + "'");
    samples.row(static_cast<Eigen::Index>(i)) = corpus[i].vector.transpose();
  }
  if (n_components > d) fail(ErrorCode::InvalidArgument, "build_pca: N exceeds dimension");
  auto pc = principal_components(samples, n_components);
  std::vector<std::string> labels{"pca of " + std::to_string(corpus.size()) + " texts"};
  return CorpusSubspace(std::move(pc.components), BasisMethod::Pca, std::move(labels), std::move(pc.variances));
}

ManifoldSet build_sample_set(std::span<const Embedding> corpus) {
  if (corpus.empty()) fail(ErrorCode::EmptyInput, "build_sample_set: empty corpus");
  std::vector<ManifoldMember> members;
  members.reserve(corpus.size());
  for (const auto& e : corpus) {
    if (e.vector.size() != corpus.front().vector.size()) {
      fail(ErrorCode::DimMismatch, "build_sample_set: '" + e.id + "'");
    }
    members.push_back({e.label.empty() ? e.id : e.label, normalize(e.vector)});
  }
  return ManifoldSet(std::move(members));
}

Vector project(const CorpusSubspace& s, const Vector& v) {
  if (v.size() != s.dim()) fail(ErrorCode::DimMismatch, "project: vector dimension differs from subspace");
  return s.basis() * (s.basis().transpose() * v);
}

Vector coefficients(const CorpusSubspace& s, const Vector& v) {
  if (v.size() != s.dim()) fail(ErrorCode::DimMismatch, "coefficients: vector dimension differs from subspace");
  return s.basis().transpose() * v;
}

double distance_to_span(const CorpusSubspace& s, const Vector& v) {
  if (v.size() != s.dim()) fail(ErrorCode::DimMismatch, "distance_to_span: dimension mismatch");
  if (s.orthonormal()) return (v - project(s, v)).norm();
  Eigen::ColPivHouseholderQR<Matrix> qr(s.basis());
  const Vector fit = s.basis() * qr.solve(v);
  return (v - fit).norm();
}

std::vector<std::size_t> rank_members(const ManifoldSet& m, const Vector& v) {
  if (v.size() != m.dim()) fail(ErrorCode::DimMismatch, "manifold query dimension differs");
  if (!(v.norm() >= kZeroNormTolerance)) fail(ErrorCode::ZeroVector, "manifold query is a zero vector");
  std::vector<double> sims(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) sims[i] = cosine_similarity(v, m.members()[i].vector);
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sims[a] > sims[b]; });
  return order;
}

ManifoldMatch project_all(const ManifoldSet& m, const Vector& v) {
  if (v.size() != m.dim()) fail(ErrorCode::DimMismatch, "project_all: dimension mismatch");
  if (!(v.norm() >= kZeroNormTolerance)) fail(ErrorCode::ZeroVector, "project_all: zero query");
  std::size_t best = 0;
  double best_sim = cosine_similarity(v, m.members()[0].vector);
  for (std::size_t i = 1; i < m.size(); ++i) {
    const double sim = cosine_similarity(v, m.members()[i].vector);
    if (sim > best_sim) {
      best = i;
      best_sim = sim;
    }
  }
  const auto& member = m.members()[best];
  return {best, member.label, member.vector};
}

}  // namespace paekit
