#include "paekit/augmentation.hpp"

#include "paekit/error.hpp"

#include <cmath>

namespace paekit {

namespace {

void require_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    fail(ErrorCode::InvalidAlpha, "augmenting power must be finite and non-negative, got " + std::to_string(alpha));
  }
}

}  // namespace

std::string_view to_string(AugMethod method) noexcept {
  switch (method) {
    case AugMethod::Simple: return "simple";
    case AugMethod::Plus: return "plus";
    case AugMethod::Exchange: return "exchange";
    case AugMethod::ExchangeDistinct: return "exchange_distinct";
  }
  return "simple";
}

AugMethod aug_method_from_string(std::string_view name) {
  if (name == "simple") return AugMethod::Simple;
  if (name == "plus") return AugMethod::Plus;
  if (name == "exchange" || name == "ex") return AugMethod::Exchange;
  if (name == "exchange_distinct" || name == "exd") return AugMethod::ExchangeDistinct;
  fail(ErrorCode::InvalidConfig, "unknown augmentation '" + std::string(name) + "'");
}

void AugKind::validate() const {
  require_alpha(alpha);
  if (method == AugMethod::ExchangeDistinct && (alpha < 1.0 || std::floor(alpha) != alpha)) {
    fail(ErrorCode::InvalidAlpha, "exchange_distinct needs a positive integer alpha, got " + std::to_string(alpha));
  }
}

Vector aug_simple(const Vector& w, const Vector& text, double alpha) {
  require_same_dim(w, text, "aug_simple");
  require_alpha(alpha);
  return w + alpha * text;
}

Vector aug_plus(const CorpusSubspace& s, const Vector& w, const Vector& text, double alpha) {
  require_alpha(alpha);
  if (w.size() != s.dim() || text.size() != s.dim()) {
    fail(ErrorCode::DimMismatch, "aug_plus: vectors must match the subspace dimension");
  }
  const double off_span = distance_to_span(s, w);
  if (off_span >= kSpanTolerance * std::max(1.0, w.norm())) {
    fail(ErrorCode::SubspaceViolation, "aug_plus: w lies " + std::to_string(off_span) + " away from the subspace");
  }
  const Vector projected_text = project(s, text);
  const Vector c = coefficients(s, w);
  const Vector d = coefficients(s, projected_text);
  const double d_sum = d.sum();
  if (std::abs(d_sum) < kNullTextTolerance) {
    fail(ErrorCode::NullTextProjection, "aug_plus: projected text coefficients sum to " + std::to_string(d_sum));
  }
  // Written as w + alpha * delta. With w in span(s) and an orthonormal basis,
  // sum_k c_k b_k == w, so this equals the weakened-coefficient form exactly
  // and leaves alpha == 0 a bitwise identity.
  const Vector delta = -(s.basis() * c.cwiseAbs()) + (c.cwiseAbs().sum() / d_sum) * projected_text;
  return w + alpha * delta;
}

Vector aug_exchange(const Vector& w, const Vector& text, const Vector& nearest, double alpha) {
  require_same_dim(w, text, "aug_exchange");
  require_same_dim(w, nearest, "aug_exchange");
  require_alpha(alpha);
  return w + alpha * (text - nearest);
}

Vector aug_exchange_distinct(const ManifoldSet& m, const Vector& w, const Vector& image, const Vector& text,
                             double alpha) {
  require_same_dim(w, text, "aug_exchange_distinct");
  require_same_dim(w, image, "aug_exchange_distinct");
  if (w.size() != m.dim()) fail(ErrorCode::DimMismatch, "aug_exchange_distinct: sample set dimension");
  AugKind{AugMethod::ExchangeDistinct, alpha}.validate();
  const auto count = static_cast<std::size_t>(alpha);
  if (count > m.size()) {
    fail(ErrorCode::AlphaExceedsCorpus, "aug_exchange_distinct: alpha " + std::to_string(count) +
                                            " exceeds the " + std::to_string(m.size()) + " stored texts");
  }
  const auto order = rank_members(m, image);
  Vector out = w + alpha * text;
  for (std::size_t i = 0; i < count; ++i) out -= m.members()[order[i]].vector;
  return out;
}

}  // namespace paekit
