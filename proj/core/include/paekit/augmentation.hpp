#pragma once

#include "paekit/embedding.hpp"
#include "paekit/subspace.hpp"

#include <string_view>

namespace paekit {

/// |sum_k d_k| below which the coefficient-preserving augmentation refuses to divide.
inline constexpr double kNullTextTolerance = 1e-9;
/// Distance from span(s) tolerated for the input of `aug_plus`.
inline constexpr double kSpanTolerance = 1e-6;

enum class AugMethod { Simple, Plus, Exchange, ExchangeDistinct };

std::string_view to_string(AugMethod method) noexcept;
/// Accepts the long names and the CLI short forms (`ex`, `exd`).
AugMethod aug_method_from_string(std::string_view name);

/// Augmentation recipe: which operator and its augmenting power.
struct AugKind {
  AugMethod method = AugMethod::Plus;
  double alpha = 0.0;

  /// alpha finite and >= 0; ExchangeDistinct additionally needs a positive integer.
  void validate() const;
};

/// w + alpha * text
Vector aug_simple(const Vector& w, const Vector& text, double alpha);

/// Weakens every coefficient of `w` by alpha * |c_k| and adds back the projected
/// text scaled so that the coefficient sum is unchanged.
///
/// c_k = <w, b_k>, d_k = <Proj(text), b_k>, result =
///   sum_k (c_k - alpha |c_k|) b_k + (alpha * sum_k |c_k| / sum_k d_k) Proj(text).
///
/// Throws SubspaceViolation when `w` is not in span(s) and NullTextProjection
/// when |sum_k d_k| < 1e-9.
Vector aug_plus(const CorpusSubspace& s, const Vector& w, const Vector& text, double alpha);

/// w + alpha * (text - nearest)
Vector aug_exchange(const Vector& w, const Vector& text, const Vector& nearest, double alpha);

/// w + alpha * text minus the alpha distinct members most similar to `image`,
/// each subtracted once. `alpha` must be a positive integer no larger than the set.
Vector aug_exchange_distinct(const ManifoldSet& m, const Vector& w, const Vector& image, const Vector& text,
                             double alpha);

}  // namespace paekit
