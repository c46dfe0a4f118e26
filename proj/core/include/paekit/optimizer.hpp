#pragma once

#include "paekit/embedding.hpp"
#include "paekit/generator.hpp"
#include "paekit/subspace.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paekit {

enum class TargetKind { NaiveText, Pae, Dpe, Directional };

std::string_view to_string(TargetKind kind) noexcept;
/// Accepts `naive`, `naive_text`, `pae`, `dpe`, `directional`.
TargetKind target_kind_from_string(std::string_view name);

/// What the cosine loss compares the generator output against.
///
///   naive, pae:  1 - cos(g(z), target)
///   dpe:         1 - cos(P g(z), P e_T), P the subspace projection
///   directional: 1 - cos(g(z) - anchor, e_T - e_neutral)
struct LossSpec {
  TargetKind kind = TargetKind::NaiveText;
  Vector target;  // e_T, the PAE vector, P e_T, or e_T - e_neutral
  Vector anchor;  // directional only: embedding of the unedited image
  std::shared_ptr<const CorpusSubspace> subspace;  // dpe only

  static LossSpec naive(Vector text);
  static LossSpec pae(Vector pae_vector);
  static LossSpec dpe(std::shared_ptr<const CorpusSubspace> subspace, const Vector& text);
  static LossSpec directional(Vector anchor, const Vector& text, const Vector& neutral_text);

  Eigen::Index dim() const noexcept { return target.size(); }
};

struct LossValue {
  double loss = 0.0;
  Vector grad;  // d loss / d z
};

/// Throws DegenerateDirection when either cosine argument has norm < 1e-12.
LossValue loss_value_and_grad(const LossSpec& spec, const Generator& g, const Vector& z);

struct OptimizerSettings {
  double lr = 0.1;
  int max_steps = 500;
  double tol = 1e-3;
  bool record_latents = false;
};

struct TraceStep {
  int step = 0;
  double loss = 0.0;
  std::optional<Vector> latent;
};

struct OptimizationTrace {
  std::vector<TraceStep> steps;
  Vector final_latent;  // the latent whose loss is steps.back().loss
  Vector final_output;
  bool converged = false;
  OptimizerSettings settings;
};

/// Fixed-step gradient descent z <- z - lr * grad. Step t records loss(z_t);
/// the run stops once a recorded loss is below `tol` or after `max_steps`
/// evaluations. No update follows the final evaluation.
OptimizationTrace optimize(const LossSpec& spec, const Generator& g, const Vector& z0,
                           const OptimizerSettings& settings = {});

/// Max over latent coordinates of |analytic - central difference| / max(1e-12, |central difference|).
double finite_diff_check(const LossSpec& spec, const Generator& g, const Vector& z, double eps);

void write_trace_csv(const OptimizationTrace& trace, std::ostream& out);
std::string trace_to_json(const OptimizationTrace& trace);

}  // namespace paekit
