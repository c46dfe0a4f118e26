#include "paekit/optimizer.hpp"

#include "json_util.hpp"
#include "paekit/csv.hpp"
#include "paekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace paekit {

namespace {

struct CosineGrad {
  double cosine;
  Vector d_cos_du;  // gradient of cos(u, t) with respect to u
};

CosineGrad cosine_and_grad(const Vector& u, const Vector& t, std::string_view what) {
  const double nu = u.norm();
  const double nt = t.norm();
  if (!(nu >= kZeroNormTolerance)) fail(ErrorCode::DegenerateDirection, std::string(what) + ": output direction has zero norm");
  if (!(nt >= kZeroNormTolerance)) fail(ErrorCode::DegenerateDirection, std::string(what) + ": target direction has zero norm");
  const double cos = u.dot(t) / (nu * nt);
  return {cos, t / (nu * nt) - (cos / (nu * nu)) * u};
}

}  // namespace

std::string_view to_string(TargetKind kind) noexcept {
  switch (kind) {
    case TargetKind::NaiveText: return "naive";
    case TargetKind::Pae: return "pae";
    case TargetKind::Dpe: return "dpe";
    case TargetKind::Directional: return "directional";
  }
  return "naive";
}

TargetKind target_kind_from_string(std::string_view name) {
  if (name == "naive" || name == "naive_text") return TargetKind::NaiveText;
  if (name == "pae") return TargetKind::Pae;
  if (name == "dpe") return TargetKind::Dpe;
  if (name == "directional") return TargetKind::Directional;
  fail(ErrorCode::InvalidArgument, "unknown target kind '" + std::string(name) + "'");
}

LossSpec LossSpec::naive(Vector text) {
  LossSpec s;
  s.kind = TargetKind::NaiveText;
  s.target = std::move(text);
  return s;
}

LossSpec LossSpec::pae(Vector pae_vector) {
  LossSpec s;
  s.kind = TargetKind::Pae;
  s.target = std::move(pae_vector);
  return s;
}

LossSpec LossSpec::dpe(std::shared_ptr<const CorpusSubspace> subspace, const Vector& text) {
  if (!subspace) fail(ErrorCode::InvalidArgument, "dpe loss needs a subspace");
  LossSpec s;
  s.kind = TargetKind::Dpe;
  s.target = project(*subspace, text);
  s.subspace = std::move(subspace);
  return s;
}

LossSpec LossSpec::directional(Vector anchor, const Vector& text, const Vector& neutral_text) {
  require_same_dim(anchor, text, "directional loss");
  require_same_dim(text, neutral_text, "directional loss");
  LossSpec s;
  s.kind = TargetKind::Directional;
  s.target = text - neutral_text;
  s.anchor = std::move(anchor);
  return s;
}

LossValue loss_value_and_grad(const LossSpec& spec, const Generator& g, const Vector& z) {
  const Vector out = g.forward(z);
  if (out.size() != spec.dim()) {
    fail(ErrorCode::DimMismatch, "generator output dimension " + std::to_string(out.size()) +
                                     " differs from target dimension " + std::to_string(spec.dim()));
  }
  Vector d_loss_d_out;
  double cos = 0.0;
  switch (spec.kind) {
    case TargetKind::NaiveText:
    case TargetKind::Pae: {
      auto cg = cosine_and_grad(out, spec.target, to_string(spec.kind));
      cos = cg.cosine;
      d_loss_d_out = -cg.d_cos_du;
      break;
    }
    case TargetKind::Dpe: {
      const auto& basis = spec.subspace->basis();
      // Proj = B B^T is symmetric, so the chain rule applies the same map to the gradient.
      auto cg = cosine_and_grad(basis * (basis.transpose() * out), spec.target, "dpe");
      cos = cg.cosine;
      d_loss_d_out = -(basis * (basis.transpose() * cg.d_cos_du));
      break;
    }
    case TargetKind::Directional: {
      if (spec.anchor.size() != out.size()) fail(ErrorCode::DimMismatch, "directional anchor dimension");
      auto cg = cosine_and_grad(out - spec.anchor, spec.target, "directional");
      cos = cg.cosine;
      d_loss_d_out = -cg.d_cos_du;
      break;
    }
  }
  return {1.0 - cos, g.backward(z, d_loss_d_out)};
}

OptimizationTrace optimize(const LossSpec& spec, const Generator& g, const Vector& z0,
                           const OptimizerSettings& settings) {
  if (!(settings.lr > 0.0) || !std::isfinite(settings.lr)) fail(ErrorCode::InvalidArgument, "learning rate must be > 0");
  if (settings.max_steps < 1) fail(ErrorCode::InvalidArgument, "max_steps must be >= 1");

  OptimizationTrace trace;
  trace.settings = settings;
  trace.steps.reserve(static_cast<std::size_t>(std::min(settings.max_steps, 100000)));
  Vector z = z0;
  for (int step = 0; step < settings.max_steps; ++step) {
    LossValue lv;
    try {
      lv = loss_value_and_grad(spec, g, z);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateDirection) {
        fail(ErrorCode::DegenerateDirection, "step " + std::to_string(step) + ": " + e.message());
      }
      throw;
    }
    TraceStep rec{step, lv.loss, std::nullopt};
    if (settings.record_latents) rec.latent = z;
    trace.steps.push_back(std::move(rec));
    if (lv.loss < settings.tol) {
      trace.converged = true;
      break;
    }
    if (step + 1 < settings.max_steps) z -= settings.lr * lv.grad;
  }
  trace.final_latent = z;
  trace.final_output = g.forward(z);
  return trace;
}

double finite_diff_check(const LossSpec& spec, const Generator& g, const Vector& z, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) fail(ErrorCode::InvalidArgument, "finite difference step must be > 0");
  const Vector analytic = loss_value_and_grad(spec, g, z).grad;
  double worst = 0.0;
  Vector probe = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    probe(i) = z(i) + eps;
    const double up = loss_value_and_grad(spec, g, probe).loss;
    probe(i) = z(i) - eps;
    const double down = loss_value_and_grad(spec, g, probe).loss;
    probe(i) = z(i);
    const double numeric = (up - down) / (2.0 * eps);
    worst = std::max(worst, std::abs(analytic(i) - numeric) / std::max(1e-12, std::abs(numeric)));
  }
  return worst;
}

void write_trace_csv(const OptimizationTrace& trace, std::ostream& out) {
  out << "step,loss\n";
  for (const auto& s : trace.steps) out << s.step << ',' << csv::real(s.loss) << '\n';
}

std::string trace_to_json(const OptimizationTrace& trace) {
  detail::OrderedJson doc;
  doc["settings"] = {{"lr", trace.settings.lr}, {"max_steps", trace.settings.max_steps}, {"tol", trace.settings.tol}};
  doc["converged"] = trace.converged;
  auto steps = detail::OrderedJson::array();
  for (const auto& s : trace.steps) {
    detail::OrderedJson rec;
    rec["step"] = s.step;
    rec["loss"] = s.loss;
    if (s.latent) rec["latent"] = detail::vector_to_json(*s.latent);
    steps.push_back(std::move(rec));
  }
  doc["steps"] = std::move(steps);
  doc["final_latent"] = detail::vector_to_json(trace.final_latent);
  doc["final_output"] = detail::vector_to_json(trace.final_output);
  return detail::dump(doc);
}

}  // namespace paekit
