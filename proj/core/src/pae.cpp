#include "paekit/pae.hpp"

#include "json_util.hpp"
#include "paekit/error.hpp"

namespace paekit {

std::string_view to_string(ProjectionKind kind) noexcept {
  switch (kind) {
    case ProjectionKind::Gs: return "gs";
    case ProjectionKind::Raw: return "raw";
    case ProjectionKind::Pca: return "pca";
    case ProjectionKind::All: return "all";
  }
  return "gs";
}

ProjectionKind projection_kind_from_string(std::string_view name) {
  if (name == "gs" || name == "gram_schmidt") return ProjectionKind::Gs;
  if (name == "raw") return ProjectionKind::Raw;
  if (name == "pca") return ProjectionKind::Pca;
  if (name == "all") return ProjectionKind::All;
  fail(ErrorCode::InvalidConfig, "unknown projection '" + std::string(name) + "'");
}

ProjectionKind projection_kind_of(const Space& space) noexcept {
  if (const auto* s = std::get_if<CorpusSubspace>(&space)) {
    switch (s->method()) {
      case BasisMethod::GramSchmidt: return ProjectionKind::Gs;
      case BasisMethod::Raw: return ProjectionKind::Raw;
      case BasisMethod::Pca: return ProjectionKind::Pca;
    }
  }
  return ProjectionKind::All;
}

PaeConfig::PaeConfig(std::shared_ptr<const Space> space, AugKind augmentation, bool normalize_inputs)
    : space_(std::move(space)), augmentation_(augmentation), normalize_inputs_(normalize_inputs) {
  if (!space_) fail(ErrorCode::InvalidConfig, "PAE config without a projection space");
  projection_ = projection_kind_of(*space_);
  const bool set_aug =
      augmentation_.method == AugMethod::Exchange || augmentation_.method == AugMethod::ExchangeDistinct;
  if ((projection_ == ProjectionKind::All) != set_aug) {
    fail(ErrorCode::InvalidConfig, "projection '" + std::string(to_string(projection_)) +
                                       "' cannot be combined with augmentation '" +
                                       std::string(to_string(augmentation_.method)) + "'");
  }
  augmentation_.validate();
}

Eigen::Index PaeConfig::dim() const noexcept {
  return std::visit([](const auto& s) { return s.dim(); }, *space_);
}

PaeConfig PaeConfig::with_alpha(double alpha) const {
  return PaeConfig(space_, AugKind{augmentation_.method, alpha}, normalize_inputs_);
}

std::string PaeConfig::tag() const {
  return std::string(to_string(projection_)) + "+" + std::string(to_string(augmentation_.method));
}

PaeParts decompose_pae(const PaeConfig& cfg, const Vector& image, const Vector& text) {
  if (image.size() != cfg.dim() || text.size() != cfg.dim()) {
    fail(ErrorCode::DimMismatch, "compute_pae: inputs must have the configuration's dimension " +
                                     std::to_string(cfg.dim()));
  }
  PaeParts parts;
  parts.image = cfg.normalize_inputs() ? normalize(image) : image;
  parts.text = cfg.normalize_inputs() ? normalize(text) : text;
  const double alpha = cfg.augmentation().alpha;

  if (const auto* s = std::get_if<CorpusSubspace>(&cfg.space())) {
    parts.projected = project(*s, parts.image);
    parts.augmented = cfg.augmentation().method == AugMethod::Simple
                          ? aug_simple(parts.projected, parts.text, alpha)
                          : aug_plus(*s, parts.projected, parts.text, alpha);
  } else {
    const auto& m = std::get<ManifoldSet>(cfg.space());
    const auto nearest = project_all(m, parts.image);
    parts.projected = nearest.vector;
    parts.augmented = cfg.augmentation().method == AugMethod::Exchange
                          ? aug_exchange(parts.projected, parts.text, nearest.vector, alpha)
                          : aug_exchange_distinct(m, parts.projected, parts.image, parts.text, alpha);
  }
  parts.residual = parts.image - parts.projected;
  parts.pae = parts.image + (parts.augmented - parts.projected);
  return parts;
}

Vector compute_pae(const PaeConfig& cfg, const Vector& image, const Vector& text) {
  return decompose_pae(cfg, image, text).pae;
}

Vector compute_pae(const PaeConfig& cfg, const Embedding& image, const Embedding& text) {
  if (image.kind != Modality::Image) fail(ErrorCode::KindMismatch, "'" + image.id + "' is not an image embedding");
  if (text.kind != Modality::Text) fail(ErrorCode::KindMismatch, "'" + text.id + "' is not a text embedding");
  return compute_pae(cfg, image.vector, text.vector);
}

DpeTargets compute_dpe_targets(const CorpusSubspace& s, const Vector& image, const Vector& text) {
  return {project(s, image), project(s, text)};
}

CriteriaReport evaluate_criteria(const PaeConfig& cfg, const Embedding& image, const Embedding& text,
                                 const Embedding& target) {
  if (target.kind != Modality::Image) {
    fail(ErrorCode::KindMismatch, "ideal target '" + target.id + "' is not an image embedding");
  }
  require_same_dim(image.vector, target.vector, "evaluate_criteria");
  const Vector pae = compute_pae(cfg, image, text);
  CriteriaReport r;
  r.sim_pae_target = cosine_similarity(pae, target.vector);
  r.sim_text_target = cosine_similarity(text.vector, target.vector);
  r.sim_pae_original = cosine_similarity(pae, image.vector);
  r.criterion1_pass = r.sim_pae_target > r.sim_text_target;
  r.criterion2_pass = r.sim_pae_target > r.sim_pae_original;
  return r;
}

// ---------------------------------------------------------------------------
// Config files

PaeConfig PaeConfigFile::resolve() const {
  auto space = std::make_shared<const Space>(load_space(space_path));
  if (projection_kind_of(*space) != projection) {
    fail(ErrorCode::InvalidConfig, "config '" + config_id + "' declares projection '" +
                                       std::string(to_string(projection)) + "' but '" + space_path.string() +
                                       "' holds '" + std::string(to_string(projection_kind_of(*space))) + "'");
  }
  return PaeConfig(std::move(space), augmentation, normalize_inputs);
}

std::string serialize_pae_config(const PaeConfigFile& cfg) {
  detail::OrderedJson doc;
  doc["config_id"] = cfg.config_id;
  doc["projection"] = std::string(to_string(cfg.projection));
  doc["subspace"] = cfg.space_path.generic_string();
  doc["augmentation"] = {{"kind", std::string(to_string(cfg.augmentation.method))},
                         {"alpha", cfg.augmentation.alpha}};
  doc["normalize_inputs"] = cfg.normalize_inputs;
  return detail::dump(doc);
}

PaeConfigFile parse_pae_config(std::string_view json_text, const std::filesystem::path& base_dir,
                               std::string_view source) {
  const auto doc = detail::parse_json(json_text, source);
  PaeConfigFile cfg;
  const auto& id = detail::require_field(doc, "config_id", "config");
  if (!id.is_string()) fail(ErrorCode::SchemaError, "config_id must be a string");
  cfg.config_id = id.get<std::string>();

  const auto& proj = detail::require_field(doc, "projection", "config");
  if (!proj.is_string()) fail(ErrorCode::SchemaError, "projection must be a string");
  cfg.projection = projection_kind_from_string(proj.get<std::string>());

  const auto& path = detail::require_field(doc, "subspace", "config");
  if (!path.is_string()) fail(ErrorCode::SchemaError, "subspace must be a path string");
  cfg.space_path = path.get<std::string>();
  if (cfg.space_path.is_relative()) cfg.space_path = base_dir / cfg.space_path;

  const auto& aug = detail::require_field(doc, "augmentation", "config");
  const auto& kind = detail::require_field(aug, "kind", "augmentation");
  const auto& alpha = detail::require_field(aug, "alpha", "augmentation");
  if (!kind.is_string() || !alpha.is_number()) fail(ErrorCode::SchemaError, "augmentation needs kind and alpha");
  cfg.augmentation = {aug_method_from_string(kind.get<std::string>()), alpha.get<double>()};

  if (auto it = doc.find("normalize_inputs"); it != doc.end()) {
    if (!it->is_boolean()) fail(ErrorCode::SchemaError, "normalize_inputs must be a boolean");
    cfg.normalize_inputs = it->get<bool>();
  }
  return cfg;
}

PaeConfigFile load_pae_config(const std::filesystem::path& path) {
  return parse_pae_config(detail::read_text_file(path), path.parent_path(), path.string());
}

void save_pae_config(const PaeConfigFile& cfg, const std::filesystem::path& path) {
  detail::write_text_file(path, serialize_pae_config(cfg));
}

}  // namespace paekit
