#pragma once

#include "paekit/augmentation.hpp"
#include "paekit/embedding.hpp"
#include "paekit/error.hpp"
#include "paekit/subspace.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace paekit {

enum class ProjectionKind { Gs, Raw, Pca, All };

std::string_view to_string(ProjectionKind kind) noexcept;
ProjectionKind projection_kind_from_string(std::string_view name);
ProjectionKind projection_kind_of(const Space& space) noexcept;

/// One projection-augmentation operator: the space it projects onto, the
/// augmentation applied inside it, and whether inputs are unit-normalized first.
///
/// Linear spaces (gs, raw, pca) pair with simple/plus augmentation; sample sets
/// (all) pair with exchange/exchange_distinct. Anything else is InvalidConfig.
class PaeConfig {
 public:
  PaeConfig(std::shared_ptr<const Space> space, AugKind augmentation, bool normalize_inputs = true);

  ProjectionKind projection() const noexcept { return projection_; }
  const AugKind& augmentation() const noexcept { return augmentation_; }
  bool normalize_inputs() const noexcept { return normalize_inputs_; }
  const Space& space() const noexcept { return *space_; }
  std::shared_ptr<const Space> shared_space() const noexcept { return space_; }
  Eigen::Index dim() const noexcept;

  /// Same space and method with a different augmenting power.
  PaeConfig with_alpha(double alpha) const;
  /// Short identifier such as "gs+plus".
  std::string tag() const;

 private:
  std::shared_ptr<const Space> space_;
  AugKind augmentation_;
  bool normalize_inputs_;
  ProjectionKind projection_;
};

/// Every intermediate of one PAE evaluation, for inspection and tests.
struct PaeParts {
  Vector image;      // e_I after optional normalization
  Vector text;       // e_T after optional normalization
  Vector projected;  // w
  Vector residual;   // r = e_I - w
  Vector augmented;  // Aug(w)
  Vector pae;        // e_I + (Aug(w) - w), i.e. Aug(w) + r
};

PaeParts decompose_pae(const PaeConfig& cfg, const Vector& image, const Vector& text);
Vector compute_pae(const PaeConfig& cfg, const Vector& image, const Vector& text);
/// Checks image/text kinds (KindMismatch) before delegating to the vector overload.
Vector compute_pae(const PaeConfig& cfg, const Embedding& image, const Embedding& text);

struct DpeTargets {
  Vector projected_image;
  Vector projected_text;
};

/// Double-projected embedding: both inputs projected onto `s`, no residual.
DpeTargets compute_dpe_targets(const CorpusSubspace& s, const Vector& image, const Vector& text);

struct CriteriaReport {
  double sim_pae_target = 0.0;    // cos(PAE, e_It)
  double sim_text_target = 0.0;   // cos(e_T, e_It)
  double sim_pae_original = 0.0;  // cos(PAE, e_I)
  bool criterion1_pass = false;   // sim_pae_target > sim_text_target
  bool criterion2_pass = false;   // sim_pae_target > sim_pae_original
};

CriteriaReport evaluate_criteria(const PaeConfig& cfg, const Embedding& image, const Embedding& text,
                                 const Embedding& target);

struct PaeTriple {
  Embedding image;
  Embedding text;
  Embedding target;
};

struct SweepCase {
  std::string config_id;
  PaeConfig config;  // alpha is replaced per sweep point
};

struct SweepRow {
  std::string config_id;
  double alpha = 0.0;
  double mean_sim_pae_target = 0.0;
  double mean_sim_text_target = 0.0;
  double mean_sim_pae_original = 0.0;
  bool criterion1 = false;
  bool criterion2 = false;
  std::size_t evaluated = 0;  // triples that produced a report
};

struct SweepFailure {
  std::string config_id;
  double alpha = 0.0;
  std::size_t triple_index = 0;
  ErrorCode code;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by config_id, then alpha
  std::vector<SweepFailure> failures;

  /// Maximal runs of consecutive sweep points (in alpha order) where both
  /// criteria hold on average, as closed [first, last] intervals.
  std::vector<std::pair<double, double>> passing_ranges(std::string_view config_id) const;
};

/// Averages the criteria quantities over all triples for every (config, alpha)
/// cell. Triples that throw are skipped and recorded in `failures`; a cell with
/// no successful triple has NaN means and both criteria false.
SweepResult alpha_sweep(std::span<const SweepCase> cases, std::span<const double> alphas,
                        std::span<const PaeTriple> triples);

/// CSV: config_id,alpha,mean_sim_pae_target,mean_sim_text_target,mean_sim_pae_original,criterion1,criterion2
void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// On-disk PaeConfig: references its space file by path (relative paths resolve
/// against the config file's directory).
struct PaeConfigFile {
  std::string config_id;
  ProjectionKind projection = ProjectionKind::Gs;
  std::filesystem::path space_path;
  AugKind augmentation;
  bool normalize_inputs = true;

  PaeConfig resolve() const;
};

std::string serialize_pae_config(const PaeConfigFile& cfg);
PaeConfigFile parse_pae_config(std::string_view json_text, const std::filesystem::path& base_dir,
                               std::string_view source = "<memory>");
PaeConfigFile load_pae_config(const std::filesystem::path& path);
void save_pae_config(const PaeConfigFile& cfg, const std::filesystem::path& path);

}  // namespace paekit
