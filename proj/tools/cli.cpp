#include "cli.hpp"

#include <paekit/analysis.hpp>
#include <paekit/csv.hpp>
#include <paekit/error.hpp>
#include <paekit/fixtures.hpp>
#include <paekit/generator.hpp>
#include <paekit/optimizer.hpp>
#include <paekit/pae.hpp>
#include <paekit/rng.hpp>
#include <paekit/subspace.hpp>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace paekit::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Init-noise and random-init draws use their own stream so they never alias the generator's.
constexpr std::uint64_t kInitStream = 0x9E3779B97F4A7C15ULL;

struct Options {
  std::string out;
  std::string bundle;
  std::uint64_t seed = 0;

  std::string recipe;

  std::string method;
  std::vector<std::string> tags;
  std::vector<std::string> ids;
  Eigen::Index components = 0;

  std::string image;
  std::string text;
  std::string config;
  std::vector<std::string> configs;
  std::string subspace;
  std::string aug;
  std::optional<double> alpha;
  bool no_normalize = false;
  std::string item_id;
  std::vector<double> alphas;

  std::string target;
  std::string neutral;
  std::string generator = "linear";
  Eigen::Index latent_dim = 0;
  Eigen::Index hidden = 16;
  double lr = 0.1;
  int steps = 500;
  double tol = 1e-3;
  std::string init = "image";
  double init_noise = 0.0;
  bool record_latents = false;
  std::string json;

  std::string group_key;
  std::vector<std::string> groups;
  std::string frames_tag = "role:frame";
  std::string reference;
};

// Remembers which input files a failure should be attributed to.
class Inputs {
 public:
  template <typename Loader>
  auto load(const std::string& path, Loader loader) {
    current_ = path;
    auto value = loader(path);
    current_.clear();
    if (std::find(files_.begin(), files_.end(), path) == files_.end()) files_.push_back(path);
    return value;
  }

  std::string describe() const {
    if (!current_.empty()) return current_;
    if (files_.empty()) return "-";
    std::string joined;
    for (const auto& f : files_) joined += (joined.empty() ? "" : ", ") + f;
    return joined;
  }

 private:
  std::string current_;
  std::vector<std::string> files_;
};

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << content;
  if (!file) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::vector<Embedding> select(const EmbeddingBundle& b, const std::vector<std::string>& tags,
                              const std::vector<std::string>& ids) {
  std::vector<Embedding> out;
  if (!ids.empty()) {
    for (const auto& id : ids) out.push_back(b.at(id));
    return out;
  }
  for (const auto& item : b.items) {
    if (std::all_of(tags.begin(), tags.end(), [&](const std::string& t) { return item.has_tag(t); })) {
      out.push_back(item);
    }
  }
  return out;
}

EmbeddingBundle subset(const EmbeddingBundle& b, const std::vector<std::string>& tags) {
  EmbeddingBundle out;
  out.dim = b.dim;
  out.items = select(b, tags, {});
  return out;
}

std::shared_ptr<const CorpusSubspace> linear_space(Inputs& in, const std::string& path) {
  auto space = in.load(path, load_space);
  if (!std::holds_alternative<CorpusSubspace>(space)) {
    fail(ErrorCode::InvalidConfig, "'" + path + "' is a sample set; a linear subspace is required here");
  }
  return std::make_shared<const CorpusSubspace>(std::get<CorpusSubspace>(std::move(space)));
}

PaeConfig load_config(Inputs& in, const Options& o) {
  if (!o.config.empty()) {
    if (!o.subspace.empty() || !o.aug.empty()) throw UsageError("--config cannot be combined with --subspace/--aug");
    auto file = in.load(o.config, load_pae_config);
    if (o.alpha) file.augmentation.alpha = *o.alpha;
    if (o.no_normalize) file.normalize_inputs = false;
    return in.load(o.config, [&](const std::string&) { return file.resolve(); });
  }
  if (o.subspace.empty()) throw UsageError("--subspace or --config is required");
  if (o.aug.empty()) throw UsageError("--aug is required with --subspace");
  if (!o.alpha) throw UsageError("--alpha is required with --subspace");
  auto space = std::make_shared<const Space>(in.load(o.subspace, load_space));
  return PaeConfig(std::move(space), AugKind{aug_method_from_string(o.aug), *o.alpha}, !o.no_normalize);
}

void cmd_fixtures_make(const Options& o, std::ostream& out, spdlog::logger& log) {
  const auto bundle = make_synthetic_fixture(o.recipe, o.seed);
  log.info("{} seed {}: {} items, dim {}", o.recipe, o.seed, bundle.items.size(), bundle.dim);
  emit(serialize_bundle(bundle), o.out, out);
}

void cmd_subspace_build(const Options& o, Inputs& in, std::ostream& out, spdlog::logger& log) {
  if (o.method == "pca" && o.components < 1) throw UsageError("--components is required for --method pca");
  if (o.method != "pca" && o.components != 0) throw UsageError("--components only applies to --method pca");
  const auto bundle = in.load(o.bundle, load_bundle);
  const auto items = select(bundle, o.tags, o.ids);
  log.info("building {} over {} items", o.method, items.size());
  std::string content;
  if (o.method == "gs") {
    content = serialize_subspace(build_gs(items));
  } else if (o.method == "raw") {
    content = serialize_subspace(build_raw(items));
  } else if (o.method == "pca") {
    const auto s = build_pca(items, o.components);
    for (Eigen::Index k = 0; k < s.size(); ++k) log.debug("component {} variance {}", k, (*s.explained_variance())[k]);
    content = serialize_subspace(s);
  } else {
    content = serialize_sample_set(build_sample_set(items));
  }
  emit(content, o.out, out);
}

void cmd_pae_compute(const Options& o, Inputs& in, std::ostream& out, spdlog::logger& log) {
  const auto bundle = in.load(o.bundle, load_bundle);
  const auto cfg = load_config(in, o);
  const auto& image = bundle.at(o.image);
  const auto& text = bundle.at(o.text);
  log.info("{} alpha {} on {} / {}", cfg.tag(), cfg.augmentation().alpha, o.image, o.text);

  EmbeddingBundle result;
  result.dim = cfg.dim();
  Embedding item;
  item.id = o.item_id.empty() ? "pae_" + o.image : o.item_id;
  item.kind = Modality::Image;
  item.label = text.label;
  item.tags = {"config:" + cfg.tag(), "alpha:" + csv::real(cfg.augmentation().alpha), "image:" + o.image,
               "text:" + o.text};
  item.vector = compute_pae(cfg, image, text);
  result.items.push_back(std::move(item));
  emit(serialize_bundle(result), o.out, out);
}

void cmd_pae_sweep(const Options& o, Inputs& in, std::ostream& out, std::ostream& err, spdlog::logger& log) {
  if (o.configs.empty() == o.subspace.empty()) throw UsageError("give either --config (repeatable) or --subspace");
  const auto bundle = in.load(o.bundle, load_bundle);
  const auto triples = triples_from_tags(bundle);

  std::vector<SweepCase> cases;
  for (const auto& path : o.configs) {
    const auto file = in.load(path, load_pae_config);
    cases.push_back({file.config_id, in.load(path, [&](const std::string&) { return file.resolve(); })});
  }
  if (!o.subspace.empty()) {
    if (o.aug.empty()) throw UsageError("--aug is required with --subspace");
    auto space = std::make_shared<const Space>(in.load(o.subspace, load_space));
    // Placeholder alpha, replaced per sweep point; 1 is valid for every method.
    PaeConfig cfg(std::move(space), AugKind{aug_method_from_string(o.aug), 1.0}, !o.no_normalize);
    cases.push_back({o.item_id.empty() ? cfg.tag() : o.item_id, cfg});
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (cases[i].config_id == cases[j].config_id) {
        fail(ErrorCode::InvalidConfig, "duplicate config_id '" + cases[i].config_id + "'");
      }
    }
  }

  log.info("sweeping {} configs x {} alphas over {} triples", cases.size(), o.alphas.size(), triples.size());
  const auto result = alpha_sweep(cases, o.alphas, triples);
  for (const auto& f : result.failures) {
    err << "skipped " << f.config_id << " alpha=" << csv::real(f.alpha) << " triple " << f.triple_index << ": "
        << error_name(f.code) << ": " << f.message << '\n';
  }
  for (const auto& c : cases) {
    for (const auto& [lo, hi] : result.passing_ranges(c.config_id)) log.info("{} passes on [{}, {}]", c.config_id, lo, hi);
  }
  std::ostringstream csv_text;
  write_sweep_csv(result, csv_text);
  emit(csv_text.str(), o.out, out);
}

void cmd_optimize(const Options& o, Inputs& in, std::ostream& out, spdlog::logger& log) {
  const auto bundle = in.load(o.bundle, load_bundle);
  const auto& image = bundle.at(o.image);
  const auto& text = bundle.at(o.text);
  const Vector e_image = normalize(image.vector);

  LossSpec spec;
  const auto kind = target_kind_from_string(o.target);
  switch (kind) {
    case TargetKind::NaiveText:
      spec = LossSpec::naive(normalize(text.vector));
      break;
    case TargetKind::Pae:
      spec = LossSpec::pae(compute_pae(load_config(in, o), image, text));
      break;
    case TargetKind::Dpe:
      if (o.subspace.empty()) throw UsageError("--subspace is required for --target dpe");
      spec = LossSpec::dpe(linear_space(in, o.subspace), normalize(text.vector));
      break;
    case TargetKind::Directional:
      if (o.neutral.empty()) throw UsageError("--neutral is required for --target directional");
      spec = LossSpec::directional(e_image, normalize(text.vector), normalize(bundle.at(o.neutral).vector));
      break;
  }

  const Eigen::Index d = bundle.dim;
  const Eigen::Index latent = o.latent_dim > 0 ? o.latent_dim : d;
  const auto g = Generator::make(generator_kind_from_string(o.generator), o.seed, latent, d,
                                 o.generator == "mlp1" ? o.hidden : 0);

  Rng init_rng(o.seed ^ kInitStream);
  Vector z0;
  if (o.init == "image") {
    if (latent != d) fail(ErrorCode::BadDims, "--init image needs --latent-dim equal to the bundle dim " + std::to_string(d));
    z0 = e_image;
  } else {
    z0 = init_rng.unit_vector(latent);
  }
  if (o.init_noise > 0.0) z0 += o.init_noise * init_rng.normal_vector(latent) / std::sqrt(static_cast<double>(latent));

  OptimizerSettings settings;
  settings.lr = o.lr;
  settings.max_steps = o.steps;
  settings.tol = o.tol;
  settings.record_latents = o.record_latents;
  const auto trace = optimize(spec, g, z0, settings);
  log.info("{} target: {} after {} steps, final loss {}", to_string(kind), trace.converged ? "converged" : "not converged",
           trace.steps.size(), trace.steps.back().loss);

  std::ostringstream csv_text;
  write_trace_csv(trace, csv_text);
  emit(csv_text.str(), o.out, out);
  if (!o.json.empty()) emit(trace_to_json(trace), o.json, out);
}

void cmd_analyze_matrix(const Options& o, Inputs& in, std::ostream& out) {
  const auto bundle = subset(in.load(o.bundle, load_bundle), o.tags);
  std::ostringstream csv_text;
  write_matrix_csv(similarity_matrix(bundle, o.group_key, o.groups), csv_text);
  emit(csv_text.str(), o.out, out);
}

void cmd_analyze_pca2d(const Options& o, Inputs& in, std::ostream& out, spdlog::logger& log) {
  const auto bundle = in.load(o.bundle, load_bundle);
  const auto p = pca2d(select(bundle, o.tags, o.ids));
  log.info("pca2d variances {} {}", p.variance_x, p.variance_y);
  std::ostringstream csv_text;
  write_pca2d_csv(p, csv_text);
  emit(csv_text.str(), o.out, out);
}

void cmd_analyze_trajectory(const Options& o, Inputs& in, std::ostream& out) {
  const auto bundle = in.load(o.bundle, load_bundle);
  std::vector<Vector> frames;
  for (const auto& item : bundle.items) {
    if (item.has_tag(o.frames_tag)) frames.push_back(item.vector);
  }
  std::optional<Vector> reference;
  if (!o.reference.empty()) reference = bundle.at(o.reference).vector;
  std::shared_ptr<const CorpusSubspace> space;
  if (!o.subspace.empty()) space = linear_space(in, o.subspace);
  std::ostringstream csv_text;
  write_trajectory_csv(trajectory_similarity(frames, reference, space.get()), csv_text);
  emit(csv_text.str(), o.out, out);
}

void cmd_analyze_heatmap(const Options& o, Inputs& in, std::ostream& out, spdlog::logger& log) {
  const auto bundle = subset(in.load(o.bundle, load_bundle), o.tags);
  std::shared_ptr<const CorpusSubspace> space;
  if (!o.subspace.empty()) space = linear_space(in, o.subspace);
  const auto h = group_heatmap(bundle, o.group_key, o.groups, space.get());
  log.info("within-block {} off-block {}", h.mean_within_block(), h.mean_off_block());
  std::ostringstream csv_text;
  write_heatmap_csv(h, csv_text);
  emit(csv_text.str(), o.out, out);
}

spdlog::level::level_enum log_level() {
  const char* env = std::getenv("PAE_KIT_LOG");
  const std::string value = env ? env : "error";
  if (value == "error") return spdlog::level::err;
  if (value == "info") return spdlog::level::info;
  if (value == "debug") return spdlog::level::debug;
  throw UsageError("PAE_KIT_LOG must be error, info or debug, got '" + value + "'");
}

void add_out(CLI::App* cmd, Options& o, const std::string& what) {
  cmd->add_option("--out,-o", o.out, what + " (stdout when omitted)");
}

void add_selection(CLI::App* cmd, Options& o) {
  auto* tag = cmd->add_option("--tag", o.tags, "keep items carrying every given tag");
  cmd->add_option("--ids", o.ids, "explicit item ids, in order")->delimiter(',')->excludes(tag);
}

void add_pae_config(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "PAE configuration file");
  cmd->add_option("--subspace", o.subspace, "subspace or sample-set file");
  cmd->add_option("--aug", o.aug, "augmentation")->check(CLI::IsMember({"simple", "plus", "ex", "exd"}));
  cmd->add_option("--alpha", o.alpha, "augmenting power");
  cmd->add_flag("--no-normalize", o.no_normalize, "use raw input vectors instead of unit-normalizing them");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"paekit: projection-augmentation embeddings over a joint image/text space", "paekit"};
  app.require_subcommand(1);

  auto* fixtures = app.add_subcommand("fixtures", "synthetic bundles")->require_subcommand(1);
  auto* fixtures_make = fixtures->add_subcommand("make", "write a synthetic fixture bundle");
  fixtures_make->add_option("--recipe", o.recipe)->required()->check(CLI::IsMember(fixture_recipes()));
  fixtures_make->add_option("--seed", o.seed)->required();
  add_out(fixtures_make, o, "bundle JSON");

  auto* subspace = app.add_subcommand("subspace", "corpus subspaces")->require_subcommand(1);
  auto* subspace_build = subspace->add_subcommand("build", "build a subspace or sample set from bundle items");
  subspace_build->add_option("--bundle", o.bundle)->required();
  subspace_build->add_option("--method", o.method)->required()->check(CLI::IsMember({"gs", "raw", "pca", "all"}));
  subspace_build->add_option("--components", o.components, "PCA components");
  add_selection(subspace_build, o);
  add_out(subspace_build, o, "subspace JSON");

  auto* pae = app.add_subcommand("pae", "projection-augmentation embeddings")->require_subcommand(1);
  auto* pae_compute = pae->add_subcommand("compute", "compute one PAE vector");
  pae_compute->add_option("--bundle", o.bundle)->required();
  pae_compute->add_option("--image", o.image)->required();
  pae_compute->add_option("--text", o.text)->required();
  pae_compute->add_option("--id", o.item_id, "id of the written item (default pae_<image>)");
  add_pae_config(pae_compute, o);
  add_out(pae_compute, o, "single-item bundle JSON");

  auto* pae_sweep = pae->add_subcommand("sweep", "average the editing criteria over tagged triples");
  pae_sweep->add_option("--bundle", o.bundle)->required();
  pae_sweep->add_option("--config", o.configs, "PAE configuration file (repeatable)");
  pae_sweep->add_option("--subspace", o.subspace, "subspace or sample-set file");
  pae_sweep->add_option("--aug", o.aug)->check(CLI::IsMember({"simple", "plus", "ex", "exd"}));
  pae_sweep->add_option("--id", o.item_id, "config_id for the --subspace case (default <projection>+<aug>)");
  pae_sweep->add_flag("--no-normalize", o.no_normalize);
  pae_sweep->add_option("--alphas", o.alphas)->required()->delimiter(',');
  add_out(pae_sweep, o, "sweep CSV");

  auto* opt = app.add_subcommand("optimize", "latent-code optimization against a toy generator");
  opt->add_option("--bundle", o.bundle)->required();
  opt->add_option("--image", o.image)->required();
  opt->add_option("--text", o.text)->required();
  opt->add_option("--target", o.target)->required()->check(CLI::IsMember({"naive", "pae", "dpe", "directional"}));
  opt->add_option("--neutral", o.neutral, "neutral text id for --target directional");
  opt->add_option("--generator", o.generator)->check(CLI::IsMember({"linear", "mlp1"}))->capture_default_str();
  opt->add_option("--seed", o.seed)->required();
  opt->add_option("--latent-dim", o.latent_dim, "latent size (default: bundle dim)");
  opt->add_option("--hidden", o.hidden, "mlp1 hidden width")->capture_default_str();
  opt->add_option("--lr", o.lr)->capture_default_str();
  opt->add_option("--steps", o.steps)->capture_default_str();
  opt->add_option("--tol", o.tol)->capture_default_str();
  opt->add_option("--init", o.init, "initial latent")->check(CLI::IsMember({"image", "random"}))->capture_default_str();
  opt->add_option("--init-noise", o.init_noise, "scale of seeded noise added to the initial latent")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  opt->add_flag("--record-latents", o.record_latents, "store every latent in the JSON trace");
  opt->add_option("--json", o.json, "also write the full trace as JSON");
  add_pae_config(opt, o);
  add_out(opt, o, "trace CSV");

  auto* analyze = app.add_subcommand("analyze", "plot-data CSVs")->require_subcommand(1);
  auto* matrix = analyze->add_subcommand("matrix", "group-averaged cosine matrix");
  matrix->add_option("--bundle", o.bundle)->required();
  matrix->add_option("--group-key", o.group_key)->required();
  matrix->add_option("--groups", o.groups)->delimiter(',');
  matrix->add_option("--tag", o.tags, "keep items carrying every given tag");
  add_out(matrix, o, "matrix CSV");

  auto* pca = analyze->add_subcommand("pca2d", "top-two principal component coordinates");
  pca->add_option("--bundle", o.bundle)->required();
  add_selection(pca, o);
  add_out(pca, o, "points CSV");

  auto* trajectory = analyze->add_subcommand("trajectory", "cosine of each frame with a reference");
  trajectory->add_option("--bundle", o.bundle)->required();
  trajectory->add_option("--frames-tag", o.frames_tag, "tag selecting the frames, in bundle order")->capture_default_str();
  trajectory->add_option("--reference", o.reference, "text id to compare against instead of frame 0");
  trajectory->add_option("--subspace", o.subspace, "project onto this subspace first");
  add_out(trajectory, o, "series CSV");

  auto* heatmap = analyze->add_subcommand("heatmap", "item-level cosine matrix ordered by group");
  heatmap->add_option("--bundle", o.bundle)->required();
  heatmap->add_option("--group-key", o.group_key)->required();
  heatmap->add_option("--groups", o.groups)->delimiter(',');
  heatmap->add_option("--tag", o.tags, "keep items carrying every given tag");
  heatmap->add_option("--subspace", o.subspace, "project onto this subspace first");
  add_out(heatmap, o, "heatmap CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  spdlog::logger log("paekit", sink);
  log.set_pattern("[%l] %v");

  Inputs in;
  try {
    log.set_level(log_level());
    if (fixtures_make->parsed()) {
      cmd_fixtures_make(o, out, log);
    } else if (subspace_build->parsed()) {
      cmd_subspace_build(o, in, out, log);
    } else if (pae_compute->parsed()) {
      cmd_pae_compute(o, in, out, log);
    } else if (pae_sweep->parsed()) {
      cmd_pae_sweep(o, in, out, err, log);
    } else if (opt->parsed()) {
      cmd_optimize(o, in, out, log);
    } else if (matrix->parsed()) {
      cmd_analyze_matrix(o, in, out);
    } else if (pca->parsed()) {
      cmd_analyze_pca2d(o, in, out, log);
    } else if (trajectory->parsed()) {
      cmd_analyze_trajectory(o, in, out);
    } else if (heatmap->parsed()) {
      cmd_analyze_heatmap(o, in, out, log);
    }
  } catch (const UsageError& e) {
    err << "paekit: usage: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "paekit: " << e.name() << ": " << e.message() << " [" << in.describe() << "]\n";
    return error_class(e.code()) == ErrorClass::Numeric ? kNumeric : kData;
  } catch (const std::exception& e) {
    err << "paekit: " << e.what() << " [" << in.describe() << "]\n";
    return kData;
  }
  return kOk;
}

}  // namespace paekit::cli
