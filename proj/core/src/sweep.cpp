#include "paekit/csv.hpp"
#include "paekit/error.hpp"
#include "paekit/pae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace paekit {

namespace {

struct CellOutcome {
  SweepRow row;
  std::vector<SweepFailure> failures;
};

CellOutcome run_cell(const SweepCase& c, double alpha, std::span<const PaeTriple> triples) {
  CellOutcome out;
  out.row.config_id = c.config_id;
  out.row.alpha = alpha;
  double sum_target = 0.0, sum_text = 0.0, sum_original = 0.0;

  auto record = [&](std::size_t index, ErrorCode code, const std::string& message) {
    out.failures.push_back({c.config_id, alpha, index, code, message});
  };

  std::optional<PaeConfig> cfg;
  try {
    cfg = c.config.with_alpha(alpha);
  } catch (const Error& e) {
    for (std::size_t i = 0; i < triples.size(); ++i) record(i, e.code(), e.what());
  }
  if (cfg) {
    for (std::size_t i = 0; i < triples.size(); ++i) {
      try {
        const auto report = evaluate_criteria(*cfg, triples[i].image, triples[i].text, triples[i].target);
        sum_target += report.sim_pae_target;
        sum_text += report.sim_text_target;
        sum_original += report.sim_pae_original;
        ++out.row.evaluated;
      } catch (const Error& e) {
        record(i, e.code(), e.what());
      }
    }
  }

  if (out.row.evaluated == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.row.mean_sim_pae_target = out.row.mean_sim_text_target = out.row.mean_sim_pae_original = nan;
    return out;
  }
  const auto n = static_cast<double>(out.row.evaluated);
  out.row.mean_sim_pae_target = sum_target / n;
  out.row.mean_sim_text_target = sum_text / n;
  out.row.mean_sim_pae_original = sum_original / n;
  out.row.criterion1 = out.row.mean_sim_pae_target > out.row.mean_sim_text_target;
  out.row.criterion2 = out.row.mean_sim_pae_target > out.row.mean_sim_pae_original;
  return out;
}

}  // namespace

SweepResult alpha_sweep(std::span<const SweepCase> cases, std::span<const double> alphas,
                        std::span<const PaeTriple> triples) {
  if (cases.empty()) fail(ErrorCode::EmptyInput, "alpha_sweep: no configurations");
  if (alphas.empty()) fail(ErrorCode::EmptyInput, "alpha_sweep: no alpha values");
  if (triples.empty()) fail(ErrorCode::EmptyInput, "alpha_sweep: no triples");

  SweepResult result;
  for (const auto& c : cases) {
    for (double alpha : alphas) {
      auto cell = run_cell(c, alpha, triples);
      result.rows.push_back(std::move(cell.row));
      for (auto& f : cell.failures) result.failures.push_back(std::move(f));
    }
  }
  // Stable so duplicate (config_id, alpha) pairs keep input order.
  std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.config_id != b.config_id) return a.config_id < b.config_id;
    return a.alpha < b.alpha;
  });
  std::stable_sort(result.failures.begin(), result.failures.end(),
                   [](const SweepFailure& a, const SweepFailure& b) {
                     if (a.config_id != b.config_id) return a.config_id < b.config_id;
                     if (a.alpha != b.alpha) return a.alpha < b.alpha;
                     return a.triple_index < b.triple_index;
                   });
  return result;
}

std::vector<std::pair<double, double>> SweepResult::passing_ranges(std::string_view config_id) const {
  std::vector<std::pair<double, double>> ranges;
  bool open = false;
  for (const auto& row : rows) {
    if (row.config_id != config_id) continue;
    const bool pass = row.criterion1 && row.criterion2;
    if (pass && !open) {
      ranges.emplace_back(row.alpha, row.alpha);
      open = true;
    } else if (pass) {
      ranges.back().second = row.alpha;
    } else {
      open = false;
    }
  }
  return ranges;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "config_id,alpha,mean_sim_pae_target,mean_sim_text_target,mean_sim_pae_original,criterion1,criterion2\n";
  for (const auto& r : result.rows) {
    out << csv::field(r.config_id) << ',' << csv::real(r.alpha) << ',' << csv::real(r.mean_sim_pae_target) << ','
        << csv::real(r.mean_sim_text_target) << ',' << csv::real(r.mean_sim_pae_original) << ','
        << csv::boolean(r.criterion1) << ',' << csv::boolean(r.criterion2) << '\n';
  }
}

}  // namespace paekit
