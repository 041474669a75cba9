#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nicd/dataset.hpp"
#include "nicd/learner.hpp"
#include "nicd/noise_id.hpp"
#include "nicd/sampling.hpp"
#include "nicd/stats.hpp"

namespace nicd {

enum class Technique {
  none,
  l_weight,
  l_filter,
  biased_weight,
  biased_filter,
  renn,
  classification,
  ensemble_filter,
  cvc,
  ipf,
  l_ensemble,
  three_ensemble,
  weighted_l_ensemble,
  filtered_l_ensemble,
};

Technique parse_technique(std::string_view text);
std::string_view to_string(Technique t);
/// Ensemble techniques produce one model for the whole learner set and
/// report under the learner name "ensemble".
bool is_ensemble(Technique t) noexcept;
std::vector<Technique> parse_technique_list(std::string_view text);

inline constexpr std::string_view kEnsembleLearner = "ensemble";

struct ExperimentConfig {
  std::vector<std::string> dataset_paths;
  std::vector<Dataset> corpus;
  std::vector<LearnerSpec> learners;
  /// The diverse set used for correctness scores and the L-ensembles.
  std::vector<LearnerSpec> diverse = default_roster();
  std::vector<Technique> techniques;
  std::vector<double> noise_levels{0.0, 0.1, 0.2, 0.3, 0.4};
  std::size_t runs = 10;
  std::size_t folds = 10;
  std::uint64_t seed = 1;
  double train_fraction = 2.0 / 3.0;
  double threshold = 0.5;
  ThresholdRule threshold_rule = ThresholdRule::at_least;
  NoiseLabelRule noise_rule = NoiseLabelRule::other_classes;
  std::size_t partitions = 3;
  std::size_t renn_k = 5;
  EnsembleFilterMode ensemble_filter_mode = EnsembleFilterMode::consensus;

  /// Throws ConfigError naming the offending setting.
  void validate() const;
};

/// One test-set accuracy of one cell in one run. Failed cells carry the
/// error text and a NaN accuracy.
struct RunRecord {
  std::string dataset;
  std::string learner;
  Technique technique = Technique::none;
  double noise = 0.0;
  std::size_t run = 0;
  double accuracy = 0.0;
  std::string error;
};

/// Cell results plus the axes they are laid out on.
struct ExperimentReport {
  std::vector<std::string> datasets;
  std::vector<std::string> learners;  ///< labels, "ensemble" last when used
  std::vector<Technique> techniques;
  std::vector<double> noise_levels;
  std::size_t runs = 0;
  /// Ordered by dataset, noise level, technique, learner, run (axis order).
  std::vector<RunRecord> records;

  /// Per-run accuracies of one cell; empty when the cell is absent.
  std::vector<double> cell(std::string_view dataset, std::string_view learner, Technique t, double noise) const;
  /// Mean accuracy over runs of each dataset, in dataset order. Failed runs
  /// are skipped; a dataset with no successful run gives NaN.
  std::vector<double> dataset_means(std::string_view learner, Technique t, double noise) const;
  /// Mean of dataset_means (NaN entries skipped), as a fraction.
  double mean_accuracy(std::string_view learner, Technique t, double noise) const;
  std::size_t failures() const;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (dataset, run, noise level) group on up to `jobs` threads.
/// Group seed = derive_seed(seed, run, dataset name); the split depends only
/// on that seed, the noise on it and the level. Noise touches the training
/// split only. The report is identical for any job count.
ExperimentReport run_experiment(const ExperimentConfig& cfg, std::size_t jobs = 1, ProgressFn progress = {});

/// Records as tab-separated text:
///   # nicd records v1
///   dataset  noise  technique  learner  run  accuracy  error
/// Accuracies use %.17g so the file round-trips exactly.
void write_records(std::ostream& out, const ExperimentReport& report);
ExperimentReport read_records(std::istream& in);

struct TableOptions {
  std::string baseline = "none";
  bool show_percent_re = true;
};

/// Human-readable tables, one block per noise level: technique rows and
/// learner columns with mean accuracy (%), the one-sided Wilcoxon p-value
/// against the baseline over datasets with its direction, and the
/// win/tie/loss count. Ensemble techniques get their own block comparing the
/// ensemble against each learner's baseline.
void write_tables(std::ostream& out, const ExperimentReport& report, const TableOptions& options = {});

/// Mean %RE of a technique against `none` over the given noise levels, from
/// corpus-mean accuracies. Absent when no level is defined.
std::optional<double> mean_percent_re(const ExperimentReport& report, std::string_view learner, Technique t,
                                      std::span<const double> levels);

}  // namespace nicd
