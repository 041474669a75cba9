#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "nicd/experiment.hpp"

namespace nicd {

/// Experiment configuration files are INI with one `[experiment]` section:
///
///   [experiment]
///   datasets     = ../data/iris.csv, ../data/wine.csv   ; required
///   learners     = dt; knn:k=5; nb                       ; required
///   techniques   = none, l_filter, l_weight              ; required
///   diverse      = mlp; dt; lwl; knn; nb; ripper; rf     ; the diverse set
///   noise_levels = 0, 0.1, 0.2, 0.3, 0.4
///   runs = 10
///   folds = 10
///   seed = 1
///   train_fraction = 0.666666666666667
///   threshold = 0.5
///   threshold_rule = at_least        ; or above
///   noise_rule = other_classes       ; or any_class
///   partitions = 3
///   renn_k = 5
///   ensemble_filter_mode = consensus ; or majority
///
/// Relative dataset paths resolve against the file's directory. Unknown
/// keys in `[experiment]` are rejected; other sections are ignored.
/// Throws ConfigError naming the missing or invalid key.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                              const std::string& source = "<config>");

/// Loads datasets in order; a failure names the file.
std::vector<Dataset> load_corpus(std::span<const std::string> paths);

/// Writes a config that parse_config reads back to an equal configuration,
/// with absolute dataset paths.
void write_config(std::ostream& out, const ExperimentConfig& cfg);

/// Everything needed to rerun an experiment: the full config (first, as a
/// loadable `[experiment]` section) plus a `[manifest]` section with the
/// source config, output directory, tool version and timestamp.
struct RunManifest {
  std::string config_path;
  ExperimentConfig config;
  std::string out_dir;
  std::string version;
  std::string timestamp;
};

void write_manifest(std::ostream& out, const RunManifest& manifest);

/// Library version, e.g. "0.3.0".
std::string_view version() noexcept;

}  // namespace nicd
