#include "nicd/config.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nicd/dataset_io.hpp"
#include "nicd/error.hpp"

#ifndef NICD_VERSION
#define NICD_VERSION "0.0.0"
#endif

namespace nicd {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string> kKnownKeys = {
    "datasets",  "learners",       "techniques", "diverse",    "noise_levels", "runs",
    "folds",     "seed",           "train_fraction", "threshold", "threshold_rule", "noise_rule",
    "partitions", "renn_k",        "ensemble_filter_mode",
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (seps.find(c) != std::string::npos) {
      if (auto t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (auto t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

// Strips a trailing `; comment` (INI inline comments are not handled by
// property_tree).
std::string value_of(const pt::ptree& section, const std::string& key) {
  auto v = section.get<std::string>(key);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if ((v[i] == ';' || v[i] == '#') && i > 0 && (v[i - 1] == ' ' || v[i - 1] == '\t')) {
      v.resize(i);
      break;
    }
  }
  return trim(v);
}

double as_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + text + "'");
}

std::uint64_t as_count(const std::string& key, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ConfigError(key + ": value out of range: '" + text + "'");
  }
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the short form when it round-trips.
  char shorter[40];
  std::snprintf(shorter, sizeof shorter, "%g", v);
  return std::stod(shorter) == v ? shorter : buf;
}

}  // namespace

std::string_view version() noexcept { return NICD_VERSION; }

std::vector<Dataset> load_corpus(std::span<const std::string> paths) {
  std::vector<Dataset> out;
  for (const auto& p : paths) out.push_back(load_dataset(p));
  return out;
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  const auto section = tree.get_child_optional("experiment");
  if (!section) throw ConfigError(source + ": missing [experiment] section");
  for (const auto& [key, _] : *section) {
    if (!kKnownKeys.count(key)) throw ConfigError(source + ": unknown key '" + key + "' in [experiment]");
  }
  auto has = [&](const std::string& key) { return section->get_optional<std::string>(key).has_value(); };
  auto required = [&](const std::string& key) {
    if (!has(key)) throw ConfigError(source + ": missing required key '" + key + "' in [experiment]");
    return value_of(*section, key);
  };

  ExperimentConfig cfg;
  for (const auto& p : split(required("datasets"), ",;")) {
    std::filesystem::path path(p);
    if (path.is_relative()) path = base_dir / path;
    cfg.dataset_paths.push_back(path.lexically_normal().string());
  }
  try {
    cfg.learners = parse_learner_list(required("learners"));
    cfg.techniques = parse_technique_list(required("techniques"));
    if (has("diverse")) cfg.diverse = parse_learner_list(value_of(*section, "diverse"));
    if (has("threshold_rule")) {
      const auto v = value_of(*section, "threshold_rule");
      if (v == "at_least") {
        cfg.threshold_rule = ThresholdRule::at_least;
      } else if (v == "above") {
        cfg.threshold_rule = ThresholdRule::above;
      } else {
        throw ConfigError("threshold_rule: expected at_least or above, got '" + v + "'");
      }
    }
    if (has("noise_rule")) {
      const auto v = value_of(*section, "noise_rule");
      if (v == "other_classes") {
        cfg.noise_rule = NoiseLabelRule::other_classes;
      } else if (v == "any_class") {
        cfg.noise_rule = NoiseLabelRule::any_class;
      } else {
        throw ConfigError("noise_rule: expected other_classes or any_class, got '" + v + "'");
      }
    }
    if (has("ensemble_filter_mode")) {
      const auto v = value_of(*section, "ensemble_filter_mode");
      if (v == "consensus") {
        cfg.ensemble_filter_mode = EnsembleFilterMode::consensus;
      } else if (v == "majority") {
        cfg.ensemble_filter_mode = EnsembleFilterMode::majority;
      } else {
        throw ConfigError("ensemble_filter_mode: expected consensus or majority, got '" + v + "'");
      }
    }
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (has("noise_levels")) {
    cfg.noise_levels.clear();
    for (const auto& v : split(value_of(*section, "noise_levels"), ",; \t")) {
      cfg.noise_levels.push_back(as_real("noise_levels", v));
    }
  }
  if (has("runs")) cfg.runs = as_count("runs", value_of(*section, "runs"));
  if (has("folds")) cfg.folds = as_count("folds", value_of(*section, "folds"));
  if (has("seed")) cfg.seed = as_count("seed", value_of(*section, "seed"));
  if (has("partitions")) cfg.partitions = as_count("partitions", value_of(*section, "partitions"));
  if (has("renn_k")) cfg.renn_k = as_count("renn_k", value_of(*section, "renn_k"));
  if (has("train_fraction")) cfg.train_fraction = as_real("train_fraction", value_of(*section, "train_fraction"));
  if (has("threshold")) cfg.threshold = as_real("threshold", value_of(*section, "threshold"));

  try {
    cfg.corpus = load_corpus(cfg.dataset_paths);
  } catch (const Error& e) {
    throw ConfigError(source + ": datasets: " + e.what());
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  const auto base = std::filesystem::absolute(path).parent_path();
  return parse_config(in, base, path.string());
}

void write_config(std::ostream& out, const ExperimentConfig& cfg) {
  out << "[experiment]\ndatasets = ";
  for (std::size_t i = 0; i < cfg.dataset_paths.size(); ++i) {
    out << (i ? ", " : "") << std::filesystem::absolute(cfg.dataset_paths[i]).lexically_normal().string();
  }
  out << "\nlearners = " << format_learner_list(cfg.learners, "; ");
  out << "\ntechniques = ";
  for (std::size_t i = 0; i < cfg.techniques.size(); ++i) out << (i ? ", " : "") << to_string(cfg.techniques[i]);
  out << "\ndiverse = " << format_learner_list(cfg.diverse, "; ");
  out << "\nnoise_levels = ";
  for (std::size_t i = 0; i < cfg.noise_levels.size(); ++i) out << (i ? ", " : "") << format_real(cfg.noise_levels[i]);
  out << "\nruns = " << cfg.runs << "\nfolds = " << cfg.folds << "\nseed = " << cfg.seed
      << "\ntrain_fraction = " << format_real(cfg.train_fraction) << "\nthreshold = " << format_real(cfg.threshold)
      << "\nthreshold_rule = " << (cfg.threshold_rule == ThresholdRule::at_least ? "at_least" : "above")
      << "\nnoise_rule = " << (cfg.noise_rule == NoiseLabelRule::other_classes ? "other_classes" : "any_class")
      << "\npartitions = " << cfg.partitions << "\nrenn_k = " << cfg.renn_k << "\nensemble_filter_mode = "
      << (cfg.ensemble_filter_mode == EnsembleFilterMode::consensus ? "consensus" : "majority") << '\n';
}

void write_manifest(std::ostream& out, const RunManifest& manifest) {
  write_config(out, manifest.config);
  out << "\n[manifest]\nconfig = " << manifest.config_path << "\nout = " << manifest.out_dir
      << "\nversion = " << manifest.version << "\ntimestamp = " << manifest.timestamp << '\n';
}

}  // namespace nicd
