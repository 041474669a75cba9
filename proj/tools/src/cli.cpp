#include "nicd/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "nicd/config.hpp"
#include "nicd/cross_validation.hpp"
#include "nicd/dataset_io.hpp"
#include "nicd/diversity.hpp"
#include "nicd/ensemble.hpp"
#include "nicd/error.hpp"
#include "nicd/experiment.hpp"
#include "nicd/noise_id.hpp"
#include "nicd/parallel.hpp"
#include "nicd/random.hpp"
#include "nicd/sampling.hpp"

namespace nicd {
namespace {

namespace fs = std::filesystem;

struct UsageError : Error {
  using Error::Error;
};

// Failure of one named stage of a command.
struct StageError : Error {
  using Error::Error;
};

template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const UsageError&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name + ": " + e.what());
  }
}

struct Globals {
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::size_t jobs = 0;
  std::string out;
  std::string format = "text";
};

std::vector<LearnerSpec> learners_arg(const std::string& text, const std::string& flag) {
  try {
    auto specs = parse_learner_list(text);
    if (specs.empty()) throw ArgumentError("empty learner list");
    return specs;
  } catch (const ArgumentError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::vector<Dataset> load_all(const std::vector<std::string>& paths) {
  return stage("loading data", [&] { return load_corpus(paths); });
}

// Writes `content` to <out>/<name>, or to `fallback` when no directory was given.
void emit(const Globals& g, const std::string& name, const std::string& content, std::ostream* fallback) {
  if (g.out.empty()) {
    if (fallback) *fallback << content;
    return;
  }
  stage("writing output", [&] {
    fs::create_directories(g.out);
    const auto path = fs::path(g.out) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write '" + path.string() + "'");
    file << content;
    if (!file) throw Error("write to '" + path.string() + "' failed");
    return 0;
  });
}

template <class Fn>
std::string to_text(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

struct NoiseArg {
  double rate = 0.0;
  bool any_class = false;
};

// Loads one dataset, optionally corrupting its labels; the flipped indices
// are written to flipped.txt when an output directory is set.
Dataset training_set(const Globals& g, const std::string& path, const NoiseArg& noise, std::ostream& err) {
  auto ds = load_all({path}).front();
  if (noise.rate <= 0.0) return ds;
  auto noisy = stage("injecting noise", [&] {
    return inject_label_noise(ds, {noise.rate, derive_seed(g.seed, 0, "noise"),
                                   noise.any_class ? NoiseLabelRule::any_class : NoiseLabelRule::other_classes});
  });
  err << "injected noise: " << noisy.flipped.size() << " of " << ds.size() << " labels changed\n";
  emit(g, "flipped.txt", to_text([&](std::ostream& o) {
         for (const auto i : noisy.flipped) o << i << '\n';
       }),
       nullptr);
  if (!g.out.empty()) stage("writing output", [&] {
      save_csv(fs::path(g.out) / "noisy.csv", noisy.data);
      return 0;
    });
  return std::move(noisy.data);
}

void add_noise_flags(CLI::App* cmd, NoiseArg& noise) {
  cmd->add_option("--inject-noise", noise.rate, "Corrupt this fraction of labels before scoring")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--any-class", noise.any_class, "Replacement labels may equal the original");
}

std::string diverse_text(const std::vector<LearnerSpec>& specs) { return format_learner_list(specs, "; ") + "\n"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noise identification with a diverse classifier ensemble", "nicd"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(version()));

  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--jobs", g.jobs, "Worker threads (0 = one per core)");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "Standard output format")->check(CLI::IsMember({"text", "records"}));

  std::vector<std::string> datasets;
  std::string learners_text = format_learner_list(default_roster());
  std::string ensemble_text = format_learner_list(default_roster());
  std::size_t folds = 10;
  std::string linkage_text = "average";
  double cut = 0.18;
  std::size_t clusters = 0;
  double threshold = 0.5;
  std::string rule_text = "at_least";
  std::string method = "l";
  std::string learner_text = "dt";
  NoiseArg noise;

  auto* cod = app.add_subcommand("cod", "COD matrix and dendrogram of a learner registry");
  cod->add_option("datasets", datasets, "Dataset files")->required();
  cod->add_option("--learners", learners_text, "Learner registry");
  cod->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  cod->add_option("--linkage", linkage_text, "single, complete or average");

  auto* select = app.add_subcommand("select-diverse", "Cluster the registry and pick one learner per cluster");
  select->add_option("datasets", datasets, "Dataset files")->required();
  select->add_option("--learners", learners_text, "Learner registry");
  select->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  select->add_option("--linkage", linkage_text, "single, complete or average");
  select->add_option("--cut", cut, "Dendrogram cut height")->check(CLI::NonNegativeNumber);
  select->add_option("--clusters", clusters, "Cut to this many clusters instead of a height");

  std::string dataset;
  auto* score = app.add_subcommand("score", "Per-instance correctness scores from a learner set");
  score->add_option("dataset", dataset, "Training data")->required();
  score->add_option("--ensemble", ensemble_text, "The diverse set");
  score->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  add_noise_flags(score, noise);

  auto* filter = app.add_subcommand("filter", "Remove suspected mislabeled instances");
  filter->add_option("dataset", dataset, "Training data")->required();
  filter->add_option("--ensemble", ensemble_text, "The diverse set (method l)");
  filter->add_option("--threshold", threshold, "Fraction of the set that must misclassify")
      ->check(CLI::Range(0.0, 1.0));
  filter->add_option("--rule", rule_text, "at_least or above")->check(CLI::IsMember({"at_least", "above"}));
  filter->add_option("--method", method, "l, biased, renn, classification, ensemble, cvc or ipf")
      ->check(CLI::IsMember({"l", "biased", "renn", "classification", "ensemble", "cvc", "ipf"}));
  filter->add_option("--learner", learner_text, "Learner for the biased, cvc and ipf methods");
  filter->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  add_noise_flags(filter, noise);

  auto* weight = app.add_subcommand("weight", "Per-instance training weights");
  weight->add_option("dataset", dataset, "Training data")->required();
  weight->add_option("--ensemble", ensemble_text, "The diverse set");
  weight->add_option("--biased", learner_text, "Weight by this single learner instead");
  weight->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  add_noise_flags(weight, noise);

  std::string test_path, mode_text = "plain";
  double train_fraction = 2.0 / 3.0;
  bool three = false;
  auto* ens = app.add_subcommand("ensemble", "Train a voting ensemble and measure its accuracy");
  ens->add_option("dataset", dataset, "Training data")->required();
  ens->add_option("--test", test_path, "Test data (default: stratified split of the training data)");
  ens->add_option("--members", ensemble_text, "Member learners");
  ens->add_flag("--three", three, "Use 5-NN, MLP and random forest");
  ens->add_option("--mode", mode_text, "plain, weighted or filtered")
      ->check(CLI::IsMember({"plain", "weighted", "filtered"}));
  ens->add_option("--train-fraction", train_fraction, "Split fraction when --test is absent")
      ->check(CLI::Range(0.0, 1.0));
  ens->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  add_noise_flags(ens, noise);

  std::string config_path;
  std::optional<std::size_t> runs_override, folds_override;
  std::string levels_override, techniques_override, learners_override;
  auto* exp = app.add_subcommand("experiment", "Run the evaluation protocol from a config file");
  exp->add_option("--config", config_path, "Config file (INI)")->required();
  exp->add_option("--runs", runs_override, "Override runs");
  exp->add_option("--folds", folds_override, "Override folds");
  exp->add_option("--noise-levels", levels_override, "Override noise_levels");
  exp->add_option("--techniques", techniques_override, "Override techniques");
  exp->add_option("--learners", learners_override, "Override learners");

  std::string records_path, baseline = "none";
  auto* report = app.add_subcommand("report", "Render tables from a records file");
  report->add_option("records", records_path, "records.tsv from an experiment")->required();
  report->add_option("--baseline", baseline, "Technique to compare against");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }

  const bool records = g.format == "records";
  try {
    if (cod->parsed() || select->parsed()) {
      const auto registry = learners_arg(learners_text, "--learners");
      if (registry.size() < 2) throw UsageError("--learners: need at least two learners");
      Linkage linkage;
      try {
        linkage = parse_linkage(linkage_text);
      } catch (const ArgumentError& e) {
        throw UsageError(std::string("--linkage: ") + e.what());
      }
      const auto corpus = load_all(datasets);
      const auto preds = stage("cross-validating", [&] {
        return collect_predictions(registry, corpus, folds, g.seed, resolve_jobs(g.jobs));
      });
      const auto matrix = cod_matrix(preds);
      const auto dendrogram = stage("clustering", [&] { return agglomerative_cluster(matrix, linkage); });
      const auto matrix_text = to_text([&](std::ostream& o) { write_cod_matrix(o, matrix); });
      const auto dendro_text = to_text([&](std::ostream& o) { write_dendrogram(o, dendrogram); });
      emit(g, "cod_matrix.tsv", matrix_text, nullptr);
      emit(g, "dendrogram.txt", dendro_text, nullptr);
      emit(g, "merges.csv", to_text([&](std::ostream& o) { write_merge_list(o, dendrogram); }), nullptr);
      if (cod->parsed()) {
        out << matrix_text;
        if (!records) out << '\n' << dendro_text;
        return 0;
      }
      const auto partition = clusters > 0 ? cut_to_clusters(dendrogram, clusters) : cut_dendrogram(dendrogram, cut);
      const auto accuracy = mean_accuracy(preds);
      const auto picks = select_representatives(partition, accuracy);
      std::vector<LearnerSpec> diverse;
      for (const auto i : picks) diverse.push_back(registry[i]);
      const auto summary = to_text([&](std::ostream& o) {
        o << "# clusters: " << partition.size() << '\n';
        for (std::size_t c = 0; c < partition.size(); ++c) {
          o << "cluster " << c << ':';
          for (const auto i : partition[c]) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", accuracy[i]);
            o << ' ' << registry[i].label() << (i == picks[c] ? "*" : "") << " (" << buf << ')';
          }
          o << '\n';
        }
      });
      emit(g, "diverse.txt", diverse_text(diverse), nullptr);
      emit(g, "clusters.txt", summary, nullptr);
      if (!records) out << summary;
      out << diverse_text(diverse);
      return 0;
    }

    if (score->parsed() || filter->parsed() || weight->parsed()) {
      const auto ds = training_set(g, dataset, noise, err);
      const auto fseed = derive_seed(g.seed, 1, ds.name());
      const auto jobs = resolve_jobs(g.jobs);
      const bool biased_weighting = weight->parsed() && weight->count("--biased") > 0;
      const bool needs_l = score->parsed() || (filter->parsed() && method == "l") || (weight->parsed() && !biased_weighting);
      std::vector<LearnerSpec> ensemble;
      CorrectnessScores scores;
      if (needs_l) {
        ensemble = learners_arg(ensemble_text, "--ensemble");
        scores = stage("scoring", [&] { return estimate_correctness(ensemble, ds, folds, fseed, jobs); });
      }

      if (score->parsed()) {
        const auto table = to_text([&](std::ostream& o) { write_scores(o, ds, scores); });
        emit(g, "scores.tsv", table, nullptr);
        out << table;
        return 0;
      }

      if (weight->parsed()) {
        WeightVector w;
        if (biased_weighting) {
          const auto spec = learners_arg(learner_text, "--biased");
          if (spec.size() != 1) throw UsageError("--biased: expected one learner");
          w = stage("scoring", [&] { return biased_weights(biased_scores(spec.front(), ds, folds, fseed)); });
        } else {
          w = l_weights(scores);
        }
        const auto table = to_text([&](std::ostream& o) { write_weights(o, w); });
        emit(g, "weights.tsv", table, nullptr);
        out << table;
        return 0;
      }

      if (method != "l" && filter->count("--threshold") > 0) throw UsageError("--threshold applies to method l only");
      const auto rule = rule_text == "above" ? ThresholdRule::above : ThresholdRule::at_least;
      const auto outcome = stage("filtering", [&]() -> FilterOutcome {
        if (method == "l") return l_filter(ds, scores, threshold, rule);
        if (method == "renn") return renn_filter(ds, 5);
        if (method == "classification") return classification_filter(ds, LearnerSpec::parse("knn:k=1"), folds, fseed);
        if (method == "ensemble") {
          const auto trio = default_filter_trio();
          return ensemble_filter(ds, trio, EnsembleFilterMode::consensus, folds, fseed);
        }
        const auto spec = learners_arg(learner_text, "--learner");
        if (spec.size() != 1) throw UsageError("--learner: expected one learner");
        if (method == "biased") return biased_filter(spec.front(), ds, folds, fseed);
        if (method == "cvc") return cvc_filter(ds, 3, spec.front(), fseed);
        return iterative_partitioning_filter(ds, 3, fseed, spec.front());
      });
      for (const auto& w : outcome.warnings) err << "warning: " << w << '\n';
      CorrectnessScores shown = scores;
      if (method != "l") {
        shown = {std::vector<double>(ds.size(), 1.0), 1};
        for (const auto i : outcome.removed) shown.scores[i] = 0.0;
      }
      const auto table = to_text([&](std::ostream& o) { write_scores(o, ds, shown, &outcome); });
      emit(g, "filter.tsv", table, nullptr);
      if (!g.out.empty()) {
        stage("writing output", [&] {
          save_csv(fs::path(g.out) / "kept.csv", apply_filter(ds, outcome));
          return 0;
        });
      }
      if (records) {
        out << table;
      } else {
        out << "removed " << outcome.removed.size() << " of " << ds.size() << " instances\n";
        for (const auto i : outcome.removed) out << i << '\n';
      }
      return 0;
    }

    if (ens->parsed()) {
      auto data = training_set(g, dataset, noise, err);
      Dataset train_set, test_set;
      if (!test_path.empty()) {
        train_set = std::move(data);
        test_set = load_all({test_path}).front();
        if (!train_set.same_schema(test_set)) throw StageError("loading data: test set schema differs from training set");
      } else {
        auto split = stage("splitting", [&] {
          return stratified_split(data, train_fraction, derive_seed(g.seed, 2, data.name()));
        });
        train_set = std::move(split.train);
        test_set = std::move(split.test);
      }
      const auto members = three ? three_ensemble() : learners_arg(ensemble_text, "--members");
      const auto mode = mode_text == "weighted"   ? EnsembleMode::weighted
                        : mode_text == "filtered" ? EnsembleMode::filtered
                                                  : EnsembleMode::plain;
      const auto e = stage("training", [&] {
        return build_ensemble(members, train_set, mode, folds, g.seed, resolve_jobs(g.jobs));
      });
      const auto table = to_text([&](std::ostream& o) {
        char buf[32];
        o << "member\taccuracy\n";
        for (std::size_t j = 0; j < members.size(); ++j) {
          std::size_t hits = 0;
          for (const auto& x : test_set.instances()) hits += e.members()[j]->predict(x) == x.label;
          std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(hits) / static_cast<double>(test_set.size()));
          o << members[j].label() << '\t' << buf << '\n';
        }
        std::snprintf(buf, sizeof buf, "%.6f", ensemble_accuracy(e, test_set));
        o << "ensemble\t" << buf << '\n';
      });
      emit(g, "ensemble.tsv", table, nullptr);
      out << table;
      return 0;
    }

    if (exp->parsed()) {
      auto cfg = stage("reading config", [&] { return load_config(config_path); });
      try {
        if (g.seed_set) cfg.seed = g.seed;
        if (runs_override) cfg.runs = *runs_override;
        if (folds_override) cfg.folds = *folds_override;
        if (!learners_override.empty()) cfg.learners = parse_learner_list(learners_override);
        if (!techniques_override.empty()) cfg.techniques = parse_technique_list(techniques_override);
        if (!levels_override.empty()) {
          cfg.noise_levels.clear();
          std::stringstream s(levels_override);
          for (std::string tok; std::getline(s, tok, ',');) cfg.noise_levels.push_back(std::stod(tok));
        }
        cfg.validate();
      } catch (const std::exception& e) {
        throw UsageError(std::string("experiment options: ") + e.what());
      }
      RunManifest manifest;
      manifest.config_path = fs::absolute(config_path).lexically_normal().string();
      manifest.config = cfg;
      manifest.out_dir = g.out.empty() ? "" : fs::absolute(g.out).lexically_normal().string();
      manifest.version = std::string(version());
      {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        manifest.timestamp = buf;
      }
      emit(g, "manifest.ini", to_text([&](std::ostream& o) { write_manifest(o, manifest); }), nullptr);

      const auto jobs = resolve_jobs(g.jobs);
      std::size_t last_percent = 0;
      const auto result = stage("running experiment", [&] {
        return run_experiment(cfg, jobs, [&](std::size_t done, std::size_t total) {
          const auto percent = done * 10 / total;
          if (percent != last_percent || done == total) {
            last_percent = percent;
            err << "progress: " << done << "/" << total << " groups\n";
          }
        });
      });
      const auto records_text = to_text([&](std::ostream& o) { write_records(o, result); });
      const auto tables_text = to_text([&](std::ostream& o) { write_tables(o, result); });
      emit(g, "records.tsv", records_text, nullptr);
      emit(g, "report.txt", tables_text, nullptr);
      out << (records ? records_text : tables_text);
      if (const auto failed = result.failures()) err << "warning: " << failed << " cell run(s) failed\n";
      return 0;
    }

    if (report->parsed()) {
      const auto result = stage("reading records", [&] {
        std::ifstream in(records_path);
        if (!in) throw Error("cannot open '" + records_path + "'");
        return read_records(in);
      });
      try {
        parse_technique(baseline);
      } catch (const ArgumentError& e) {
        throw UsageError(std::string("--baseline: ") + e.what());
      }
      if (records) {
        out << to_text([&](std::ostream& o) { write_records(o, result); });
      } else {
        TableOptions options;
        options.baseline = baseline;
        const auto tables_text = to_text([&](std::ostream& o) { write_tables(o, result, options); });
        emit(g, "report.txt", tables_text, nullptr);
        out << tables_text;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const StageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace nicd
