#include "nicd/experiment.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "nicd/cross_validation.hpp"
#include "nicd/ensemble.hpp"
#include "nicd/error.hpp"
#include "nicd/parallel.hpp"
#include "nicd/random.hpp"

namespace nicd {
namespace {

constexpr std::pair<Technique, std::string_view> kTechniqueNames[] = {
    {Technique::none, "none"},
    {Technique::l_weight, "l_weight"},
    {Technique::l_filter, "l_filter"},
    {Technique::biased_weight, "biased_weight"},
    {Technique::biased_filter, "biased_filter"},
    {Technique::renn, "renn"},
    {Technique::classification, "classification"},
    {Technique::ensemble_filter, "ensemble_filter"},
    {Technique::cvc, "cvc"},
    {Technique::ipf, "ipf"},
    {Technique::l_ensemble, "l_ensemble"},
    {Technique::three_ensemble, "3_ensemble"},
    {Technique::weighted_l_ensemble, "weighted_l_ensemble"},
    {Technique::filtered_l_ensemble, "filtered_l_ensemble"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1));
}

std::vector<std::string> split_list(std::string_view text, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (seps.find(c) != std::string_view::npos) {
      if (auto t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (auto t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

std::string format_g(double v, const char* fmt = "%.17g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

Technique parse_technique(std::string_view text) {
  for (const auto& [t, name] : kTechniqueNames) {
    if (name == text) return t;
  }
  if (text == "three_ensemble") return Technique::three_ensemble;
  throw ArgumentError("unknown technique '" + std::string(text) + "'");
}

std::string_view to_string(Technique t) {
  for (const auto& [tech, name] : kTechniqueNames) {
    if (tech == t) return name;
  }
  return "?";
}

bool is_ensemble(Technique t) noexcept {
  return t == Technique::l_ensemble || t == Technique::three_ensemble || t == Technique::weighted_l_ensemble ||
         t == Technique::filtered_l_ensemble;
}

std::vector<Technique> parse_technique_list(std::string_view text) {
  std::vector<Technique> out;
  for (const auto& tok : split_list(text, ",; \t")) out.push_back(parse_technique(tok));
  return out;
}

void ExperimentConfig::validate() const {
  if (corpus.empty()) throw ConfigError("datasets: at least one dataset is required");
  if (learners.empty() && std::none_of(techniques.begin(), techniques.end(), is_ensemble)) {
    throw ConfigError("learners: at least one learner is required");
  }
  if (techniques.empty()) throw ConfigError("techniques: at least one technique is required");
  if (diverse.empty()) throw ConfigError("diverse: the diverse set may not be empty");
  if (runs < 1) throw ConfigError("runs: must be at least 1");
  if (folds < 2) throw ConfigError("folds: must be at least 2");
  if (noise_levels.empty()) throw ConfigError("noise_levels: at least one level is required");
  for (const auto v : noise_levels) {
    if (!(v >= 0.0 && v < 1.0)) throw ConfigError("noise_levels: " + format_g(v, "%g") + " is outside [0, 1)");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("train_fraction: must be in (0, 1)");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ConfigError("threshold: must be in (0, 1]");
  if (partitions < 2) throw ConfigError("partitions: must be at least 2");
  if (renn_k < 1) throw ConfigError("renn_k: must be at least 1");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (corpus[i].name() == corpus[j].name()) throw ConfigError("datasets: duplicate name '" + corpus[i].name() + "'");
    }
  }
  for (std::size_t i = 0; i < learners.size(); ++i) {
    if (learners[i].label() == kEnsembleLearner) throw ConfigError("learners: 'ensemble' is reserved");
    for (std::size_t j = 0; j < i; ++j) {
      if (learners[i].label() == learners[j].label()) {
        throw ConfigError("learners: duplicate learner '" + learners[i].label() + "'");
      }
    }
  }
}

namespace {

// Everything derived from one noisy training split, computed on demand and
// shared by all cells of the group.
class Group {
 public:
  Group(const ExperimentConfig& cfg, Dataset noisy, std::uint64_t level_seed)
      : cfg_(cfg),
        noisy_(std::move(noisy)),
        model_seed_(mix_seed(level_seed, 2)),
        score_seed_(mix_seed(level_seed, 3)),
        filter_seed_(mix_seed(level_seed, 4)),
        folds_(std::min(cfg.folds, noisy_.size())) {
    priors_.assign(noisy_.num_classes(), 0.0);
    for (const auto c : noisy_.labels()) priors_[c] += 1.0 / static_cast<double>(noisy_.size());
  }

  double evaluate(const LearnerSpec* learner, Technique t, const Dataset& test) {
    if (is_ensemble(t)) return ensemble_accuracy(ensemble(t), test);
    const auto model = base_model(*learner, t);
    std::size_t hits = 0;
    for (const auto& x : test.instances()) hits += model->predict(x) == x.label;
    return test.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(test.size());
  }

 private:
  ModelPtr fit(const LearnerSpec& spec, const Dataset& data, std::span<const double> weights = {}) {
    return nicd::train(spec, data, weights, member_seed(model_seed_, spec));
  }

  const OutOfFold& out_of_fold(const LearnerSpec& spec) {
    const auto key = spec.token();
    auto it = oof_.find(key);
    if (it == oof_.end()) it = oof_.emplace(key, cross_validate(spec, noisy_, folds_, score_seed_)).first;
    return it->second;
  }

  const CorrectnessScores& l_scores() {
    if (!l_scores_) {
      std::vector<PredictionRecord> records;
      for (const auto& spec : cfg_.diverse) records.push_back(out_of_fold(spec).record);
      l_scores_ = correctness_from_predictions(records, noisy_);
    }
    return *l_scores_;
  }

  const Dataset& filtered(Technique t) {
    auto it = filtered_.find(t);
    if (it != filtered_.end()) return it->second;
    FilterOutcome outcome;
    switch (t) {
      case Technique::l_filter:
        outcome = l_filter(noisy_, l_scores(), cfg_.threshold, cfg_.threshold_rule);
        break;
      case Technique::renn:
        outcome = renn_filter(noisy_, cfg_.renn_k);
        break;
      case Technique::classification:
        outcome = classification_filter(noisy_, LearnerSpec::parse("knn:k=1"), folds_, filter_seed_);
        break;
      case Technique::ensemble_filter: {
        const auto trio = default_filter_trio();
        outcome = ensemble_filter(noisy_, trio, cfg_.ensemble_filter_mode, folds_, filter_seed_);
        break;
      }
      case Technique::cvc:
        outcome = cvc_filter(noisy_, cfg_.partitions, LearnerSpec::parse("dt"), filter_seed_);
        break;
      case Technique::ipf:
        outcome = iterative_partitioning_filter(noisy_, cfg_.partitions, filter_seed_);
        break;
      default:
        throw ArgumentError("not a filter technique: " + std::string(to_string(t)));
    }
    return filtered_.emplace(t, apply_filter(noisy_, outcome)).first->second;
  }

  // Models keyed by (technique, learner token); the L-ensembles reuse the
  // base models of the matching single-learner technique.
  ModelPtr base_model(const LearnerSpec& spec, Technique t) {
    const auto key = std::make_pair(t, spec.token());
    if (auto it = models_.find(key); it != models_.end()) return it->second;
    ModelPtr m;
    switch (t) {
      case Technique::none:
        m = fit(spec, noisy_);
        break;
      case Technique::l_weight:
        m = fit(spec, noisy_, l_weights(l_scores()));
        break;
      case Technique::biased_weight:
        m = fit(spec, noisy_, biased_weights({out_of_fold(spec).label_scores, 1}));
        break;
      case Technique::biased_filter:
        m = fit(spec, apply_filter(noisy_, biased_filter(out_of_fold(spec), noisy_)));
        break;
      default:
        m = fit(spec, filtered(t));
        break;
    }
    models_.emplace(key, m);
    return m;
  }

  const VotingEnsemble& ensemble(Technique t) {
    if (auto it = ensembles_.find(t); it != ensembles_.end()) return it->second;
    std::vector<LearnerSpec> specs = t == Technique::three_ensemble ? three_ensemble() : cfg_.diverse;
    const Technique member_technique = t == Technique::weighted_l_ensemble   ? Technique::biased_weight
                                       : t == Technique::filtered_l_ensemble ? Technique::biased_filter
                                                                             : Technique::none;
    std::vector<ModelPtr> members;
    for (const auto& spec : specs) members.push_back(base_model(spec, member_technique));
    return ensembles_.emplace(t, VotingEnsemble(std::move(members), priors_)).first->second;
  }

  const ExperimentConfig& cfg_;
  Dataset noisy_;
  std::uint64_t model_seed_, score_seed_, filter_seed_;
  std::size_t folds_;
  std::vector<double> priors_;
  std::map<std::string, OutOfFold> oof_;
  std::optional<CorrectnessScores> l_scores_;
  std::map<Technique, Dataset> filtered_;
  std::map<std::pair<Technique, std::string>, ModelPtr> models_;
  std::map<Technique, VotingEnsemble> ensembles_;
};

std::vector<std::string> learner_axis(const ExperimentConfig& cfg) {
  std::vector<std::string> out;
  for (const auto& l : cfg.learners) out.push_back(l.label());
  if (std::any_of(cfg.techniques.begin(), cfg.techniques.end(), is_ensemble)) out.emplace_back(kEnsembleLearner);
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, std::size_t jobs, ProgressFn progress) {
  cfg.validate();
  ExperimentReport report;
  for (const auto& ds : cfg.corpus) report.datasets.push_back(ds.name());
  report.learners = learner_axis(cfg);
  report.techniques = cfg.techniques;
  report.noise_levels = cfg.noise_levels;
  report.runs = cfg.runs;

  const std::size_t nd = cfg.corpus.size(), nr = cfg.runs, nv = cfg.noise_levels.size();
  const std::size_t total = nd * nr * nv;
  std::vector<std::vector<RunRecord>> per_group(total);
  std::mutex progress_mutex;
  std::size_t done = 0;

  parallel_for(total, jobs, [&](std::size_t g) {
    const std::size_t d = g / (nr * nv), r = (g / nv) % nr, v = g % nv;
    const auto& ds = cfg.corpus[d];
    const double level = cfg.noise_levels[v];
    const auto group_seed = derive_seed(cfg.seed, r, ds.name());
    auto& out = per_group[g];
    auto emit = [&](const std::string& learner, Technique t, double acc, std::string error) {
      out.push_back({ds.name(), learner, t, level, r, acc, std::move(error)});
    };

    std::optional<Split> split;
    std::optional<Group> group;
    std::string setup_error;
    try {
      split = stratified_split(shuffle(ds, mix_seed(group_seed, 1)), cfg.train_fraction, mix_seed(group_seed, 2));
      const auto level_seed = mix_seed(group_seed, std::bit_cast<std::uint64_t>(level));
      auto noisy = inject_label_noise(split->train, {level, mix_seed(level_seed, 1), cfg.noise_rule});
      group.emplace(cfg, std::move(noisy.data), level_seed);
    } catch (const std::exception& e) {
      setup_error = e.what();
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto t : cfg.techniques) {
      if (is_ensemble(t)) {
        if (!group) {
          emit(std::string(kEnsembleLearner), t, nan, setup_error);
          continue;
        }
        try {
          emit(std::string(kEnsembleLearner), t, group->evaluate(nullptr, t, split->test), {});
        } catch (const std::exception& e) {
          emit(std::string(kEnsembleLearner), t, nan, e.what());
        }
        continue;
      }
      for (const auto& spec : cfg.learners) {
        if (!group) {
          emit(spec.label(), t, nan, setup_error);
          continue;
        }
        try {
          emit(spec.label(), t, group->evaluate(&spec, t, split->test), {});
        } catch (const std::exception& e) {
          emit(spec.label(), t, nan, e.what());
        }
      }
    }
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(++done, total);
    }
  });

  // Group order is (dataset, run, level); records are reported by
  // (dataset, level, technique, learner, run).
  std::map<std::string, std::size_t> learner_index;
  for (std::size_t i = 0; i < report.learners.size(); ++i) learner_index[report.learners[i]] = i;
  std::map<Technique, std::size_t> technique_index;
  for (std::size_t i = 0; i < cfg.techniques.size(); ++i) technique_index.emplace(cfg.techniques[i], i);
  struct Keyed {
    std::array<std::size_t, 5> key;
    RunRecord record;
  };
  std::vector<Keyed> keyed;
  for (std::size_t g = 0; g < total; ++g) {
    const std::size_t d = g / (nr * nv), v = g % nv;
    for (auto& rec : per_group[g]) {
      keyed.push_back({{d, v, technique_index.at(rec.technique), learner_index.at(rec.learner), rec.run},
                       std::move(rec)});
    }
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) { return a.key < b.key; });
  for (auto& k : keyed) report.records.push_back(std::move(k.record));
  return report;
}

std::vector<double> ExperimentReport::cell(std::string_view dataset, std::string_view learner, Technique t,
                                           double noise) const {
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.dataset == dataset && r.learner == learner && r.technique == t && r.noise == noise) out.push_back(r.accuracy);
  }
  return out;
}

std::vector<double> ExperimentReport::dataset_means(std::string_view learner, Technique t, double noise) const {
  std::vector<double> out;
  for (const auto& d : datasets) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto a : cell(d, learner, t, noise)) {
      if (std::isnan(a)) continue;
      sum += a;
      ++n;
    }
    out.push_back(n ? sum / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

double ExperimentReport::mean_accuracy(std::string_view learner, Technique t, double noise) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto m : dataset_means(learner, t, noise)) {
    if (std::isnan(m)) continue;
    sum += m;
    ++n;
  }
  return n ? sum / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
}

std::size_t ExperimentReport::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const RunRecord& r) {
    return !r.error.empty();
  }));
}

std::optional<double> mean_percent_re(const ExperimentReport& report, std::string_view learner, Technique t,
                                      std::span<const double> levels) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto v : levels) {
    const double orig = 100.0 * report.mean_accuracy(learner, Technique::none, v);
    const double handled = 100.0 * report.mean_accuracy(learner, t, v);
    if (std::isnan(orig) || std::isnan(handled)) continue;
    if (const auto re = percent_reduction_in_error(handled, orig)) {
      sum += *re;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

namespace {

std::string one_line(std::string text) {
  for (auto& c : text) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + fmt(items[i]);
  return out;
}

}  // namespace

void write_records(std::ostream& out, const ExperimentReport& report) {
  out << "# nicd records v1\n";
  out << "# datasets: " << join(report.datasets, [](const std::string& s) { return s; }) << '\n';
  out << "# learners: " << join(report.learners, [](const std::string& s) { return s; }) << '\n';
  out << "# techniques: " << join(report.techniques, [](Technique t) { return std::string(to_string(t)); }) << '\n';
  out << "# noise: " << join(report.noise_levels, [](double v) { return format_g(v, "%g"); }) << '\n';
  out << "# runs: " << report.runs << '\n';
  out << "dataset\tnoise\ttechnique\tlearner\trun\taccuracy\terror\n";
  for (const auto& r : report.records) {
    out << r.dataset << '\t' << format_g(r.noise, "%g") << '\t' << to_string(r.technique) << '\t' << r.learner << '\t'
        << r.run << '\t' << (std::isnan(r.accuracy) ? std::string("nan") : format_g(r.accuracy)) << '\t'
        << one_line(r.error) << '\n';
  }
}

ExperimentReport read_records(std::istream& in) {
  ExperimentReport report;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  auto fail = [&](const std::string& what) { throw IngestionError("<records>", line_no, what); };
  auto number = [&](const std::string& text) {
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      fail("not a number: '" + text + "'");
    }
    if (used != text.size()) fail("not a number: '" + text + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const auto key = line.substr(2, colon - 2);
      const auto value = trim(std::string_view(line).substr(colon + 1));
      if (key == "datasets") report.datasets = split_list(value, ",");
      if (key == "learners") report.learners = split_list(value, ",");
      if (key == "techniques") report.techniques = parse_technique_list(value);
      if (key == "noise") {
        for (const auto& v : split_list(value, ",")) report.noise_levels.push_back(number(v));
      }
      if (key == "runs") report.runs = static_cast<std::size_t>(number(value));
      continue;
    }
    if (!header_seen) {
      if (!line.starts_with("dataset\t")) fail("missing column header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() == 6) fields.emplace_back();
    if (fields.size() != 7) fail("expected 7 tab-separated fields, got " + std::to_string(fields.size()));
    RunRecord r;
    r.dataset = fields[0];
    r.noise = number(fields[1]);
    r.technique = parse_technique(fields[2]);
    r.learner = fields[3];
    r.run = static_cast<std::size_t>(number(fields[4]));
    r.accuracy = number(fields[5]);
    r.error = fields[6];
    report.records.push_back(std::move(r));
  }
  if (!header_seen) throw IngestionError("<records>", line_no, "no records header found");
  return report;
}

namespace {

std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "-";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string p_value_cell(const WilcoxonResult& w) {
  if (w.n == 0) return "1.000";
  const char* mark = w.direction == Direction::greater ? " +" : w.direction == Direction::less ? " -" : "";
  return fixed(w.one_sided_p, 3) + mark;
}

// Pairs the non-NaN dataset means of two series.
std::pair<std::vector<double>, std::vector<double>> paired(const std::vector<double>& a, const std::vector<double>& b) {
  std::pair<std::vector<double>, std::vector<double>> out;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i])) continue;
    out.first.push_back(a[i]);
    out.second.push_back(b[i]);
  }
  return out;
}

}  // namespace

void write_tables(std::ostream& out, const ExperimentReport& report, const TableOptions& options) {
  const Technique baseline = parse_technique(options.baseline);
  std::vector<std::string> columns;
  for (const auto& l : report.learners) {
    if (l != kEnsembleLearner) columns.push_back(l);
  }
  std::size_t width = 12;
  for (const auto& c : columns) width = std::max(width, c.size() + 2);
  std::size_t label_width = 10;
  for (const auto t : report.techniques) label_width = std::max(label_width, to_string(t).size() + 2);
  const bool has_ensemble = std::any_of(report.techniques.begin(), report.techniques.end(), is_ensemble);

  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  auto row = [&](const std::string& label, const std::string& kind, const std::vector<std::string>& cells) {
    std::string line = pad(label, label_width) + pad(kind, 8);
    for (const auto& c : cells) line += pad(c, width);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };

  out << "datasets: " << report.datasets.size() << "  runs: " << report.runs << "  baseline: " << options.baseline
      << "\naccuracy in %; p-val is one-sided Wilcoxon over datasets, + means above the baseline;"
         " count is wins/ties/losses against the baseline\n";
  for (const auto level : report.noise_levels) {
    out << "\n== noise " << fixed(100.0 * level, 0) << "% ==\n";
    row("technique", "", columns);
    for (const auto t : report.techniques) {
      if (is_ensemble(t)) continue;
      std::vector<std::string> acc, pv, count, re;
      for (const auto& l : columns) {
        acc.push_back(fixed(100.0 * report.mean_accuracy(l, t, level), 2));
        if (t == baseline) continue;
        const auto [a, b] = paired(report.dataset_means(l, t, level), report.dataset_means(l, baseline, level));
        pv.push_back(p_value_cell(wilcoxon_signed_rank(a, b)));
        const auto wtl = win_tie_loss(a, b);
        count.push_back(std::to_string(wtl.wins) + "/" + std::to_string(wtl.ties) + "/" + std::to_string(wtl.losses));
        const auto orig = 100.0 * report.mean_accuracy(l, baseline, level);
        const auto handled = 100.0 * report.mean_accuracy(l, t, level);
        const auto value = percent_reduction_in_error(handled, orig);
        re.push_back(value && !std::isnan(*value) ? fixed(*value, 3) : "-");
      }
      const std::string name(to_string(t));
      row(name, "acc", acc);
      if (t == baseline) continue;
      row("", "p-val", pv);
      row("", "count", count);
      if (options.show_percent_re) row("", "%RE", re);
    }
    if (!has_ensemble) continue;
    out << "-- ensembles against each learner's " << options.baseline << " --\n";
    for (const auto t : report.techniques) {
      if (!is_ensemble(t)) continue;
      const auto ens = report.dataset_means(kEnsembleLearner, t, level);
      std::vector<std::string> pv, count;
      for (const auto& l : columns) {
        const auto [a, b] = paired(ens, report.dataset_means(l, baseline, level));
        pv.push_back(p_value_cell(wilcoxon_signed_rank(a, b)));
        const auto wtl = win_tie_loss(a, b);
        count.push_back(std::to_string(wtl.wins) + "/" + std::to_string(wtl.ties) + "/" + std::to_string(wtl.losses));
      }
      const std::string name(to_string(t));
      row(name, "acc", {fixed(100.0 * report.mean_accuracy(kEnsembleLearner, t, level), 2)});
      if (!columns.empty()) {
        row("", "p-val", pv);
        row("", "count", count);
      }
    }
  }
  if (const auto failed = report.failures()) {
    out << '\n' << failed << " cell run(s) failed:\n";
    std::size_t shown = 0;
    for (const auto& r : report.records) {
      if (r.error.empty()) continue;
      if (++shown > 10) {
        out << "  ...\n";
        break;
      }
      out << "  " << r.dataset << " " << to_string(r.technique) << " " << r.learner << " noise=" << r.noise
          << " run=" << r.run << ": " << r.error << '\n';
    }
  }
}

}  // namespace nicd
