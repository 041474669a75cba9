#include "nicd/learner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>

#include "learners/builtin.hpp"
#include "nicd/error.hpp"

namespace nicd {
namespace {

// Parameters for which 0 means "derive from the data".
const std::set<std::string> kZeroMeansAuto = {"mtry", "hidden", "momentum"};
const std::set<std::string> kIntegral = {"k", "trees", "mtry", "hidden", "epochs", "maxrules"};

class Registry {
 public:
  Registry() {
    using namespace learners;
    add({"knn", {"ib", "nearest_neighbor"}, {{"k", 5}}, train_knn});
    add({"nb", {"naive_bayes", "naivebayes"}, {}, train_naive_bayes});
    add({"dt", {"decision_tree", "c45", "tree"}, {{"cf", 0.25}, {"minleaf", 2}}, train_decision_tree});
    add({"rf", {"random_forest", "randomforest", "forest"}, {{"trees", 25}, {"mtry", 0}}, train_random_forest});
    add({"mlp", {"perceptron"}, {{"hidden", 0}, {"epochs", 100}, {"lr", 0.3}, {"momentum", 0.2}}, train_mlp});
    add({"ripper", {"rule_learner", "rules", "jrip"}, {{"maxrules", 20}, {"mincover", 2}}, train_rule_learner});
    add({"lwl", {"locally_weighted"}, {{"k", 10}}, train_lwl});
    add({"majority", {"zeror", "zero_r"}, {}, train_majority});
  }

  void add(LearnerKindInfo info) {
    std::lock_guard lock(mutex_);
    for (const auto& alias : info.aliases) aliases_[alias] = info.kind;
    aliases_[info.kind] = info.kind;
    const auto kind = info.kind;
    kinds_[kind] = std::move(info);
  }

  LearnerKindInfo lookup(std::string_view name) const {
    std::lock_guard lock(mutex_);
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const auto alias = aliases_.find(key);
    if (alias == aliases_.end()) throw ArgumentError("unknown learner kind '" + std::string(name) + "'");
    return kinds_.at(alias->second);
  }

  std::vector<std::string> kinds() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [k, _] : kinds_) out.push_back(k);
    return out;
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::string> aliases_;
  std::map<std::string, LearnerKindInfo> kinds_;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::string format_number(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

LearnerSpec resolve(const LearnerKindInfo& info, const std::map<std::string, double>& overrides) {
  LearnerSpec spec{info.kind, info.defaults};
  for (const auto& [name, value] : overrides) {
    if (!info.defaults.contains(name)) {
      throw ArgumentError("learner '" + info.kind + "' has no parameter '" + name + "'");
    }
    const bool zero_ok = kZeroMeansAuto.contains(name);
    if (!std::isfinite(value) || value < 0 || (value == 0 && !zero_ok)) {
      throw ArgumentError("learner '" + info.kind + "': parameter '" + name + "' must be positive");
    }
    if (kIntegral.contains(name) && value != std::floor(value)) {
      throw ArgumentError("learner '" + info.kind + "': parameter '" + name + "' must be an integer");
    }
    spec.params[name] = value;
  }
  if (spec.kind == "dt" && spec.params.at("cf") > 0.5) {
    throw ArgumentError("learner 'dt': confidence factor cf must lie in (0, 0.5]");
  }
  return spec;
}

}  // namespace

LearnerSpec LearnerSpec::make(std::string_view kind, std::map<std::string, double> overrides) {
  return resolve(registry().lookup(kind), overrides);
}

LearnerSpec LearnerSpec::parse(std::string_view token) {
  token = trim(token);
  const auto colon = token.find(':');
  const auto kind = trim(token.substr(0, colon));
  if (kind.empty()) throw ArgumentError("empty learner token");
  std::map<std::string, double> overrides;
  if (colon != std::string_view::npos) {
    auto rest = token.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ArgumentError("learner token '" + std::string(token) + "': expected name=value");
      }
      const auto name = std::string(trim(item.substr(0, eq)));
      const auto text = trim(item.substr(eq + 1));
      double value = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ArgumentError("learner token '" + std::string(token) + "': bad value for '" + name + "'");
      }
      overrides[name] = value;
    }
  }
  return make(kind, std::move(overrides));
}

double LearnerSpec::param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) throw ArgumentError("learner '" + kind + "' has no parameter '" + name + "'");
  return it->second;
}

std::string LearnerSpec::token() const {
  std::string out = kind;
  char sep = ':';
  for (const auto& [name, value] : params) {
    out += sep;
    out += name + "=" + format_number(value);
    sep = ',';
  }
  return out;
}

std::string LearnerSpec::label() const {
  const auto defaults = registry().lookup(kind).defaults;
  std::string out = kind;
  char sep = ':';
  for (const auto& [name, value] : params) {
    const auto d = defaults.find(name);
    // knn always shows k: "knn:k=5" reads better than a bare "knn".
    if (d != defaults.end() && d->second == value && !(kind == "knn" && name == "k")) continue;
    out += sep;
    out += name + "=" + format_number(value);
    sep = ',';
  }
  return out;
}

std::vector<LearnerSpec> parse_learner_list(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!trim(current).empty()) tokens.emplace_back(trim(current));
    current.clear();
  };
  std::size_t i = 0;
  while (i <= text.size()) {
    const bool end = i == text.size();
    const char c = end ? ';' : text[i];
    if (c == ';' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == ',') {
      // Look ahead: "name=value" without a ':' continues the current token.
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != ',' && text[j] != ';' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      const auto piece = text.substr(i + 1, j - i - 1);
      const bool continues = piece.find('=') != std::string_view::npos &&
                             piece.find(':') == std::string_view::npos &&
                             current.find(':') != std::string::npos;
      if (continues) {
        current += ',';
      } else {
        flush();
      }
    } else {
      current += c;
    }
    ++i;
  }
  std::vector<LearnerSpec> specs;
  for (const auto& t : tokens) specs.push_back(LearnerSpec::parse(t));
  return specs;
}

std::string format_learner_list(std::span<const LearnerSpec> specs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i) out += sep;
    out += specs[i].label();
  }
  return out;
}

std::vector<LearnerSpec> default_roster() {
  return {LearnerSpec::make("mlp"), LearnerSpec::make("dt"),     LearnerSpec::make("lwl"),
          LearnerSpec::make("knn"), LearnerSpec::make("nb"),     LearnerSpec::make("ripper"),
          LearnerSpec::make("rf")};
}

void register_learner(LearnerKindInfo info) {
  if (info.kind.empty() || !info.train) throw ArgumentError("register_learner: kind and train function required");
  registry().add(std::move(info));
}

std::vector<std::string> registered_kinds() { return registry().kinds(); }

ClassIndex argmax_with_ties(std::span<const double> scores, std::span<const double> priors) {
  if (scores.empty()) throw ArgumentError("argmax over an empty score vector");
  const double best = *std::max_element(scores.begin(), scores.end());
  const double tol = 1e-12 * std::max(1.0, std::abs(best));
  ClassIndex pick = scores.size();
  for (ClassIndex c = 0; c < scores.size(); ++c) {
    if (scores[c] < best - tol) continue;
    if (pick == scores.size()) {
      pick = c;
      continue;
    }
    const double pc = c < priors.size() ? priors[c] : 0.0;
    const double pp = pick < priors.size() ? priors[pick] : 0.0;
    if (pc > pp + 1e-12) pick = c;
  }
  return pick;
}

void Model::check(const Instance& x) const {
  if (x.values.size() != num_features_) {
    throw ArgumentError("model '" + spec_.label() + "': instance has " + std::to_string(x.values.size()) +
                        " values, expected " + std::to_string(num_features_));
  }
}

ClassIndex Model::predict(const Instance& x) const {
  check(x);
  return predict_impl(x);
}

std::vector<double> Model::distribution(const Instance& x) const {
  check(x);
  return distribution_impl(x);
}

double Model::classifier_score(const Instance& x, ClassIndex y) const {
  check(x);
  if (y >= num_classes()) throw ArgumentError("classifier_score: class index out of range");
  return std::clamp(score_impl(x, y), 0.0, 1.0);
}

ClassIndex Model::predict_impl(const Instance& x) const {
  return argmax_with_ties(distribution_impl(x), priors_);
}

double Model::score_impl(const Instance& x, ClassIndex y) const { return distribution_impl(x)[y]; }

ModelPtr train(const LearnerSpec& spec, const Dataset& data, std::span<const double> weights,
               std::uint64_t seed) {
  if (data.empty()) throw ArgumentError("train '" + spec.label() + "': empty training set");
  if (!weights.empty() && weights.size() != data.size()) {
    throw ArgumentError("train '" + spec.label() + "': weight vector length " + std::to_string(weights.size()) +
                        " does not match " + std::to_string(data.size()) + " instances");
  }
  std::vector<std::size_t> kept;
  std::vector<double> w;
  kept.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double wi = weights.empty() ? 1.0 : weights[i];
    if (!std::isfinite(wi) || wi < 0) throw ArgumentError("train: weights must be finite and non-negative");
    if (wi > 0) {
      kept.push_back(i);
      w.push_back(wi);
    }
  }
  if (kept.empty()) throw ArgumentError("train '" + spec.label() + "': all weights are zero");

  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double scale = static_cast<double>(w.size()) / total;
  for (auto& wi : w) wi *= scale;

  const Dataset rows = kept.size() == data.size() ? data : data.subset(kept);
  std::vector<double> priors(data.num_classes(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) priors[rows[i].label] += w[i];
  const double mass = std::accumulate(priors.begin(), priors.end(), 0.0);
  for (auto& p : priors) p /= mass;

  const auto info = registry().lookup(spec.kind);
  const auto resolved = resolve(info, spec.params);
  TrainingData td{rows, std::move(w), std::move(priors)};
  return info.train(resolved, td, seed);
}

}  // namespace nicd
