#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nicd/dataset.hpp"

namespace nicd {

/// A learner kind plus its fully resolved hyperparameters.
///
/// Text form: `kind[:name=value,...]`, e.g. `knn:k=5`, `rf:trees=50`,
/// `mlp:hidden=16,epochs=200,lr=0.1`. Kinds (aliases in parentheses):
///   knn (ib)              k
///   nb (naive_bayes)      -
///   dt (decision_tree, c45)  cf, minleaf
///   rf (random_forest)    trees, mtry (0 = log2(k)+1)
///   mlp                   hidden (0 = auto), epochs, lr, momentum
///   ripper (rule_learner) maxrules, mincover
///   lwl                   k
///   majority (zeror)      -
struct LearnerSpec {
  std::string kind;
  std::map<std::string, double> params;

  /// Parses and resolves a token: canonical kind, defaults filled in,
  /// values validated. Throws ArgumentError for unknown kinds or params.
  static LearnerSpec parse(std::string_view token);
  /// Same as parse, for a kind and explicit overrides.
  static LearnerSpec make(std::string_view kind, std::map<std::string, double> overrides = {});

  double param(const std::string& name) const;

  /// Full canonical text; equal tokens mean identical learners.
  std::string token() const;
  /// Kind plus only the non-default parameters; used in reports.
  std::string label() const;

  friend bool operator==(const LearnerSpec&, const LearnerSpec&) = default;
};

/// Splits a learner list. Tokens are separated by `;`, whitespace or `,`;
/// a comma-separated piece of the form `name=value` continues the previous
/// token, so `dt,knn:k=5,mlp:hidden=8,epochs=50` yields three learners.
std::vector<LearnerSpec> parse_learner_list(std::string_view text);
std::string format_learner_list(std::span<const LearnerSpec> specs, std::string_view sep = ";");

/// The seven-kind roster used as the diverse set by default:
/// mlp, dt, lwl, knn (k=5), nb, ripper, rf.
std::vector<LearnerSpec> default_roster();

/// Per-instance training weights (empty span = uniform).
using WeightVector = std::vector<double>;

/// A trained hypothesis. Immutable after training and safe to share
/// between threads.
class Model {
 public:
  virtual ~Model() = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const LearnerSpec& spec() const noexcept { return spec_; }
  /// Weighted class frequencies of the training data; sums to 1.
  const std::vector<double>& priors() const noexcept { return priors_; }
  std::size_t num_classes() const noexcept { return priors_.size(); }
  std::size_t num_features() const noexcept { return num_features_; }

  /// Predicted label. Throws ArgumentError on an arity mismatch.
  ClassIndex predict(const Instance& x) const;
  /// Normalised class-probability estimate (sums to 1).
  std::vector<double> distribution(const Instance& x) const;
  /// Confidence in [0, 1] that `y` is the label of `x`.
  double classifier_score(const Instance& x, ClassIndex y) const;

 protected:
  Model(LearnerSpec spec, std::vector<double> priors, std::size_t num_features)
      : spec_(std::move(spec)), priors_(std::move(priors)), num_features_(num_features) {}

  virtual std::vector<double> distribution_impl(const Instance& x) const = 0;
  virtual ClassIndex predict_impl(const Instance& x) const;
  virtual double score_impl(const Instance& x, ClassIndex y) const;

 private:
  void check(const Instance& x) const;

  LearnerSpec spec_;
  std::vector<double> priors_;
  std::size_t num_features_;
};

using ModelPtr = std::shared_ptr<const Model>;

/// Trains `spec` on `train`. Weights are optional; when given they must be
/// non-negative with at least one positive entry. Zero-weight instances
/// are treated as absent, and the remaining weights are rescaled to mean 1
/// before the learner sees them, so every learner is invariant to a
/// positive rescaling of the weight vector.
ModelPtr train(const LearnerSpec& spec, const Dataset& train, std::span<const double> weights = {},
               std::uint64_t seed = 0);

/// What a learner implementation receives from train().
struct TrainingData {
  const Dataset& data;          ///< positive-weight rows only
  std::vector<double> weights;  ///< one per row, all > 0, mean 1
  std::vector<double> priors;   ///< weighted class frequencies
};

using TrainFn = std::function<ModelPtr(const LearnerSpec&, const TrainingData&, std::uint64_t seed)>;

struct LearnerKindInfo {
  std::string kind;
  std::vector<std::string> aliases;
  std::map<std::string, double> defaults;
  TrainFn train;
};

/// Adds (or replaces) a learner kind. Built-in kinds are always present.
void register_learner(LearnerKindInfo info);
std::vector<std::string> registered_kinds();

/// Argmax; ties (within 1e-12 relative) go to the higher prior, then the
/// lower class index.
ClassIndex argmax_with_ties(std::span<const double> scores, std::span<const double> priors);

}  // namespace nicd
