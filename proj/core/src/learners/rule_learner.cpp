#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "feature_space.hpp"
#include "learners/builtin.hpp"
#include "nicd/random.hpp"

namespace nicd::learners {
namespace {

struct Condition {
  enum class Op { equal, at_most, at_least };
  std::size_t feature = 0;
  Op op = Op::equal;
  double value = 0.0;

  bool holds(const double* row) const {
    const double v = row[feature];
    switch (op) {
      case Op::equal: return v == value;
      case Op::at_most: return v <= value;
      case Op::at_least: return v >= value;
    }
    return false;
  }
};

struct Rule {
  std::vector<Condition> conditions;
  ClassIndex label = 0;
  std::vector<double> class_weight;

  bool covers(const double* row) const {
    return std::all_of(conditions.begin(), conditions.end(), [&](const Condition& c) { return c.holds(row); });
  }
};

// Ordered rule list in the style of RIPPER: classes from rarest to most
// frequent, each learned by FOIL-gain growing on two thirds of the data
// and reduced-error pruning of trailing conditions on the rest. The
// global optimisation passes are not performed.
class RuleLearner {
 public:
  RuleLearner(const FeatureSpace& space, const std::vector<double>& rows, const std::vector<ClassIndex>& labels,
              const std::vector<double>& weights, std::size_t num_classes)
      : space_(space), rows_(rows), labels_(labels), weights_(weights), nf_(space.arity()), nc_(num_classes) {}

  std::vector<Rule> learn(std::size_t max_rules, double min_cover, SplitMix64& rng, ClassIndex& default_class) {
    std::vector<double> freq(nc_, 0.0);
    for (std::size_t i = 0; i < labels_.size(); ++i) freq[labels_[i]] += weights_[i];
    std::vector<ClassIndex> order(nc_);
    std::iota(order.begin(), order.end(), ClassIndex{0});
    std::stable_sort(order.begin(), order.end(), [&](ClassIndex a, ClassIndex b) { return freq[a] < freq[b]; });
    default_class = order.back();

    std::vector<std::size_t> remaining(labels_.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    std::vector<Rule> rules;
    for (std::size_t ci = 0; ci + 1 < order.size() && rules.size() < max_rules; ++ci) {
      const ClassIndex target = order[ci];
      while (rules.size() < max_rules) {
        double pos_weight = 0.0;
        for (const auto i : remaining) pos_weight += labels_[i] == target ? weights_[i] : 0.0;
        if (pos_weight < min_cover) break;

        std::vector<std::size_t> pos, neg;
        for (const auto i : remaining) (labels_[i] == target ? pos : neg).push_back(i);
        rng.shuffle(pos);
        rng.shuffle(neg);
        std::vector<std::size_t> grow_set, prune_set;
        auto deal = [&](const std::vector<std::size_t>& items) {
          const std::size_t cut = (2 * items.size() + 2) / 3;
          grow_set.insert(grow_set.end(), items.begin(), items.begin() + static_cast<std::ptrdiff_t>(cut));
          prune_set.insert(prune_set.end(), items.begin() + static_cast<std::ptrdiff_t>(cut), items.end());
        };
        deal(pos);
        deal(neg);

        Rule rule = grow(target, grow_set);
        if (rule.conditions.empty()) break;
        if (!prune_set.empty()) prune(rule, prune_set);
        const auto& check = prune_set.empty() ? grow_set : prune_set;
        double p = 0.0, n = 0.0;
        for (const auto i : check) {
          if (!rule.covers(row(i))) continue;
          (labels_[i] == target ? p : n) += weights_[i];
        }
        if (p + n <= 0 || n / (p + n) > 0.5) break;

        double covered_pos = 0.0;
        std::vector<std::size_t> rest;
        for (const auto i : remaining) {
          if (rule.covers(row(i))) {
            covered_pos += labels_[i] == target ? weights_[i] : 0.0;
          } else {
            rest.push_back(i);
          }
        }
        if (covered_pos < min_cover) break;
        rules.push_back(std::move(rule));
        remaining = std::move(rest);
      }
    }
    // The default rule predicts the majority of whatever is left uncovered.
    if (!remaining.empty()) {
      std::vector<double> left(nc_, 0.0);
      for (const auto i : remaining) left[labels_[i]] += weights_[i];
      default_class = static_cast<ClassIndex>(std::max_element(left.begin(), left.end()) - left.begin());
    }
    return rules;
  }

 private:
  const double* row(std::size_t i) const { return rows_.data() + i * nf_; }

  static double foil_gain(double p0, double n0, double p1, double n1) {
    if (p1 <= 0) return -std::numeric_limits<double>::infinity();
    return p1 * (std::log2(p1 / (p1 + n1)) - std::log2(p0 / (p0 + n0)));
  }

  Rule grow(ClassIndex target, std::vector<std::size_t> covered) const {
    Rule rule;
    rule.label = target;
    auto tally = [&](const std::vector<std::size_t>& set, double& p, double& n) {
      p = n = 0.0;
      for (const auto i : set) (labels_[i] == target ? p : n) += weights_[i];
    };
    double p0, n0;
    tally(covered, p0, n0);
    while (n0 > 0 && p0 > 0 && rule.conditions.size() < 32) {
      Condition best;
      double best_gain = 1e-12;
      bool found = false;
      for (std::size_t f = 0; f < nf_; ++f) {
        if (space_.is_numeric(f)) {
          std::vector<std::size_t> sorted = covered;
          std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            const double va = row(a)[f], vb = row(b)[f];
            return va < vb || (va == vb && a < b);
          });
          double pl = 0.0, nl = 0.0;
          for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
            const auto i = sorted[k];
            (labels_[i] == target ? pl : nl) += weights_[i];
            const double v = row(i)[f], next = row(sorted[k + 1])[f];
            if (!(v < next)) continue;
            const double threshold = v + (next - v) / 2;
            if (const double g = foil_gain(p0, n0, pl, nl); g > best_gain) {
              best_gain = g;
              best = {f, Condition::Op::at_most, threshold};
              found = true;
            }
            if (const double g = foil_gain(p0, n0, p0 - pl, n0 - nl); g > best_gain) {
              best_gain = g;
              best = {f, Condition::Op::at_least, threshold};
              found = true;
            }
          }
        } else {
          const std::size_t slots = space_.category_slots(f);
          std::vector<double> pv(slots, 0.0), nv(slots, 0.0);
          for (const auto i : covered) {
            const auto v = static_cast<std::size_t>(row(i)[f]);
            (labels_[i] == target ? pv : nv)[v] += weights_[i];
          }
          for (std::size_t v = 0; v < slots; ++v) {
            if (const double g = foil_gain(p0, n0, pv[v], nv[v]); g > best_gain) {
              best_gain = g;
              best = {f, Condition::Op::equal, static_cast<double>(v)};
              found = true;
            }
          }
        }
      }
      if (!found) break;
      rule.conditions.push_back(best);
      std::vector<std::size_t> next;
      for (const auto i : covered) {
        if (best.holds(row(i))) next.push_back(i);
      }
      covered = std::move(next);
      tally(covered, p0, n0);
    }
    return rule;
  }

  // Keeps the prefix maximising (p - n) / (p + n) on the prune set.
  void prune(Rule& rule, const std::vector<std::size_t>& prune_set) const {
    std::size_t best_len = rule.conditions.size();
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t len = 1; len <= rule.conditions.size(); ++len) {
      double p = 0.0, n = 0.0;
      for (const auto i : prune_set) {
        bool ok = true;
        for (std::size_t c = 0; c < len && ok; ++c) ok = rule.conditions[c].holds(row(i));
        if (ok) (labels_[i] == rule.label ? p : n) += weights_[i];
      }
      const double value = p + n > 0 ? (p - n) / (p + n) : -1.0;
      if (value > best_value + 1e-12) {
        best_value = value;
        best_len = len;
      }
    }
    rule.conditions.resize(best_len);
  }

  const FeatureSpace& space_;
  const std::vector<double>& rows_;
  const std::vector<ClassIndex>& labels_;
  const std::vector<double>& weights_;
  std::size_t nf_, nc_;
};

class RuleModel final : public Model {
 public:
  RuleModel(const LearnerSpec& spec, const TrainingData& td, std::uint64_t seed)
      : Model(spec, td.priors, td.data.num_features()), space_(td.data, td.weights) {
    const auto rows = space_.impute_all(td.data);
    const auto labels = td.data.labels();
    SplitMix64 rng(seed);
    RuleLearner learner(space_, rows, labels, td.weights, td.data.num_classes());
    rules_ = learner.learn(static_cast<std::size_t>(spec.param("maxrules")), spec.param("mincover"), rng,
                           default_class_);
    // Coverage statistics in decision-list order over the full training set.
    default_weight_.assign(num_classes(), 0.0);
    for (auto& r : rules_) r.class_weight.assign(num_classes(), 0.0);
    const std::size_t nf = space_.arity();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const double* row = rows.data() + i * nf;
      auto* slot = &default_weight_;
      for (auto& r : rules_) {
        if (r.covers(row)) {
          slot = &r.class_weight;
          break;
        }
      }
      (*slot)[labels[i]] += td.weights[i];
    }
  }

  std::size_t rule_count() const noexcept { return rules_.size(); }

 protected:
  std::vector<double> distribution_impl(const Instance& x) const override {
    const auto row = space_.impute(x.values);
    return normalised(fired(row.data()).second);
  }

  ClassIndex predict_impl(const Instance& x) const override {
    const auto row = space_.impute(x.values);
    return fired(row.data()).first;
  }

 private:
  std::pair<ClassIndex, const std::vector<double>&> fired(const double* row) const {
    for (const auto& r : rules_) {
      if (r.covers(row)) return {r.label, r.class_weight};
    }
    return {default_class_, default_weight_};
  }

  std::vector<double> normalised(const std::vector<double>& counts) const {
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    if (!(total > 0)) return priors();
    std::vector<double> out = counts;
    for (auto& v : out) v /= total;
    return out;
  }

  FeatureSpace space_;
  std::vector<Rule> rules_;
  ClassIndex default_class_ = 0;
  std::vector<double> default_weight_;
};

}  // namespace

ModelPtr train_rule_learner(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed) {
  return std::make_shared<RuleModel>(spec, data, seed);
}

}  // namespace nicd::learners
