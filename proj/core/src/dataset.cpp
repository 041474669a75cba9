#include "nicd/dataset.hpp"

#include <set>

#include "nicd/error.hpp"

namespace nicd {

Dataset::Dataset(std::string name, std::vector<FeatureDescriptor> features,
                 std::vector<std::string> classes, std::vector<Instance> instances)
    : name_(std::move(name)),
      features_(std::move(features)),
      classes_(std::move(classes)),
      instances_(std::move(instances)) {
  validate();
}

void Dataset::validate() const {
  if (classes_.empty()) throw ArgumentError("dataset '" + name_ + "': class list is empty");
  if (std::set<std::string>(classes_.begin(), classes_.end()).size() != classes_.size()) {
    throw ArgumentError("dataset '" + name_ + "': duplicate class labels");
  }
  for (const auto& f : features_) {
    if (f.is_numeric() && !f.categories.empty()) {
      throw ArgumentError("feature '" + f.name + "': numeric feature lists categories");
    }
    if (!f.is_numeric() && f.categories.empty()) {
      throw ArgumentError("feature '" + f.name + "': categorical feature has no categories");
    }
  }
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const auto& inst = instances_[i];
    if (inst.values.size() != features_.size()) {
      throw ArgumentError("dataset '" + name_ + "': instance " + std::to_string(i) + " has " +
                          std::to_string(inst.values.size()) + " values, expected " +
                          std::to_string(features_.size()));
    }
    if (inst.label >= classes_.size()) {
      throw ArgumentError("dataset '" + name_ + "': instance " + std::to_string(i) +
                          " has an out-of-range label");
    }
    for (std::size_t f = 0; f < features_.size(); ++f) {
      const double v = inst.values[f];
      if (is_missing(v) || features_[f].is_numeric()) continue;
      if (v < 0 || v != std::floor(v) ||
          v >= static_cast<double>(features_[f].categories.size())) {
        throw ArgumentError("dataset '" + name_ + "': instance " + std::to_string(i) +
                            " has an invalid category for '" + features_[f].name + "'");
      }
    }
  }
}

std::vector<ClassIndex> Dataset::labels() const {
  std::vector<ClassIndex> out;
  out.reserve(instances_.size());
  for (const auto& inst : instances_) out.push_back(inst.label);
  return out;
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(classes_.size(), 0);
  for (const auto& inst : instances_) ++counts[inst.label];
  return counts;
}

std::vector<std::vector<std::size_t>> Dataset::indices_by_class() const {
  std::vector<std::vector<std::size_t>> groups(classes_.size());
  for (std::size_t i = 0; i < instances_.size(); ++i) groups[instances_[i].label].push_back(i);
  return groups;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<Instance> picked;
  picked.reserve(rows.size());
  for (const auto r : rows) {
    if (r >= instances_.size()) throw ArgumentError("subset: row index out of range");
    picked.push_back(instances_[r]);
  }
  Dataset out;
  out.name_ = name_;
  out.features_ = features_;
  out.classes_ = classes_;
  out.instances_ = std::move(picked);
  return out;
}

Dataset Dataset::with_instances(std::vector<Instance> rows) const {
  return Dataset(name_, features_, classes_, std::move(rows));
}

Dataset Dataset::renamed(std::string name) const {
  Dataset out = *this;
  out.name_ = std::move(name);
  return out;
}

}  // namespace nicd
