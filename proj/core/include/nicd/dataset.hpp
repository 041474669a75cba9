#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace nicd {

enum class FeatureKind { numeric, categorical };

struct FeatureDescriptor {
  std::string name;
  FeatureKind kind = FeatureKind::numeric;
  /// Ordered value set; non-empty for categorical features, empty otherwise.
  std::vector<std::string> categories;

  static FeatureDescriptor numeric(std::string name) {
    return {std::move(name), FeatureKind::numeric, {}};
  }
  static FeatureDescriptor categorical(std::string name, std::vector<std::string> values) {
    return {std::move(name), FeatureKind::categorical, std::move(values)};
  }

  bool is_numeric() const noexcept { return kind == FeatureKind::numeric; }
  friend bool operator==(const FeatureDescriptor&, const FeatureDescriptor&) = default;
};

using ClassIndex = std::size_t;

/// Feature slots hold a numeric scalar or a category index stored as a
/// double. NaN marks a missing value.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) noexcept { return std::isnan(v); }

struct Instance {
  std::vector<double> values;
  ClassIndex label = 0;

  friend bool operator==(const Instance& a, const Instance& b) {
    if (a.label != b.label || a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      const double x = a.values[i], y = b.values[i];
      if (!(x == y || (is_missing(x) && is_missing(y)))) return false;
    }
    return true;
  }
};

/// An immutable labelled table. Construction validates every invariant:
/// one value slot per feature, category indices in range, labels in range,
/// and a non-empty, duplicate-free class list.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string name, std::vector<FeatureDescriptor> features,
          std::vector<std::string> classes, std::vector<Instance> instances);

  const std::string& name() const noexcept { return name_; }
  const std::vector<FeatureDescriptor>& features() const noexcept { return features_; }
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  const std::vector<Instance>& instances() const noexcept { return instances_; }

  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }
  std::size_t num_features() const noexcept { return features_.size(); }
  std::size_t num_classes() const noexcept { return classes_.size(); }
  const Instance& operator[](std::size_t i) const { return instances_[i]; }

  std::vector<ClassIndex> labels() const;
  std::vector<std::size_t> class_counts() const;
  /// Instance indices grouped by class, each group in dataset order.
  std::vector<std::vector<std::size_t>> indices_by_class() const;

  /// Same schema, the given rows in the given order.
  Dataset subset(std::span<const std::size_t> rows) const;
  /// Same schema, new rows (validated).
  Dataset with_instances(std::vector<Instance> rows) const;
  Dataset renamed(std::string name) const;

  bool same_schema(const Dataset& other) const noexcept {
    return features_ == other.features_ && classes_ == other.classes_;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  void validate() const;

  std::string name_;
  std::vector<FeatureDescriptor> features_;
  std::vector<std::string> classes_;
  std::vector<Instance> instances_;
};

}  // namespace nicd
