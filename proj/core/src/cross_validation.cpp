#include "nicd/cross_validation.hpp"

#include "nicd/error.hpp"
#include "nicd/random.hpp"
#include "nicd/sampling.hpp"

namespace nicd {

OutOfFold cross_validate(const LearnerSpec& spec, const Dataset& ds, std::size_t folds, std::uint64_t seed) {
  const auto assignment = stratified_folds(ds.labels(), ds.num_classes(), folds, seed);
  OutOfFold out;
  out.record = {spec, ds.name(), std::vector<ClassIndex>(ds.size(), 0)};
  out.label_scores.assign(ds.size(), 0.0);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < ds.size(); ++i) (assignment[i] == f ? test_rows : train_rows).push_back(i);
    if (test_rows.empty()) continue;
    ModelPtr model;
    try {
      model = train(spec, ds.subset(train_rows), {}, mix_seed(seed, f));
    } catch (const Error& e) {
      throw Error("training '" + spec.label() + "' on '" + ds.name() + "' (fold " + std::to_string(f) +
                  ") failed: " + e.what());
    }
    for (const auto i : test_rows) {
      out.record.predictions[i] = model->predict(ds[i]);
      out.label_scores[i] = model->classifier_score(ds[i], ds[i].label);
    }
  }
  return out;
}

PredictionRecord cross_val_predictions(const LearnerSpec& spec, const Dataset& ds, std::size_t folds,
                                       std::uint64_t seed) {
  return cross_validate(spec, ds, folds, seed).record;
}

double record_accuracy(const PredictionRecord& record, const Dataset& ds) {
  if (record.predictions.size() != ds.size()) throw ArgumentError("record_accuracy: length mismatch");
  if (ds.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) hits += record.predictions[i] == ds[i].label;
  return static_cast<double>(hits) / static_cast<double>(ds.size());
}

}  // namespace nicd
