#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nicd/cross_validation.hpp"

namespace nicd {

/// Classifier output difference: the fraction of instances on which two
/// prediction records disagree (both-wrong-but-different counts as a
/// disagreement). Throws ArgumentError on a length or dataset mismatch.
double cod(const PredictionRecord& a, const PredictionRecord& b);

/// Symmetric learner-distance matrix with zero diagonal, entries in [0, 1].
struct CodMatrix {
  std::vector<LearnerSpec> learners;
  std::vector<std::string> corpus;  ///< dataset names the entries average over
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  ///< row-major, learners.size()^2

  std::size_t size() const noexcept { return learners.size(); }
  double at(std::size_t i, std::size_t j) const { return values.at(i * learners.size() + j); }
};

/// Out-of-fold predictions for every (learner, dataset) pair.
struct CorpusPredictions {
  std::vector<LearnerSpec> learners;
  std::vector<std::string> corpus;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  /// [learner][dataset]
  std::vector<std::vector<PredictionRecord>> records;
  /// [learner][dataset] out-of-fold accuracy
  std::vector<std::vector<double>> accuracy;
};

/// Cross-validates every learner on every dataset. Dataset d uses fold seed
/// derive_seed(seed, 0, name(d)), so results do not depend on corpus order.
/// Cells run on up to `jobs` threads.
CorpusPredictions collect_predictions(std::span<const LearnerSpec> registry, std::span<const Dataset> corpus,
                                      std::size_t folds, std::uint64_t seed, std::size_t jobs = 1);

/// Entry (i, j) is the mean over datasets of cod(record_i, record_j).
CodMatrix cod_matrix(const CorpusPredictions& predictions);
CodMatrix cod_matrix(std::span<const LearnerSpec> registry, std::span<const Dataset> corpus, std::size_t folds,
                     std::uint64_t seed, std::size_t jobs = 1);

/// Mean out-of-fold accuracy of each learner over the corpus.
std::vector<double> mean_accuracy(const CorpusPredictions& predictions);

enum class Linkage { single, complete, average };
Linkage parse_linkage(std::string_view text);
std::string_view to_string(Linkage linkage);

/// One agglomeration step. Cluster ids follow the SciPy convention:
/// leaves are 0..n-1 and merge k creates cluster n+k. `a` is the cluster
/// whose smallest leaf index is lower.
struct Merge {
  std::size_t a = 0;
  std::size_t b = 0;
  double height = 0.0;
  std::size_t size = 0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::vector<std::string> leaves;
  Linkage linkage = Linkage::average;
  std::vector<Merge> merges;  ///< non-decreasing heights, leaves.size() - 1 entries
};

/// Bottom-up hierarchical clustering of an n x n distance matrix. At each
/// step the closest pair under `linkage` merges; exact distance ties go to
/// the pair with the lexicographically smallest (min leaf, min leaf).
/// Average linkage keeps exact pairwise sums, so results do not depend on
/// merge history through rounding.
std::vector<Merge> agglomerate(std::span<const double> distances, std::size_t n, Linkage linkage);
Dendrogram agglomerative_cluster(const CodMatrix& matrix, Linkage linkage = Linkage::average);

/// Clusters as sorted leaf-index lists, ordered by smallest member.
using Partition = std::vector<std::vector<std::size_t>>;

/// Applies only the merges with height <= `height`.
Partition cut_dendrogram(const Dendrogram& dendrogram, double height);
/// Applies the first n - k merges, giving k clusters (k clamped to [1, n]).
Partition cut_to_clusters(const Dendrogram& dendrogram, std::size_t clusters);

/// The member with the highest criterion from each cluster (ties go to the
/// lower registry index), in cluster order.
std::vector<std::size_t> select_representatives(const Partition& partition, std::span<const double> criterion);

/// Text formats.
///
/// Matrix:
///   # nicd cod-matrix v1
///   # corpus: <name>,<name>,...
///   # folds: <k> seed: <s>
///   learner<TAB><label 0><TAB><label 1>...
///   <label i><TAB><value>...        (values with 6 decimals)
///
/// Dendrogram:
///   # nicd dendrogram v1 linkage=<linkage>
///   leaf<TAB><id><TAB><label>        (one line per leaf)
///   merge<TAB><a><TAB><b><TAB><height><TAB><size>
///
/// Merge list (SciPy linkage-matrix CSV): `a,b,height,size` per line.
void write_cod_matrix(std::ostream& out, const CodMatrix& matrix);
void write_dendrogram(std::ostream& out, const Dendrogram& dendrogram);
void write_merge_list(std::ostream& out, const Dendrogram& dendrogram);

}  // namespace nicd
