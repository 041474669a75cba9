#include "nicd/diversity.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "nicd/error.hpp"
#include "nicd/parallel.hpp"
#include "nicd/random.hpp"

namespace nicd {

double cod(const PredictionRecord& a, const PredictionRecord& b) {
  if (a.predictions.size() != b.predictions.size()) {
    throw ArgumentError("cod: records have different lengths (" + std::to_string(a.predictions.size()) + " vs " +
                        std::to_string(b.predictions.size()) + ")");
  }
  if (a.dataset != b.dataset) throw ArgumentError("cod: records come from different datasets");
  if (a.predictions.empty()) return 0.0;
  std::size_t differ = 0;
  for (std::size_t i = 0; i < a.predictions.size(); ++i) differ += a.predictions[i] != b.predictions[i];
  return static_cast<double>(differ) / static_cast<double>(a.predictions.size());
}

CorpusPredictions collect_predictions(std::span<const LearnerSpec> registry, std::span<const Dataset> corpus,
                                      std::size_t folds, std::uint64_t seed, std::size_t jobs) {
  if (registry.size() < 2) throw ArgumentError("cod_matrix: need at least two learners");
  if (corpus.empty()) throw ArgumentError("cod_matrix: need at least one dataset");
  CorpusPredictions out;
  out.learners.assign(registry.begin(), registry.end());
  out.folds = folds;
  out.seed = seed;
  for (const auto& ds : corpus) out.corpus.push_back(ds.name());
  const std::size_t nl = registry.size(), nd = corpus.size();
  out.records.assign(nl, std::vector<PredictionRecord>(nd));
  out.accuracy.assign(nl, std::vector<double>(nd, 0.0));
  parallel_for(nl * nd, jobs, [&](std::size_t cell) {
    const std::size_t l = cell / nd, d = cell % nd;
    const auto fold_seed = derive_seed(seed, 0, corpus[d].name());
    out.records[l][d] = cross_val_predictions(registry[l], corpus[d], folds, fold_seed);
    out.accuracy[l][d] = record_accuracy(out.records[l][d], corpus[d]);
  });
  return out;
}

CodMatrix cod_matrix(const CorpusPredictions& predictions) {
  const std::size_t n = predictions.learners.size();
  CodMatrix m{predictions.learners, predictions.corpus, predictions.folds, predictions.seed,
              std::vector<double>(n * n, 0.0)};
  const std::size_t nd = predictions.corpus.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<double> per_dataset(nd);
      for (std::size_t d = 0; d < nd; ++d) per_dataset[d] = cod(predictions.records[i][d], predictions.records[j][d]);
      // Summing in sorted order makes the mean independent of corpus order.
      std::sort(per_dataset.begin(), per_dataset.end());
      const double mean = std::accumulate(per_dataset.begin(), per_dataset.end(), 0.0) / static_cast<double>(nd);
      m.values[i * n + j] = m.values[j * n + i] = mean;
    }
  }
  return m;
}

CodMatrix cod_matrix(std::span<const LearnerSpec> registry, std::span<const Dataset> corpus, std::size_t folds,
                     std::uint64_t seed, std::size_t jobs) {
  return cod_matrix(collect_predictions(registry, corpus, folds, seed, jobs));
}

std::vector<double> mean_accuracy(const CorpusPredictions& predictions) {
  std::vector<double> out;
  for (auto acc : predictions.accuracy) {
    std::sort(acc.begin(), acc.end());
    out.push_back(acc.empty() ? 0.0 : std::accumulate(acc.begin(), acc.end(), 0.0) / static_cast<double>(acc.size()));
  }
  return out;
}

Linkage parse_linkage(std::string_view text) {
  if (text == "single") return Linkage::single;
  if (text == "complete") return Linkage::complete;
  if (text == "average") return Linkage::average;
  throw ArgumentError("unknown linkage '" + std::string(text) + "' (single|complete|average)");
}

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
  }
  return "?";
}

std::vector<Merge> agglomerate(std::span<const double> distances, std::size_t n, Linkage linkage) {
  if (distances.size() != n * n) throw ArgumentError("agglomerate: matrix size mismatch");
  struct Cluster {
    std::size_t id;
    std::size_t min_leaf;
    std::size_t size;
    bool alive;
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i, i, 1, true});
  // `link` holds min / max / pairwise sum between live clusters (slot = leaf
  // position of the cluster's first member).
  std::vector<double> link(distances.begin(), distances.end());
  auto value = [&](std::size_t i, std::size_t j) {
    const double v = link[i * n + j];
    return linkage == Linkage::average ? v / static_cast<double>(clusters[i].size * clusters[j].size) : v;
  };

  std::vector<Merge> merges;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bi = n, bj = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!clusters[i].alive) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!clusters[j].alive) continue;
        const double d = value(i, j);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
        // Slots are ordered by min leaf, so the first pair found at a given
        // distance is the lexicographically smallest.
      }
    }
    auto& a = clusters[bi];
    auto& b = clusters[bj];
    merges.push_back({a.id, b.id, best, a.size + b.size});
    for (std::size_t k = 0; k < n; ++k) {
      if (!clusters[k].alive || k == bi || k == bj) continue;
      double merged;
      switch (linkage) {
        case Linkage::single: merged = std::min(link[bi * n + k], link[bj * n + k]); break;
        case Linkage::complete: merged = std::max(link[bi * n + k], link[bj * n + k]); break;
        default: merged = link[bi * n + k] + link[bj * n + k]; break;
      }
      link[bi * n + k] = link[k * n + bi] = merged;
    }
    a.id = n + step;
    a.size += b.size;
    b.alive = false;
  }
  return merges;
}

Dendrogram agglomerative_cluster(const CodMatrix& matrix, Linkage linkage) {
  Dendrogram d;
  for (const auto& l : matrix.learners) d.leaves.push_back(l.label());
  d.linkage = linkage;
  d.merges = agglomerate(matrix.values, matrix.size(), linkage);
  return d;
}

namespace {

Partition partition_after(const Dendrogram& dendrogram, std::size_t merges_applied) {
  const std::size_t n = dendrogram.leaves.size();
  // members[id] for every cluster id created so far.
  std::vector<std::vector<std::size_t>> members(n + dendrogram.merges.size());
  std::vector<bool> alive(members.size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    alive[i] = true;
  }
  for (std::size_t k = 0; k < merges_applied; ++k) {
    const auto& m = dendrogram.merges[k];
    auto merged = members[m.a];
    merged.insert(merged.end(), members[m.b].begin(), members[m.b].end());
    std::sort(merged.begin(), merged.end());
    members[n + k] = std::move(merged);
    alive[m.a] = alive[m.b] = false;
    alive[n + k] = true;
  }
  Partition out;
  for (std::size_t id = 0; id < members.size(); ++id) {
    if (alive[id]) out.push_back(members[id]);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

}  // namespace

Partition cut_dendrogram(const Dendrogram& dendrogram, double height) {
  if (height < 0) throw ArgumentError("cut_dendrogram: height must be non-negative");
  std::size_t applied = 0;
  while (applied < dendrogram.merges.size() && dendrogram.merges[applied].height <= height) ++applied;
  return partition_after(dendrogram, applied);
}

Partition cut_to_clusters(const Dendrogram& dendrogram, std::size_t clusters) {
  const std::size_t n = dendrogram.leaves.size();
  clusters = std::clamp<std::size_t>(clusters, 1, std::max<std::size_t>(n, 1));
  return partition_after(dendrogram, n - clusters);
}

std::vector<std::size_t> select_representatives(const Partition& partition, std::span<const double> criterion) {
  std::vector<std::size_t> out;
  for (const auto& cluster : partition) {
    std::size_t best = cluster.front();
    for (const auto member : cluster) {
      if (member >= criterion.size()) throw ArgumentError("select_representatives: criterion does not cover learner");
      if (criterion[member] > criterion[best] || (criterion[member] == criterion[best] && member < best)) best = member;
    }
    out.push_back(best);
  }
  return out;
}

void write_cod_matrix(std::ostream& out, const CodMatrix& matrix) {
  out << "# nicd cod-matrix v1\n# corpus: ";
  for (std::size_t d = 0; d < matrix.corpus.size(); ++d) out << (d ? "," : "") << matrix.corpus[d];
  out << "\n# folds: " << matrix.folds << " seed: " << matrix.seed << "\nlearner";
  for (const auto& l : matrix.learners) out << '\t' << l.label();
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << matrix.learners[i].label();
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.6f", matrix.at(i, j));
      out << '\t' << buf;
    }
    out << '\n';
  }
}

void write_dendrogram(std::ostream& out, const Dendrogram& dendrogram) {
  out << "# nicd dendrogram v1 linkage=" << to_string(dendrogram.linkage) << '\n';
  for (std::size_t i = 0; i < dendrogram.leaves.size(); ++i) out << "leaf\t" << i << '\t' << dendrogram.leaves[i] << '\n';
  char buf[32];
  for (const auto& m : dendrogram.merges) {
    std::snprintf(buf, sizeof buf, "%.6f", m.height);
    out << "merge\t" << m.a << '\t' << m.b << '\t' << buf << '\t' << m.size << '\n';
  }
}

void write_merge_list(std::ostream& out, const Dendrogram& dendrogram) {
  char buf[32];
  for (const auto& m : dendrogram.merges) {
    std::snprintf(buf, sizeof buf, "%.10g", m.height);
    out << m.a << ',' << m.b << ',' << buf << ',' << m.size << '\n';
  }
}

}  // namespace nicd
