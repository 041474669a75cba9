#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "nicd/cross_validation.hpp"
#include "nicd/dataset_io.hpp"
#include "nicd/diversity.hpp"
#include "nicd/noise_id.hpp"
#include "nicd/random.hpp"
#include "nicd/stats.hpp"

using namespace nicd;

namespace {

const Dataset& waveform() {
  static const Dataset ds = load_dataset(std::string(NICD_DATA_DIR) + "/waveform.csv");
  return ds;
}

std::vector<double> random_distances(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = rng.uniform();
  return d;
}

void BM_Agglomerate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = random_distances(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(agglomerate(d, n, Linkage::average));
}
BENCHMARK(BM_Agglomerate)->Arg(8)->Arg(32)->Arg(128);

void BM_CrossValidate(benchmark::State& state, const char* token) {
  const auto spec = LearnerSpec::parse(token);
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate(spec, waveform(), 10, 1));
}
BENCHMARK_CAPTURE(BM_CrossValidate, knn, "knn:k=5")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CrossValidate, nb, "nb")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CrossValidate, dt, "dt")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CrossValidate, rf, "rf")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CrossValidate, mlp, "mlp")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CrossValidate, ripper, "ripper")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CrossValidate, lwl, "lwl")->Unit(benchmark::kMillisecond);

void BM_Renn(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(renn_filter(waveform(), 5));
}
BENCHMARK(BM_Renn)->Unit(benchmark::kMillisecond);

void BM_WilcoxonExact(benchmark::State& state) {
  SplitMix64 rng(2);
  std::vector<double> a(static_cast<std::size_t>(state.range(0))), b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.uniform();
    b[i] = rng.uniform();
  }
  for (auto _ : state) benchmark::DoNotOptimize(wilcoxon_signed_rank(a, b, WilcoxonMethod::exact));
}
BENCHMARK(BM_WilcoxonExact)->Arg(12)->Arg(24)->Arg(54);

}  // namespace

BENCHMARK_MAIN();
