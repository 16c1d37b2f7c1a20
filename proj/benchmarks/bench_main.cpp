#include <benchmark/benchmark.h>

#include <filesystem>

#include "voytop/corpus.hpp"
#include "voytop/factor.hpp"
#include "voytop/lda.hpp"
#include "voytop/linalg.hpp"
#include "voytop/mca.hpp"
#include "voytop/project.hpp"
#include "voytop/rng.hpp"
#include "voytop/vectorize.hpp"

using namespace voytop;

namespace {

std::filesystem::path data_dir() { return std::filesystem::path(VOYTOP_DATA_DIR); }

struct CorpusFixture {
  std::vector<LocusRecord> records;
  std::vector<Document> docs;
  CountMatrix counts;
  WeightMatrix weights;

  CorpusFixture() {
    TokenizerRules rules;
    records = parse_transcription_file(data_dir() / "reference_transcription.evt", rules);
    auto all = segment_documents(records, rules, SegmentationMode::page);
    auto meta = load_metadata(data_dir() / "reference_metadata.csv");
    docs = apply_exclusions(all, meta, ExclusionPolicy::page_analysis);
    auto vocab = build_vocabulary(docs, 1);
    counts = bow_matrix(docs, vocab);
    weights = tfidf_transform(counts);
  }
};

const CorpusFixture& fixture() {
  static CorpusFixture f;
  return f;
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_double();
  return m;
}

void BM_Tokenize(benchmark::State& state) {
  TokenizerRules rules;
  const auto& records = fixture().records;
  for (auto _ : state) {
    std::size_t tokens = 0;
    for (const auto& r : records) tokens += tokenize_locus(r.raw_text, rules).size();
    benchmark::DoNotOptimize(tokens);
  }
}
BENCHMARK(BM_Tokenize);

void BM_TfIdf(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    auto w = tfidf_transform(f.counts);
    benchmark::DoNotOptimize(w.weights.sum());
  }
}
BENCHMARK(BM_TfIdf);

void BM_TruncatedSvd(benchmark::State& state) {
  const auto& f = fixture();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto svd = linalg::truncated_svd(f.weights.weights, k);
    benchmark::DoNotOptimize(svd.S.sum());
  }
}
BENCHMARK(BM_TruncatedSvd)->Arg(2)->Arg(6);

void BM_NmfFit(benchmark::State& state) {
  const auto& f = fixture();
  const int k = static_cast<int>(state.range(0));
  NmfOptions opts;
  opts.seed = 1;
  for (auto _ : state) {
    auto model = nmf_fit(f.weights, k, opts);
    benchmark::DoNotOptimize(model.doc_topic.sum());
  }
}
BENCHMARK(BM_NmfFit)->Arg(2)->Arg(6);

void BM_LdaSweeps(benchmark::State& state) {
  const auto& f = fixture();
  LdaConfig cfg;
  cfg.iterations = static_cast<int>(state.range(0));
  cfg.burn_in = cfg.iterations / 2;
  cfg.sample_every = 10;
  cfg.seed = 1;
  for (auto _ : state) {
    auto model = lda_fit(f.counts, cfg);
    benchmark::DoNotOptimize(model.doc_topic.sum());
  }
}
BENCHMARK(BM_LdaSweeps)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_McaFit(benchmark::State& state) {
  SplitMix64 rng(5);
  CategoryTable table;
  table.variables = {"topic", "hand", "language", "subject"};
  const int levels[4] = {6, 5, 2, 7};
  for (int r = 0; r < 200; ++r) {
    table.row_ids.push_back("r" + std::to_string(r));
    std::vector<std::string> row;
    for (int v = 0; v < 4; ++v)
      row.push_back("c" + std::to_string(rng.next_below(
                              static_cast<std::uint64_t>(levels[v]))));
    table.values.push_back(std::move(row));
  }
  int r = 0;
  for (int v = 0; v < 4; ++v)
    for (int c = 0; c < levels[v]; ++c) table.values[r++ % 200][v] = "c" + std::to_string(c);
  auto ind = build_indicator(table);
  for (auto _ : state) {
    auto model = mca_fit(ind, 2);
    benchmark::DoNotOptimize(model.total_inertia);
  }
}
BENCHMARK(BM_McaFit);

void BM_TsneIteration(benchmark::State& state) {
  auto x = random_matrix(200, 6, 9);
  TsneOptions opts;
  opts.iters = 50;
  opts.exaggeration_iters = 25;
  opts.momentum_switch_iter = 25;
  opts.seed = 1;
  for (auto _ : state) {
    auto p = tsne_project(x, 2, opts);
    benchmark::DoNotOptimize(p.kl_final);
  }
  state.SetItemsProcessed(state.iterations() * opts.iters);
}
BENCHMARK(BM_TsneIteration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
