// Copyright 2026 The Framelens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "framelens/analytics.h"
#include "framelens/annotate.h"
#include "framelens/backend.h"
#include "framelens/corpus.h"
#include "framelens/evaluate.h"
#include "framelens/lexical.h"

namespace framelens {
namespace {

LabelSet RandomSet(std::mt19937_64 &rng) {
  LabelSet s;
  int n = 1 + static_cast<int>(rng() % 4);
  while (static_cast<int>(s.size()) < n) {
    s.Insert(FrameAt(static_cast<int>(rng() % (kNumFrames - 1))));
  }
  return s;
}

std::string RandomText(std::mt19937_64 &rng, int words) {
  static const std::vector<std::string> vocab{
      "police", "said", "the",    "former", "president", "economy", "border", "court",
      "vote",   "tax",  "health", "war",    "city",      "2024",    "new",    "report"};
  std::string out;
  for (int i = 0; i < words; ++i) {
    out += vocab[rng() % vocab.size()];
    out += i % 17 == 16 ? ". " : " ";
  }
  return out;
}

void BM_ScoreMultilabel(benchmark::State &state) {
  std::mt19937_64 rng(1);
  std::vector<Prediction> preds;
  std::vector<GoldSet> gold;
  for (int64_t i = 0; i < state.range(0); ++i) {
    std::string id = std::to_string(i);
    preds.push_back({id, RandomSet(rng)});
    gold.push_back({id, RandomSet(rng), GoldProvenance::kSingle});
  }
  for (auto _ : state) benchmark::DoNotOptimize(ScoreMultilabel(preds, gold));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScoreMultilabel)->Range(64, 16384);

void BM_Agreement(benchmark::State &state) {
  std::mt19937_64 rng(2);
  std::vector<ItemAnnotations> items;
  for (int64_t i = 0; i < state.range(0); ++i) {
    ItemAnnotations item{std::to_string(i), {}};
    for (int a = 0; a < 3; ++a) item.annotations.push_back({"a" + std::to_string(a), RandomSet(rng)});
    items.push_back(std::move(item));
  }
  for (auto _ : state) benchmark::DoNotOptimize(ComputeAgreement(items));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Agreement)->Range(64, 2048);

void BM_Pmi(benchmark::State &state) {
  std::mt19937_64 rng(3);
  std::vector<AnalysisRecord> recs;
  for (int64_t i = 0; i < state.range(0); ++i) {
    AnalysisRecord r;
    r.item_id = std::to_string(i);
    r.text_frames = RandomSet(rng);
    r.image_frames = RandomSet(rng);
    recs.push_back(std::move(r));
  }
  for (auto _ : state) benchmark::DoNotOptimize(ComputePmi(recs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Pmi)->Range(64, 16384);

void BM_ExtractBigrams(benchmark::State &state) {
  std::mt19937_64 rng(4);
  std::vector<std::string> texts;
  for (int i = 0; i < 100; ++i) texts.push_back(RandomText(rng, static_cast<int>(state.range(0))));
  const StopwordSet &stopwords = DefaultStopwords();
  for (auto _ : state) benchmark::DoNotOptimize(ExtractBigrams(texts, stopwords));
  state.SetBytesProcessed(state.iterations() * 100 * static_cast<int64_t>(texts[0].size()));
}
BENCHMARK(BM_ExtractBigrams)->Range(100, 3200);

void BM_FightinWords(benchmark::State &state) {
  BigramCounts c1, c2;
  std::mt19937_64 rng(5);
  for (int64_t i = 0; i < state.range(0); ++i) {
    Bigram b{"w" + std::to_string(i), "v" + std::to_string(i % 31)};
    c1.Add(b, 1 + static_cast<int64_t>(rng() % 20));
    c2.Add(b, 1 + static_cast<int64_t>(rng() % 20));
  }
  for (auto _ : state) benchmark::DoNotOptimize(FightinWords(c1, c2));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FightinWords)->Range(256, 65536);

void BM_ParseResponse(benchmark::State &state) {
  const AnnotationTask task{TaskKind::kGenericFrames, Modality::kText};
  const std::string clean = R"({"frame": ["Economic", "Crime and punishment"]})";
  const std::string messy =
      "Sure! Here is the answer:\n{'frame': [Economic, \"Policy prescription and evaluation\",]}\nThanks";
  const std::string &raw = state.range(0) ? messy : clean;
  for (auto _ : state) benchmark::DoNotOptimize(ParseResponse(raw, task, "x"));
}
BENCHMARK(BM_ParseResponse)->Arg(0)->Arg(1);

void BM_FilterCorpus(benchmark::State &state) {
  std::mt19937_64 rng(6);
  std::vector<Article> articles;
  std::vector<ImageRef> images;
  for (int64_t i = 0; i < state.range(0); ++i) {
    Article a;
    a.url = "https://x.com/" + std::to_string(i);
    a.id = ArticleId(a.url);
    a.word_count = 1 + static_cast<int64_t>(rng() % 2000);
    a.language = "en";
    images.push_back({a.id, a.url + ".png", static_cast<int64_t>(rng() % 200000), std::nullopt});
    articles.push_back(std::move(a));
  }
  for (auto _ : state) benchmark::DoNotOptimize(FilterCorpus(articles, images));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterCorpus)->Range(256, 65536);

void BM_MockBatch(benchmark::State &state) {
  std::vector<AnnotationItem> items;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 256; ++i) items.push_back({std::to_string(i), RandomText(rng, 300), {}});
  MockBackend backend(7);
  BatchOptions options;
  options.concurrency = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RunBatch(items, {TaskKind::kGenericFrames, Modality::kText}, backend, options));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(items.size()));
}
BENCHMARK(BM_MockBatch)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
}  // namespace framelens

BENCHMARK_MAIN();
