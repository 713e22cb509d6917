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

#ifndef FRAMELENS_ANALYTICS_H_
#define FRAMELENS_ANALYTICS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framelens/corpus.h"
#include "framelens/schema.h"

namespace framelens {

template <typename T>
using FrameArray = std::array<T, kNumFrames>;
template <typename T>
using FrameMatrix = std::array<std::array<T, kNumFrames>, kNumFrames>;

// nullopt scope means the whole corpus; otherwise records whose normalized
// topic equals the normalized scope.
using TopicScope = std::optional<std::string>;
std::string ScopeName(const TopicScope &scope);  // "global" or "topic:<t>"

struct FrameStats {
  Modality modality = Modality::kText;
  FrameArray<int64_t> counts{};
  int64_t n_articles = 0;
  double mean_labels_per_item = 0.0;

  int64_t TotalLabels() const;
  Json ToJson() const;
  // scope,modality,label,count,proportion
  std::string ToCsv(const std::string &scope = "global") const;
};

// Counts labels over records carrying frames for the modality. Throws
// Error("EmptyInput").
FrameStats ComputeFrameFrequencies(std::span<const AnalysisRecord> records,
                                   Modality modality, const TopicScope &scope = {});

// Dense ranks by descending count (rank 1 = most frequent, equal counts
// share a rank).
FrameArray<int> DenseRanks(const FrameArray<int64_t> &counts);

// rank_image(l) - rank_text(l); positive means more prominent in text.
FrameArray<int> RankDifference(const FrameStats &text, const FrameStats &image);
std::string RankDifferenceCsv(const FrameArray<int> &scores,
                              const std::string &scope = "global");

struct CooccurrenceMatrix {
  std::string scope = "global";
  int64_t n = 0;
  FrameMatrix<int64_t> joint{};  // [text label][image label]
  FrameArray<int64_t> text_marginal{};
  FrameArray<int64_t> image_marginal{};
  // log2(joint * n / (m_text * m_image)); nullopt where joint is 0.
  FrameMatrix<std::optional<double>> pmi{};

  Json ToJson() const;
  // scope,text_label,image_label,joint,pmi (empty pmi when masked)
  std::string ToCsv() const;
};

// Records lacking either frame set are ignored. Throws Error("EmptyInput").
CooccurrenceMatrix ComputePmi(std::span<const AnalysisRecord> records,
                              const TopicScope &scope = {});

struct CooccurrencePct {
  std::string topic;
  // [image label][text label] = joint(t, i) / sum_t' joint(t', i); a row
  // without mass is entirely nullopt.
  FrameMatrix<std::optional<double>> pct{};

  Json ToJson() const;
  std::string ToCsv() const;
};

// Throws Error("UnknownTopic") when no record matches the topic.
CooccurrencePct ComputeCooccurrencePct(std::span<const AnalysisRecord> records,
                                       const std::string &topic);

struct LeaningDistribution {
  std::string scope = "global";
  Modality modality = Modality::kText;
  std::array<FrameArray<int64_t>, kNumCombinedLeanings> counts{};
  // Proportions per combined leaning; nullopt when the class has no labels.
  std::array<std::optional<FrameArray<double>>, kNumCombinedLeanings> proportions{};

  Json ToJson() const;
  std::string ToCsv() const;
};

// Raw leanings are merged into left/center/right before normalizing.
// Records with unknown leaning are skipped. Throws Error("UnknownTopic").
LeaningDistribution ComputeLeaningDistribution(std::span<const AnalysisRecord> records,
                                               const TopicScope &scope,
                                               Modality modality);

// Trim, collapse whitespace, then capitalize each word and lowercase the
// rest: "humanitarian  CRISIS " -> "Humanitarian Crisis".
std::string NormalizeIssueFrame(std::string_view raw);

struct IssueFrameRow {
  std::string issue_frame;
  int64_t total = 0;
  std::array<int64_t, kNumCombinedLeanings> counts{};
  // counts divided by the number of scope articles of that leaning.
  std::array<double, kNumCombinedLeanings> normalized{};
};

struct IssueFrameTable {
  std::string scope = "global";
  int top_k = 10;
  std::array<int64_t, kNumCombinedLeanings> articles_per_leaning{};
  std::vector<IssueFrameRow> rows;  // by total desc, then name

  Json ToJson() const;
  std::string ToCsv() const;
};

IssueFrameTable ComputeIssueFrameTable(std::span<const AnalysisRecord> records,
                                       const TopicScope &scope, int top_k);

struct EntityDelta {
  std::string name;
  int64_t support = 0;
  double text_mean = 0.0;
  double image_mean = 0.0;
  double delta = 0.0;  // image_mean - text_mean
};

// Case-folded, whitespace-collapsed entity key.
std::string EntityKey(std::string_view name);

// Uses records whose text and image name the same entity (after EntityKey)
// with a scored sentiment on both sides. Entities with support below
// `min_support` are dropped. Sorted by entity key.
std::vector<EntityDelta> ComputeEntitySentimentDeltas(std::span<const AnalysisRecord> records,
                                                      int min_support = 1);
Json EntityDeltasToJson(const std::vector<EntityDelta> &deltas);
std::string EntityDeltasToCsv(const std::vector<EntityDelta> &deltas);

}  // namespace framelens

#endif  // FRAMELENS_ANALYTICS_H_
