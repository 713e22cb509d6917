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

#ifndef FRAMELENS_EVALUATE_H_
#define FRAMELENS_EVALUATE_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "framelens/schema.h"

namespace framelens {

enum class GoldProvenance : uint8_t { kMfcTop3, kAnnotatorUnion, kSingle };
std::string_view GoldProvenanceName(GoldProvenance p);

struct GoldSet {
  std::string item_id;
  LabelSet labels;
  GoldProvenance provenance = GoldProvenance::kSingle;
};

Json GoldSetToJson(const GoldSet &g);
GoldSet GoldSetFromJson(const Json &j);

struct AnnotatorLabels {
  std::string annotator_id;
  LabelSet labels;
};

// All annotator label sets for one item.
struct ItemAnnotations {
  std::string item_id;
  std::vector<AnnotatorLabels> annotations;
};

// Groups {item_id, annotator_id, labels} rows by item, in first-seen order.
std::vector<ItemAnnotations> GroupAnnotations(std::span<const Json> rows);

// Keeps the three labels chosen by most annotators. Ties at the cut go to
// the label more frequent across the whole input, then to the
// lexicographically smaller canonical id. `none` is only kept when no annotator chose a substantive
// label. Throws Error("EmptyAnnotationList").
std::vector<GoldSet> BuildGoldMfc(std::span<const ItemAnnotations> items);

// Union of the annotator sets; {none} only when every annotator chose none.
std::vector<GoldSet> BuildGoldUnion(std::span<const ItemAnnotations> items);

struct Prediction {
  std::string item_id;
  LabelSet labels;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct LabelMetrics {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  Prf prf;
  int64_t support = 0;  // gold instances, tp + fn
};

// Harmonic mean, 0 when both inputs are 0.
double HarmonicMean(double p, double r);
// tp/(tp+fp) style ratio, 0 when the denominator is 0.
double SafeRatio(int64_t num, int64_t den);

struct JoinCounts {
  int64_t joined = 0;
  int64_t pred_only = 0;  // predictions without gold
  int64_t gold_only = 0;  // gold without predictions
};

struct EvalReport {
  int64_t n_items = 0;
  double nonzero_intersection_rate = 0.0;
  // Labels occurring in gold or predictions, canonical order.
  std::map<Frame, LabelMetrics> per_label;
  Prf micro;
  Prf macro;
  Prf weighted;
  Prf samples;
  JoinCounts join;

  Json ToJson() const;
  // label,precision,recall,f1-score,support with labels sorted by canonical
  // id, followed by the micro/macro/weighted/samples rows.
  std::string ToCsv() const;
};

// Joins on item_id; unmatched items are counted and excluded. Throws
// Error("NoOverlapItems") when nothing joins and Error("DuplicateItem") when
// an id repeats on one side.
EvalReport ScoreMultilabel(std::span<const Prediction> preds,
                           std::span<const GoldSet> gold);

// rows = missed gold labels, columns = wrongly predicted labels.
struct MismatchMatrix {
  std::array<std::array<int64_t, kNumFrames>, kNumFrames> counts{};
  JoinCounts join;

  int64_t at(Frame missed, Frame predicted) const {
    return counts[FrameIndex(missed)][FrameIndex(predicted)];
  }
  int64_t Total() const;
  Json ToJson() const;
  std::string ToCsv() const;
};

MismatchMatrix ComputeMismatch(std::span<const Prediction> preds,
                               std::span<const GoldSet> gold);

double Jaccard(LabelSet a, LabelSet b);  // 1 for two empty sets
double JaccardDistance(LabelSet a, LabelSet b);

struct AgreementReport {
  double alpha = 1.0;
  double mean_jaccard = 1.0;
  int64_t n_items = 0;  // items with at least two annotations
  int64_t n_annotators = 0;
  int64_t n_values = 0;  // pairable label sets

  Json ToJson() const;
};

using SetDistance = std::function<double(LabelSet, LabelSet)>;

// Krippendorff's alpha over label-set values with a pluggable distance
// (1 - Jaccard by default) plus the mean pairwise Jaccard index per item.
// Items with fewer than two annotations are not pairable and are skipped.
// Throws Error("InsufficientAnnotators") when no item is pairable.
AgreementReport ComputeAgreement(std::span<const ItemAnnotations> items,
                                 const SetDistance &distance = JaccardDistance);

struct TopicJudgment {
  std::string item_id;
  std::string judge_id;
  bool acceptable = false;
};

struct JudgeAccuracy {
  int64_t accepted = 0;
  int64_t total = 0;
  double accuracy = 0.0;
};

struct JudgeOverlap {
  std::string judge_a;
  std::string judge_b;
  int64_t co_judged = 0;
  int64_t agreed = 0;
  double overlap = 0.0;
};

struct TopicAccuracyReport {
  std::map<std::string, JudgeAccuracy> per_judge;
  std::vector<JudgeOverlap> overlaps;  // every judge pair with shared items

  Json ToJson() const;
};

// Throws Error("NoJudgments").
TopicAccuracyReport ComputeTopicAccuracy(std::span<const TopicJudgment> judgments);

}  // namespace framelens

#endif  // FRAMELENS_EVALUATE_H_
