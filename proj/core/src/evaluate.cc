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

#include "framelens/evaluate.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "framelens/errors.h"
#include "framelens/util.h"

namespace framelens {
namespace {

using Joined = std::vector<std::pair<LabelSet, LabelSet>>;  // (pred, gold)

Joined JoinOnItem(std::span<const Prediction> preds, std::span<const GoldSet> gold,
                  JoinCounts *counts) {
  std::unordered_map<std::string, LabelSet> gold_by_id;
  for (const GoldSet &g : gold) {
    if (!gold_by_id.emplace(g.item_id, g.labels).second) {
      throw Error("DuplicateItem", "gold item " + g.item_id + " repeats");
    }
  }
  std::set<std::string> seen;
  Joined out;
  for (const Prediction &p : preds) {
    if (!seen.insert(p.item_id).second) {
      throw Error("DuplicateItem", "prediction " + p.item_id + " repeats");
    }
    auto it = gold_by_id.find(p.item_id);
    if (it == gold_by_id.end()) {
      ++counts->pred_only;
      continue;
    }
    out.emplace_back(p.labels, it->second);
  }
  counts->joined = static_cast<int64_t>(out.size());
  counts->gold_only = static_cast<int64_t>(gold.size()) - counts->joined;
  if (out.empty()) throw Error("NoOverlapItems", "no prediction matches a gold item");
  return out;
}

Json PrfJson(const Prf &p) {
  return Json{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

Json JoinJson(const JoinCounts &j) {
  return Json{{"joined", j.joined}, {"pred_only", j.pred_only}, {"gold_only", j.gold_only}};
}

std::string Fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void CheckNonEmpty(const ItemAnnotations &item) {
  if (item.annotations.empty()) {
    throw Error("EmptyAnnotationList", "item " + item.item_id + " has no annotations");
  }
}

}  // namespace

std::string_view GoldProvenanceName(GoldProvenance p) {
  switch (p) {
    case GoldProvenance::kMfcTop3:
      return "mfc_top3";
    case GoldProvenance::kAnnotatorUnion:
      return "annotator_union";
    case GoldProvenance::kSingle:
      return "single";
  }
  return "single";
}

Json GoldSetToJson(const GoldSet &g) {
  return Json{{"item_id", g.item_id},
              {"labels", LabelSetToJson(g.labels)},
              {"provenance", GoldProvenanceName(g.provenance)}};
}

GoldSet GoldSetFromJson(const Json &j) {
  GoldSet g;
  g.item_id = j.at("item_id").get<std::string>();
  g.labels = LabelSetFromJson(j.at("labels"));
  std::string p = j.value("provenance", "single");
  g.provenance = p == "mfc_top3"          ? GoldProvenance::kMfcTop3
                 : p == "annotator_union" ? GoldProvenance::kAnnotatorUnion
                                          : GoldProvenance::kSingle;
  return g;
}

std::vector<ItemAnnotations> GroupAnnotations(std::span<const Json> rows) {
  std::vector<ItemAnnotations> out;
  std::unordered_map<std::string, size_t> index;
  for (const Json &row : rows) {
    std::string id = row.at("item_id").get<std::string>();
    auto [it, inserted] = index.emplace(id, out.size());
    if (inserted) out.push_back(ItemAnnotations{id, {}});
    std::string annotator;
    if (row.contains("annotator_id")) {
      annotator = row["annotator_id"].get<std::string>();
    } else if (row.contains("annotator") && row["annotator"].is_object()) {
      annotator = row["annotator"].value("id", "");
    }
    out[it->second].annotations.push_back(
        AnnotatorLabels{annotator, LabelSetFromJson(row.at("labels"))});
  }
  return out;
}

std::vector<GoldSet> BuildGoldMfc(std::span<const ItemAnnotations> items) {
  if (items.empty()) throw Error("EmptyAnnotationList", "no annotated items");
  std::array<int64_t, kNumFrames> corpus{};
  for (const ItemAnnotations &item : items) {
    CheckNonEmpty(item);
    for (const AnnotatorLabels &a : item.annotations) {
      for (Frame f : a.labels.ToVector()) ++corpus[FrameIndex(f)];
    }
  }
  std::vector<GoldSet> out;
  for (const ItemAnnotations &item : items) {
    std::array<int64_t, kNumFrames> count{};
    LabelSet all;
    for (const AnnotatorLabels &a : item.annotations) {
      for (Frame f : a.labels.ToVector()) ++count[FrameIndex(f)];
      all = all | a.labels;
    }
    std::vector<Frame> candidates = CanonicalizeNone(all).ToVector();
    std::sort(candidates.begin(), candidates.end(), [&](Frame a, Frame b) {
      int ia = FrameIndex(a), ib = FrameIndex(b);
      if (count[ia] != count[ib]) return count[ia] > count[ib];
      if (corpus[ia] != corpus[ib]) return corpus[ia] > corpus[ib];
      return CanonicalId(a) < CanonicalId(b);
    });
    if (candidates.size() > 3) candidates.resize(3);
    GoldSet g{item.item_id, {}, item.annotations.size() == 1 ? GoldProvenance::kSingle
                                                             : GoldProvenance::kMfcTop3};
    for (Frame f : candidates) g.labels.Insert(f);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GoldSet> BuildGoldUnion(std::span<const ItemAnnotations> items) {
  if (items.empty()) throw Error("EmptyAnnotationList", "no annotated items");
  std::vector<GoldSet> out;
  for (const ItemAnnotations &item : items) {
    CheckNonEmpty(item);
    LabelSet all;
    for (const AnnotatorLabels &a : item.annotations) all = all | a.labels;
    out.push_back(GoldSet{item.item_id, CanonicalizeNone(all),
                          item.annotations.size() == 1 ? GoldProvenance::kSingle
                                                       : GoldProvenance::kAnnotatorUnion});
  }
  return out;
}

double HarmonicMean(double p, double r) {
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double SafeRatio(int64_t num, int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

EvalReport ScoreMultilabel(std::span<const Prediction> preds,
                           std::span<const GoldSet> gold) {
  EvalReport rep;
  Joined joined = JoinOnItem(preds, gold, &rep.join);
  rep.n_items = static_cast<int64_t>(joined.size());

  std::array<LabelMetrics, kNumFrames> m{};
  LabelSet seen;
  int64_t nonzero = 0;
  double sp = 0.0, sr = 0.0, sf = 0.0;
  for (const auto &[p, g] : joined) {
    LabelSet inter = p & g;
    if (!inter.empty()) ++nonzero;
    seen = seen | p | g;
    for (Frame f : inter.ToVector()) ++m[FrameIndex(f)].tp;
    for (Frame f : (p - g).ToVector()) ++m[FrameIndex(f)].fp;
    for (Frame f : (g - p).ToVector()) ++m[FrameIndex(f)].fn;
    sp += SafeRatio(inter.size(), p.size());
    sr += SafeRatio(inter.size(), g.size());
    sf += SafeRatio(2 * inter.size(), p.size() + g.size());
  }
  const double n = static_cast<double>(rep.n_items);
  rep.nonzero_intersection_rate = static_cast<double>(nonzero) / n;
  rep.samples = Prf{sp / n, sr / n, sf / n};

  int64_t tp = 0, fp = 0, fn = 0, support = 0;
  Prf macro, weighted;
  for (Frame f : seen.ToVector()) {
    LabelMetrics lm = m[FrameIndex(f)];
    lm.support = lm.tp + lm.fn;
    lm.prf.precision = SafeRatio(lm.tp, lm.tp + lm.fp);
    lm.prf.recall = SafeRatio(lm.tp, lm.tp + lm.fn);
    lm.prf.f1 = HarmonicMean(lm.prf.precision, lm.prf.recall);
    tp += lm.tp;
    fp += lm.fp;
    fn += lm.fn;
    support += lm.support;
    macro.precision += lm.prf.precision;
    macro.recall += lm.prf.recall;
    macro.f1 += lm.prf.f1;
    const auto w = static_cast<double>(lm.support);
    weighted.precision += w * lm.prf.precision;
    weighted.recall += w * lm.prf.recall;
    weighted.f1 += w * lm.prf.f1;
    rep.per_label.emplace(f, lm);
  }
  const auto k = static_cast<double>(rep.per_label.size());
  rep.macro = Prf{macro.precision / k, macro.recall / k, macro.f1 / k};
  if (support > 0) {
    const auto s = static_cast<double>(support);
    rep.weighted = Prf{weighted.precision / s, weighted.recall / s, weighted.f1 / s};
  }
  rep.micro.precision = SafeRatio(tp, tp + fp);
  rep.micro.recall = SafeRatio(tp, tp + fn);
  rep.micro.f1 = HarmonicMean(rep.micro.precision, rep.micro.recall);
  return rep;
}

Json EvalReport::ToJson() const {
  Json labels = Json::object();
  for (const auto &[f, lm] : per_label) {
    labels[std::string(CanonicalId(f))] = {{"precision", lm.prf.precision},
                                           {"recall", lm.prf.recall},
                                           {"f1", lm.prf.f1},
                                           {"support", lm.support},
                                           {"tp", lm.tp},
                                           {"fp", lm.fp},
                                           {"fn", lm.fn}};
  }
  return Json{{"n_items", n_items},
              {"nonzero_intersection_rate", nonzero_intersection_rate},
              {"micro", PrfJson(micro)},
              {"macro", PrfJson(macro)},
              {"weighted", PrfJson(weighted)},
              {"samples", PrfJson(samples)},
              {"per_label", std::move(labels)},
              {"join", JoinJson(join)}};
}

std::string EvalReport::ToCsv() const {
  std::vector<std::pair<std::string, const LabelMetrics *>> rows;
  for (const auto &[f, lm] : per_label) rows.emplace_back(std::string(CanonicalId(f)), &lm);
  std::sort(rows.begin(), rows.end());
  std::string out = "label,precision,recall,f1-score,support\n";
  int64_t support = 0;
  for (const auto &[id, lm] : rows) {
    out += CsvField(id) + "," + Fixed4(lm->prf.precision) + "," + Fixed4(lm->prf.recall) +
           "," + Fixed4(lm->prf.f1) + "," + std::to_string(lm->support) + "\n";
    support += lm->support;
  }
  auto avg = [&](const char *name, const Prf &p) {
    out += std::string(name) + "," + Fixed4(p.precision) + "," + Fixed4(p.recall) + "," +
           Fixed4(p.f1) + "," + std::to_string(support) + "\n";
  };
  avg("micro avg", micro);
  avg("macro avg", macro);
  avg("weighted avg", weighted);
  avg("samples avg", samples);
  return out;
}

MismatchMatrix ComputeMismatch(std::span<const Prediction> preds,
                               std::span<const GoldSet> gold) {
  MismatchMatrix mm;
  for (const auto &[p, g] : JoinOnItem(preds, gold, &mm.join)) {
    std::vector<Frame> wrong = (p - g).ToVector();
    for (Frame missed : (g - p).ToVector()) {
      for (Frame extra : wrong) ++mm.counts[FrameIndex(missed)][FrameIndex(extra)];
    }
  }
  return mm;
}

int64_t MismatchMatrix::Total() const {
  int64_t t = 0;
  for (const auto &row : counts) {
    for (int64_t c : row) t += c;
  }
  return t;
}

Json MismatchMatrix::ToJson() const {
  Json labels = Json::array();
  Json rows = Json::array();
  for (int i = 0; i < kNumFrames; ++i) {
    labels.push_back(CanonicalId(FrameAt(i)));
    rows.push_back(counts[i]);
  }
  return Json{{"labels", std::move(labels)},
              {"rows", "missed gold label"},
              {"columns", "erroneous predicted label"},
              {"counts", std::move(rows)},
              {"total", Total()},
              {"join", JoinJson(join)}};
}

std::string MismatchMatrix::ToCsv() const {
  std::string out = "missed";
  for (int j = 0; j < kNumFrames; ++j) out += "," + CsvField(CanonicalId(FrameAt(j)));
  out += "\n";
  for (int i = 0; i < kNumFrames; ++i) {
    out += CsvField(CanonicalId(FrameAt(i)));
    for (int j = 0; j < kNumFrames; ++j) out += "," + std::to_string(counts[i][j]);
    out += "\n";
  }
  return out;
}

double Jaccard(LabelSet a, LabelSet b) {
  LabelSet u = a | b;
  if (u.empty()) return 1.0;
  return static_cast<double>((a & b).size()) / static_cast<double>(u.size());
}

double JaccardDistance(LabelSet a, LabelSet b) { return 1.0 - Jaccard(a, b); }

Json AgreementReport::ToJson() const {
  return Json{{"alpha", alpha},
              {"mean_jaccard", mean_jaccard},
              {"n_items", n_items},
              {"n_annotators", n_annotators},
              {"n_values", n_values}};
}

AgreementReport ComputeAgreement(std::span<const ItemAnnotations> items,
                                 const SetDistance &distance) {
  AgreementReport rep;
  std::set<std::string> annotators;
  // Value frequencies over all pairable label sets.
  std::map<uint16_t, int64_t> value_counts;
  double observed = 0.0;  // sum over units of within-unit disagreement / (m-1)
  double jaccard_sum = 0.0;
  for (const ItemAnnotations &item : items) {
    const auto &ann = item.annotations;
    const size_t m = ann.size();
    if (m < 2) continue;
    ++rep.n_items;
    double unit = 0.0;
    double jac = 0.0;
    for (size_t i = 0; i < m; ++i) {
      annotators.insert(ann[i].annotator_id);
      ++value_counts[ann[i].labels.bits()];
      for (size_t j = i + 1; j < m; ++j) {
        unit += 2.0 * distance(ann[i].labels, ann[j].labels);
        jac += Jaccard(ann[i].labels, ann[j].labels);
      }
    }
    rep.n_values += static_cast<int64_t>(m);
    observed += unit / static_cast<double>(m - 1);
    jaccard_sum += jac / static_cast<double>(m * (m - 1) / 2);
  }
  if (rep.n_items == 0) {
    throw Error("InsufficientAnnotators", "no item has two or more annotations");
  }
  rep.n_annotators = static_cast<int64_t>(annotators.size());
  rep.mean_jaccard = jaccard_sum / static_cast<double>(rep.n_items);

  const auto n = static_cast<double>(rep.n_values);
  double expected = 0.0;
  for (auto a = value_counts.begin(); a != value_counts.end(); ++a) {
    for (auto b = std::next(a); b != value_counts.end(); ++b) {
      expected += 2.0 * static_cast<double>(a->second) * static_cast<double>(b->second) *
                  distance(LabelSet::FromBits(a->first), LabelSet::FromBits(b->first));
    }
  }
  const double d_o = observed / n;
  const double d_e = expected / (n * (n - 1.0));
  rep.alpha = d_e == 0.0 ? 1.0 : 1.0 - d_o / d_e;
  return rep;
}

Json TopicAccuracyReport::ToJson() const {
  Json judges = Json::object();
  for (const auto &[id, a] : per_judge) {
    judges[id] = {{"accepted", a.accepted}, {"total", a.total}, {"accuracy", a.accuracy}};
  }
  Json pairs = Json::array();
  for (const JudgeOverlap &o : overlaps) {
    pairs.push_back({{"judge_a", o.judge_a},
                     {"judge_b", o.judge_b},
                     {"co_judged", o.co_judged},
                     {"agreed", o.agreed},
                     {"overlap", o.overlap}});
  }
  return Json{{"per_judge", std::move(judges)}, {"overlaps", std::move(pairs)}};
}

TopicAccuracyReport ComputeTopicAccuracy(std::span<const TopicJudgment> judgments) {
  if (judgments.empty()) throw Error("NoJudgments", "no topic judgments given");
  TopicAccuracyReport rep;
  // judge -> item -> verdict (last one wins for repeated judgments)
  std::map<std::string, std::map<std::string, bool>> verdicts;
  for (const TopicJudgment &j : judgments) verdicts[j.judge_id][j.item_id] = j.acceptable;
  for (const auto &[judge, items] : verdicts) {
    JudgeAccuracy acc;
    for (const auto &[item, ok] : items) {
      ++acc.total;
      if (ok) ++acc.accepted;
    }
    acc.accuracy = SafeRatio(acc.accepted, acc.total);
    rep.per_judge.emplace(judge, acc);
  }
  for (auto a = verdicts.begin(); a != verdicts.end(); ++a) {
    for (auto b = std::next(a); b != verdicts.end(); ++b) {
      JudgeOverlap o{a->first, b->first, 0, 0, 0.0};
      for (const auto &[item, ok] : a->second) {
        auto it = b->second.find(item);
        if (it == b->second.end()) continue;
        ++o.co_judged;
        if (it->second == ok) ++o.agreed;
      }
      if (o.co_judged == 0) continue;
      o.overlap = SafeRatio(o.agreed, o.co_judged);
      rep.overlaps.push_back(std::move(o));
    }
  }
  return rep;
}

}  // namespace framelens
