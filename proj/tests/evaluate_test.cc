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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "framelens/errors.h"
#include "framelens/evaluate.h"
#include "support/test_util.h"

namespace framelens {
namespace {

using enum Frame;

ItemAnnotations Item(const std::string &id, std::vector<LabelSet> sets) {
  ItemAnnotations item{id, {}};
  for (size_t i = 0; i < sets.size(); ++i) {
    item.annotations.push_back({"ann" + std::to_string(i), sets[i]});
  }
  return item;
}

// Paired random predictions and gold for `n` items.
void RandomInstance(std::mt19937_64 &rng, int n, std::vector<Prediction> *preds,
                    std::vector<GoldSet> *gold) {
  for (int i = 0; i < n; ++i) {
    std::string id = "i" + std::to_string(i);
    preds->push_back({id, testutil::RandomLabelSet(rng, 5, 8)});
    gold->push_back({id, testutil::RandomLabelSet(rng, 5, 8), GoldProvenance::kSingle});
  }
}

std::vector<std::pair<oracle::Labels, oracle::Labels>> Joined(const std::vector<Prediction> &p,
                                                              const std::vector<GoldSet> &g) {
  std::vector<std::pair<oracle::Labels, oracle::Labels>> out;
  for (size_t i = 0; i < p.size(); ++i) {
    out.emplace_back(testutil::ToOracle(p[i].labels), testutil::ToOracle(g[i].labels));
  }
  return out;
}

TEST(Gold, TopThreeExamples) {
  auto g = BuildGoldMfc(std::vector{Item("x", {{kEconomic, kMorality}, {kEconomic, kFairness},
                                               {kEconomic}})});
  EXPECT_EQ(g[0].labels, (LabelSet{kEconomic, kMorality, kFairness}));
  EXPECT_EQ(g[0].provenance, GoldProvenance::kMfcTop3);

  g = BuildGoldMfc(std::vector{Item("y", {{kLegality, kPolitical}})});
  EXPECT_EQ(g[0].labels, (LabelSet{kLegality, kPolitical}));
}

TEST(Gold, CorpusFrequencyBreaksTies) {
  // Item x: economic 3, morality 2, fairness 1, health 1. Health is more
  // frequent across the input because item z uses it twice.
  std::vector<ItemAnnotations> items{
      Item("x", {{kEconomic, kMorality, kFairness}, {kEconomic, kMorality, kHealth}, {kEconomic}}),
      Item("z", {{kHealth}, {kHealth}})};
  auto g = BuildGoldMfc(items);
  EXPECT_EQ(g[0].labels, (LabelSet{kEconomic, kMorality, kHealth}));
  EXPECT_EQ(g[1].labels, LabelSet{kHealth});

  // Full tie falls back to canonical id order: cap&res < crime < culture.
  g = BuildGoldMfc(std::vector{Item("t", {{kCulture, kCrime, kCapacityResources, kSecurity}})});
  EXPECT_EQ(g[0].labels, (LabelSet{kCapacityResources, kCrime, kCulture}));
}

TEST(Gold, NoneOnlyWhenNothingSubstantive) {
  auto g = BuildGoldMfc(std::vector{Item("a", {{kNone}, {kNone}, {kCrime}})});
  EXPECT_EQ(g[0].labels, LabelSet{kCrime});
  g = BuildGoldMfc(std::vector{Item("b", {{kNone}, {kNone}})});
  EXPECT_EQ(g[0].labels, LabelSet{kNone});
}

TEST(Gold, UnionExamples) {
  std::vector<ItemAnnotations> items{Item("a", {{kCrime}, {kCrime, kSecurity}}),
                                     Item("b", {{kNone}, {kCulture}}),
                                     Item("c", {{kNone}, {kNone}})};
  auto g = BuildGoldUnion(items);
  EXPECT_EQ(g[0].labels, (LabelSet{kCrime, kSecurity}));
  EXPECT_EQ(g[1].labels, LabelSet{kCulture});
  EXPECT_EQ(g[2].labels, LabelSet{kNone});
  EXPECT_EQ(g[0].provenance, GoldProvenance::kAnnotatorUnion);
}

TEST(Gold, EmptyAnnotationListThrows) {
  std::vector<ItemAnnotations> items{ItemAnnotations{"x", {}}};
  EXPECT_THROW(BuildGoldMfc(items), Error);
  EXPECT_THROW(BuildGoldUnion(items), Error);
}

TEST(Gold, RandomizedAgainstOracle) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<ItemAnnotations> items;
    std::vector<std::vector<oracle::Labels>> raw;
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      std::vector<LabelSet> sets;
      std::vector<oracle::Labels> os;
      int k = 1 + static_cast<int>(rng() % 4);
      for (int a = 0; a < k; ++a) {
        sets.push_back(testutil::RandomLabelSet(rng, 4, 6, 0.2));
        os.push_back(testutil::ToOracle(sets.back()));
      }
      items.push_back(Item("i" + std::to_string(i), sets));
      raw.push_back(os);
    }
    auto top3 = BuildGoldMfc(items);
    auto uni = BuildGoldUnion(items);
    auto expected = oracle::GoldTop3(raw);
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(testutil::ToOracle(top3[i].labels), expected[i]) << round;
      EXPECT_EQ(testutil::ToOracle(uni[i].labels), oracle::GoldUnion(raw[i])) << round;
    }
  }
}

TEST(Gold, JsonRoundTrip) {
  GoldSet g{"x", {kCrime, kPolicy}, GoldProvenance::kMfcTop3};
  GoldSet back = GoldSetFromJson(GoldSetToJson(g));
  EXPECT_EQ(back.labels, g.labels);
  EXPECT_EQ(back.provenance, g.provenance);
  EXPECT_EQ(back.item_id, "x");
}

TEST(Score, SingleItemHandExample) {
  std::vector<Prediction> p{{"x", {kLegality, kPolicy}}};
  std::vector<GoldSet> g{{"x", {kLegality, kPolitical}, GoldProvenance::kSingle}};
  EvalReport r = ScoreMultilabel(p, g);
  EXPECT_DOUBLE_EQ(r.micro.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.micro.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.micro.f1, 0.5);
  EXPECT_DOUBLE_EQ(r.nonzero_intersection_rate, 1.0);
  EXPECT_EQ(r.per_label.at(kLegality).tp, 1);
  EXPECT_EQ(r.per_label.at(kPolicy).fp, 1);
  EXPECT_EQ(r.per_label.at(kPolitical).fn, 1);
  EXPECT_EQ(r.per_label.size(), 3u);
}

TEST(Score, IdentityIsPerfect) {
  std::mt19937_64 rng(5);
  std::vector<Prediction> p;
  std::vector<GoldSet> g;
  RandomInstance(rng, 8, &p, &g);
  for (size_t i = 0; i < p.size(); ++i) g[i].labels = p[i].labels;
  EvalReport r = ScoreMultilabel(p, g);
  for (const Prf &prf : {r.micro, r.macro, r.weighted, r.samples}) {
    EXPECT_DOUBLE_EQ(prf.precision, 1.0);
    EXPECT_DOUBLE_EQ(prf.recall, 1.0);
    EXPECT_DOUBLE_EQ(prf.f1, 1.0);
  }
  EXPECT_DOUBLE_EQ(r.nonzero_intersection_rate, 1.0);
}

TEST(Score, JoinCountsAndErrors) {
  std::vector<Prediction> p{{"a", {kCrime}}, {"b", {kCrime}}};
  std::vector<GoldSet> g{{"b", {kCrime}, GoldProvenance::kSingle},
                         {"c", {kHealth}, GoldProvenance::kSingle}};
  EvalReport r = ScoreMultilabel(p, g);
  EXPECT_EQ(r.n_items, 1);
  EXPECT_EQ(r.join.joined, 1);
  EXPECT_EQ(r.join.pred_only, 1);
  EXPECT_EQ(r.join.gold_only, 1);

  std::vector<Prediction> disjoint{{"z", {kCrime}}};
  try {
    ScoreMultilabel(disjoint, g);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "NoOverlapItems");
  }
  std::vector<Prediction> dup{{"b", {kCrime}}, {"b", {kHealth}}};
  try {
    ScoreMultilabel(dup, g);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "DuplicateItem");
  }
}

TEST(Score, RandomizedAgainstOracle) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 200; ++round) {
    std::vector<Prediction> p;
    std::vector<GoldSet> g;
    RandomInstance(rng, 1 + static_cast<int>(rng() % 8), &p, &g);
    EvalReport r = ScoreMultilabel(p, g);
    oracle::Scores s = oracle::Score(Joined(p, g));
    ASSERT_EQ(r.per_label.size(), s.per_label.size());
    for (const auto &[f, lm] : r.per_label) {
      const oracle::Counts &c = s.per_label.at(std::string(CanonicalId(f)));
      EXPECT_EQ(lm.tp, c.tp);
      EXPECT_EQ(lm.fp, c.fp);
      EXPECT_EQ(lm.fn, c.fn);
      EXPECT_GE(lm.prf.precision, 0.0);
      EXPECT_LE(lm.prf.precision, 1.0);
      EXPECT_DOUBLE_EQ(lm.prf.f1, HarmonicMean(lm.prf.precision, lm.prf.recall));
    }
    EXPECT_NEAR(r.micro.f1, s.micro_f, 1e-12);
    EXPECT_NEAR(r.macro.f1, s.macro_f, 1e-12);
    EXPECT_NEAR(r.weighted.f1, s.weighted_f, 1e-12);
    EXPECT_NEAR(r.samples.f1, s.samples_f, 1e-12);
    EXPECT_NEAR(r.nonzero_intersection_rate, s.nonzero, 1e-12);
    if (r.micro.recall == 1.0) {
      EXPECT_DOUBLE_EQ(r.nonzero_intersection_rate, 1.0);
    }
  }
}

TEST(Score, CsvLayout) {
  std::vector<Prediction> p{{"x", {kLegality, kPolicy}}};
  std::vector<GoldSet> g{{"x", {kLegality, kPolitical}, GoldProvenance::kSingle}};
  std::string csv = ScoreMultilabel(p, g).ToCsv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,precision,recall,f1-score,support");
  EXPECT_NE(csv.find("\nlegality,1.0000,1.0000,1.0000,1\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\nmicro avg,0.5000,0.5000,0.5000,"), std::string::npos) << csv;
}

TEST(Mismatch, SixIncrementsForTableExample) {
  std::vector<Prediction> p{{"x", {kCrime, kPolicy, kSecurity}}};
  std::vector<GoldSet> g{{"x", {kPolitical, kHealth}, GoldProvenance::kSingle}};
  MismatchMatrix m = ComputeMismatch(p, g);
  EXPECT_EQ(m.Total(), 6);
  for (Frame missed : {kPolitical, kHealth}) {
    for (Frame wrong : {kCrime, kPolicy, kSecurity}) EXPECT_EQ(m.at(missed, wrong), 1);
  }
}

TEST(Mismatch, IdentityIsZero) {
  std::vector<Prediction> p{{"x", {kCrime, kPolicy}}};
  std::vector<GoldSet> g{{"x", {kCrime, kPolicy}, GoldProvenance::kSingle}};
  EXPECT_EQ(ComputeMismatch(p, g).Total(), 0);
}

TEST(Mismatch, RandomizedAgainstOracle) {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 200; ++round) {
    std::vector<Prediction> p;
    std::vector<GoldSet> g;
    RandomInstance(rng, 1 + static_cast<int>(rng() % 8), &p, &g);
    MismatchMatrix m = ComputeMismatch(p, g);
    auto expected = oracle::Mismatch(Joined(p, g));
    int64_t total = 0;
    for (size_t i = 0; i < p.size(); ++i) {
      total += (g[i].labels - p[i].labels).size() * (p[i].labels - g[i].labels).size();
    }
    EXPECT_EQ(m.Total(), total);
    for (int a = 0; a < kNumFrames; ++a) {
      EXPECT_EQ(m.at(FrameAt(a), FrameAt(a)), 0);
      for (int b = 0; b < kNumFrames; ++b) {
        auto it = expected.find({std::string(CanonicalId(FrameAt(a))),
                                 std::string(CanonicalId(FrameAt(b)))});
        EXPECT_EQ(m.at(FrameAt(a), FrameAt(b)), it == expected.end() ? 0 : it->second);
      }
    }
  }
}

TEST(Agreement, Examples) {
  EXPECT_DOUBLE_EQ(Jaccard({kEconomic, kMorality}, {kMorality, kFairness}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(Jaccard({kNone}, {kNone}), 1.0);
  std::vector<ItemAnnotations> same{Item("a", {{kCrime}, {kCrime}}),
                                    Item("b", {{kHealth, kPolicy}, {kHealth, kPolicy}})};
  AgreementReport r = ComputeAgreement(same);
  EXPECT_DOUBLE_EQ(r.alpha, 1.0);
  EXPECT_DOUBLE_EQ(r.mean_jaccard, 1.0);
  EXPECT_EQ(r.n_items, 2);
  EXPECT_EQ(r.n_annotators, 2);

  std::vector<ItemAnnotations> one{Item("a", {{kEconomic, kMorality}, {kMorality, kFairness}})};
  EXPECT_DOUBLE_EQ(ComputeAgreement(one).mean_jaccard, 1.0 / 3.0);
}

TEST(Agreement, RandomizedAgainstOracleAndPermutation) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 100; ++round) {
    std::vector<ItemAnnotations> items;
    std::vector<std::vector<oracle::Labels>> units;
    int n = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      std::vector<LabelSet> sets;
      std::vector<oracle::Labels> os;
      int k = 1 + static_cast<int>(rng() % 4);
      for (int a = 0; a < k; ++a) {
        sets.push_back(testutil::RandomLabelSet(rng, 3, 5));
        os.push_back(testutil::ToOracle(sets.back()));
      }
      items.push_back(Item("i" + std::to_string(i), sets));
      units.push_back(os);
    }
    if (std::none_of(units.begin(), units.end(), [](const auto &u) { return u.size() >= 2; })) {
      EXPECT_THROW(ComputeAgreement(items), Error);
      continue;
    }
    AgreementReport r = ComputeAgreement(items);
    oracle::Agreement o = oracle::Alpha(units);
    EXPECT_NEAR(r.alpha, o.alpha, 1e-12);
    EXPECT_NEAR(r.mean_jaccard, o.mean_jaccard, 1e-12);
    EXPECT_LE(r.alpha, 1.0);

    std::shuffle(items.begin(), items.end(), rng);
    for (auto &item : items) {
      std::shuffle(item.annotations.begin(), item.annotations.end(), rng);
      for (auto &a : item.annotations) a.annotator_id = "renamed_" + a.annotator_id;
    }
    AgreementReport permuted = ComputeAgreement(items);
    EXPECT_NEAR(permuted.alpha, r.alpha, 1e-12);
    EXPECT_NEAR(permuted.mean_jaccard, r.mean_jaccard, 1e-12);
  }
}

TEST(Agreement, InsufficientAnnotators) {
  std::vector<ItemAnnotations> items{Item("a", {{kCrime}}), Item("b", {{kHealth}})};
  try {
    ComputeAgreement(items);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "InsufficientAnnotators");
  }
}

TEST(Agreement, GroupsRowsByItem) {
  std::vector<Json> rows{
      {{"item_id", "a"}, {"annotator_id", "u1"}, {"labels", {"crime"}}},
      {{"item_id", "b"}, {"annotator_id", "u1"}, {"labels", {"health"}}},
      {{"item_id", "a"}, {"annotator_id", "u2"}, {"labels", {"Crime and punishment"}}}};
  auto items = GroupAnnotations(rows);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].item_id, "a");
  ASSERT_EQ(items[0].annotations.size(), 2u);
  EXPECT_EQ(items[0].annotations[1].labels, LabelSet{kCrime});
}

TEST(Topics, AccuracyAndOverlap) {
  std::vector<TopicJudgment> j;
  for (int i = 0; i < 50; ++i) {
    j.push_back({"i" + std::to_string(i), "j1", i < 43});
    j.push_back({"i" + std::to_string(i), "j2", i < 43});
  }
  TopicAccuracyReport r = ComputeTopicAccuracy(j);
  EXPECT_DOUBLE_EQ(r.per_judge.at("j1").accuracy, 0.86);
  EXPECT_EQ(r.per_judge.at("j1").accepted, 43);
  ASSERT_EQ(r.overlaps.size(), 1u);
  EXPECT_DOUBLE_EQ(r.overlaps[0].overlap, 1.0);
  EXPECT_EQ(r.overlaps[0].co_judged, 50);

  j[1].acceptable = false;  // j2 on i0
  r = ComputeTopicAccuracy(j);
  EXPECT_DOUBLE_EQ(r.overlaps[0].overlap, 49.0 / 50.0);
  EXPECT_THROW(ComputeTopicAccuracy(std::vector<TopicJudgment>{}), Error);
}

}  // namespace
}  // namespace framelens
