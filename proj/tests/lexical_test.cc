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

#include <cmath>
#include <random>

#include "framelens/errors.h"
#include "framelens/lexical.h"
#include "framelens/util.h"
#include "support/test_util.h"

namespace framelens {
namespace {

constexpr char kStopwordSha[] = "4e22be0ad71ae1c41dd7a8f944e851ead671d114edf4faad1ee8c698d2ba5084";

BigramCounts Counts(std::initializer_list<std::pair<Bigram, int64_t>> entries) {
  BigramCounts c;
  for (const auto &[b, n] : entries) c.Add(b, n);
  return c;
}

BigramCounts RandomCounts(std::mt19937_64 &rng, int vocab, int max_count) {
  BigramCounts c;
  for (int i = 0; i < vocab; ++i) {
    int64_t n = static_cast<int64_t>(rng() % static_cast<uint64_t>(max_count + 1));
    if (n > 0) c.Add({"w" + std::to_string(i), "v" + std::to_string(i % 7)}, n);
  }
  return c;
}

TEST(Stopwords, FileAndEmbeddedCopyArePinned) {
  std::string file = ReadFile(testutil::SourceDir() / "core/data/stopwords_en.txt");
  EXPECT_EQ(Sha256Hex(file), kStopwordSha);
  EXPECT_EQ(std::string(DefaultStopwordsText()), file);
  const StopwordSet &s = DefaultStopwords();
  EXPECT_EQ(s.size(), 318u);
  EXPECT_TRUE(s.contains("the"));
  EXPECT_FALSE(s.contains("police"));
  EXPECT_EQ(ParseStopwords("b\n\n a \nc\n").size(), 3u);
}

TEST(Tokenize, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(Tokenize("Police, said: \"Hello!\""),
            (std::vector<std::string>{"police", "said", "hello"}));
  EXPECT_EQ(Tokenize("don't \xE2\x80\x9Cquote\xE2\x80\x9D \xE2\x80\x94 end"),
            (std::vector<std::string>{"dont", "quote", "end"}));
  EXPECT_EQ(Tokenize("caf\xC3\xA9"), (std::vector<std::string>{"caf\xC3\xA9"}));
  EXPECT_TRUE(Tokenize(" ... ").empty());
  EXPECT_TRUE(IsNumberToken("2024"));
  EXPECT_FALSE(IsNumberToken("covid19"));
}

TEST(Sentences, SplitOnTerminators) {
  auto s = SplitSentences("One two. Three? Four!Five 3.5 six");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], "One two.");
  EXPECT_EQ(Trim(s[2]), "Four!Five 3.5 six");
}

TEST(Bigrams, HandTokenizedExample) {
  StopwordSet stop{"the"};
  std::vector<std::string> texts{"Police said the police said."};
  BigramCounts c = ExtractBigrams(texts, stop);
  ASSERT_EQ(c.counts.size(), 1u);
  EXPECT_EQ(c.Count({"police", "said"}), 2);
  EXPECT_EQ(c.total, 2);
}

TEST(Bigrams, NoPairsAcrossSentencesOrNumbers) {
  std::vector<std::string> texts{"Year old man. Police arrive", "the 25 year old"};
  BigramCounts c = ExtractBigrams(texts, StopwordSet{"the"});
  EXPECT_EQ(c.Count({"year", "old"}), 2);
  EXPECT_EQ(c.Count({"man", "police"}), 0);
  EXPECT_EQ(c.Count({"old", "man"}), 1);
  EXPECT_EQ(c.Count({"police", "arrive"}), 1);
  EXPECT_EQ(c.counts.size(), 3u);
  EXPECT_TRUE(ExtractBigrams(std::vector<std::string>{}, StopwordSet{}).counts.empty());
}

TEST(Bigrams, TotalIsSumAndMergeAdds) {
  std::mt19937_64 rng(1);
  BigramCounts a = RandomCounts(rng, 30, 5), b = RandomCounts(rng, 30, 5);
  int64_t sum = 0;
  for (const auto &[k, v] : a.counts) sum += v;
  EXPECT_EQ(a.total, sum);
  BigramCounts m = a;
  m.Merge(b);
  EXPECT_EQ(m.total, a.total + b.total);
  for (const auto &[k, v] : m.counts) EXPECT_EQ(v, a.Count(k) + b.Count(k));
}

// Golden values evaluated in 40-digit arithmetic: a = 0.01, a0 = 0.02,
// delta = 2 ln(1001), sigma2 = 1/10.01 + 1/0.01.
TEST(FightinWords, TwoBigramGolden) {
  BigramCounts c1 = Counts({{{"police", "said"}, 10}});
  BigramCounts c2 = Counts({{{"former", "president"}, 10}});
  auto scores = FightinWords(c1, c2);
  ASSERT_EQ(scores.size(), 2u);
  const LexicalScore &top = scores[0];
  EXPECT_EQ(top.bigram, (Bigram{"police", "said"}));
  EXPECT_EQ(top.y1, 10);
  EXPECT_EQ(top.y2, 0);
  EXPECT_NEAR(top.delta, 13.81750955863044117044157, 1e-9);
  EXPECT_NEAR(top.sigma2, 100.0999000999000999000999, 1e-9);
  EXPECT_NEAR(top.z, 1.381061287262124473714002, 1e-9);
  EXPECT_NEAR(scores[1].delta, -13.81750955863044117044157, 1e-9);
  EXPECT_NEAR(scores[1].z, -1.381061287262124473714002, 1e-9);
}

TEST(FightinWords, MatchesDirectFormula) {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 20; ++round) {
    BigramCounts c1 = RandomCounts(rng, 40, 9), c2 = RandomCounts(rng, 40, 9);
    FightinWordsOptions opts;
    opts.min_freq = 3;
    std::vector<LexicalScore> s;
    try {
      s = FightinWords(c1, c2, opts);
    } catch (const Error &) {
      continue;
    }
    double a0 = opts.prior * static_cast<double>(s.size());
    for (const LexicalScore &x : s) {
      oracle::FwScore o = oracle::FightinWords(x.y1, x.y2, c1.total, c2.total, opts.prior, a0);
      EXPECT_NEAR(x.delta, o.delta, 1e-9);
      EXPECT_NEAR(x.sigma2, o.sigma2, 1e-9);
      EXPECT_NEAR(x.z, o.z, 1e-9);
      EXPECT_GE(x.y1 + x.y2, opts.min_freq);
      EXPECT_GT(x.sigma2, 0.0);
    }
    for (size_t i = 1; i < s.size(); ++i) EXPECT_GE(s[i - 1].z, s[i].z);
  }
}

TEST(FightinWords, AntisymmetricExactly) {
  std::mt19937_64 rng(3);
  for (PriorKind kind : {PriorKind::kUniform, PriorKind::kInformative}) {
    BigramCounts c1 = RandomCounts(rng, 60, 12), c2 = RandomCounts(rng, 60, 12);
    FightinWordsOptions opts;
    opts.prior_kind = kind;
    auto ab = FightinWords(c1, c2, opts);
    auto ba = FightinWords(c2, c1, opts);
    std::map<Bigram, double> z;
    for (const auto &x : ba) z[x.bigram] = x.z;
    ASSERT_EQ(ab.size(), ba.size());
    for (const auto &x : ab) EXPECT_EQ(x.z, -z.at(x.bigram));
  }
}

TEST(FightinWords, IdenticalCorporaGiveZero) {
  std::mt19937_64 rng(4);
  BigramCounts c = RandomCounts(rng, 50, 10);
  for (const auto &x : FightinWords(c, c)) EXPECT_EQ(x.z, 0.0);
}

TEST(FightinWords, ScalingNeverFlipsSign) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    BigramCounts c1 = RandomCounts(rng, 40, 10), c2 = RandomCounts(rng, 40, 10);
    BigramCounts s1, s2;
    for (const auto &[k, v] : c1.counts) s1.Add(k, 10 * v);
    for (const auto &[k, v] : c2.counts) s2.Add(k, 10 * v);
    FightinWordsOptions opts;
    opts.min_freq = 1;
    auto base = FightinWords(c1, c2, opts);
    std::map<Bigram, double> scaled;
    for (const auto &x : FightinWords(s1, s2, opts)) scaled[x.bigram] = x.z;
    for (const auto &x : base) {
      EXPECT_EQ(x.z > 0, scaled.at(x.bigram) > 0) << BigramText(x.bigram);
      EXPECT_EQ(x.z < 0, scaled.at(x.bigram) < 0) << BigramText(x.bigram);
    }
  }
}

TEST(FightinWords, Errors) {
  BigramCounts c = Counts({{{"a", "b"}, 2}});
  try {
    FightinWords(c, c);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "EmptyVocabulary");
  }
  FightinWordsOptions bad;
  bad.prior = 0;
  EXPECT_THROW(FightinWords(c, c, bad), Error);
  bad = {};
  bad.min_freq = 0;
  EXPECT_THROW(FightinWords(c, c, bad), Error);
}

TEST(FightinWords, CsvOutput) {
  auto s = FightinWords(Counts({{{"police", "said"}, 10}}), Counts({{{"year", "old"}, 10}}));
  std::string csv = LexicalScoresToCsv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "bigram,y1,y2,delta,sigma2,z");
  EXPECT_NE(csv.find("\npolice said,10,0,"), std::string::npos);
  Json j = LexicalScoresToJson(s, {});
  EXPECT_FALSE(j.dump().empty());
}

TEST(Partition, MembershipOnFourRecords) {
  auto rec = [](std::string id, LabelSet text, LabelSet image) {
    AnalysisRecord r;
    r.item_id = id;
    r.text = "text of " + id;
    r.text_frames = text;
    r.image_frames = image;
    return r;
  };
  using enum Frame;
  std::vector<AnalysisRecord> recs{rec("img_only", {kPolicy}, {kCrime}),
                                   rec("both", {kCrime}, {kCrime, kHealth}),
                                   rec("text_only", {kCrime, kPolicy}, {kHealth}),
                                   rec("neither", {kPolicy}, {kHealth})};
  FramePartition p = PartitionByFrame(recs, kCrime);
  EXPECT_EQ(p.image_side, (std::vector<std::string>{"img_only", "both"}));
  EXPECT_EQ(p.text_side, (std::vector<std::string>{"both", "text_only"}));
  EXPECT_EQ(p.image_texts, (std::vector<std::string>{"text of img_only", "text of both"}));
  EXPECT_EQ(p.shared, 1);
  FramePartition d = PartitionByFrame(recs, kCrime, true);
  EXPECT_EQ(d.image_side, (std::vector<std::string>{"img_only"}));
  EXPECT_EQ(d.text_side, (std::vector<std::string>{"text_only"}));
}

}  // namespace
}  // namespace framelens
