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

#ifndef FRAMELENS_LEXICAL_H_
#define FRAMELENS_LEXICAL_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "framelens/corpus.h"
#include "framelens/schema.h"

namespace framelens {

using Bigram = std::pair<std::string, std::string>;
std::string BigramText(const Bigram &b);  // "police said"

struct BigramCounts {
  std::map<Bigram, int64_t> counts;
  int64_t total = 0;
  std::string corpus_id;

  void Add(const Bigram &b, int64_t n = 1);
  void Merge(const BigramCounts &other);
  int64_t Count(const Bigram &b) const;
  Json ToJson() const;
};

using StopwordSet = std::set<std::string, std::less<>>;

// The bundled English list, one word per line, sorted.
std::string_view DefaultStopwordsText();
const StopwordSet &DefaultStopwords();
StopwordSet ParseStopwords(std::string_view text);

// Sentences end at '.', '?' or '!' followed by whitespace or end of text.
std::vector<std::string_view> SplitSentences(std::string_view text);

// Lowercases and removes punctuation (ASCII and the U+2010..U+205F block);
// tokens that end up empty are dropped.
std::vector<std::string> Tokenize(std::string_view sentence);

bool IsNumberToken(std::string_view token);

// Counts adjacent token pairs within each sentence. A pair is skipped when
// either side is a stopword or a number, so removed tokens break adjacency.
BigramCounts ExtractBigrams(std::span<const std::string> texts, const StopwordSet &stopwords,
                            std::string corpus_id = {});

enum class PriorKind { kUniform, kInformative };

struct FightinWordsOptions {
  double prior = 0.01;
  int64_t min_freq = 5;
  // kInformative spreads prior * |V| over the vocabulary in proportion to
  // the pooled counts.
  PriorKind prior_kind = PriorKind::kUniform;
};

struct LexicalScore {
  Bigram bigram;
  int64_t y1 = 0;
  int64_t y2 = 0;
  double delta = 0.0;
  double sigma2 = 0.0;
  double z = 0.0;
};

// Positive z favours c1. Sorted by z descending, ties by bigram. Throws
// Error("InvalidConfig") or Error("EmptyVocabulary").
std::vector<LexicalScore> FightinWords(const BigramCounts &c1, const BigramCounts &c2,
                                       const FightinWordsOptions &options = {});

// bigram,y1,y2,delta,sigma2,z
std::string LexicalScoresToCsv(std::span<const LexicalScore> scores);
Json LexicalScoresToJson(std::span<const LexicalScore> scores, const FightinWordsOptions &options);

struct FramePartition {
  Frame frame = Frame::kNone;
  std::vector<std::string> image_side;  // item ids whose image carries the frame
  std::vector<std::string> text_side;   // item ids whose text carries the frame
  std::vector<std::string> image_texts;
  std::vector<std::string> text_texts;
  int64_t shared = 0;
};

// Records lacking either frame set are skipped. Articles carrying the frame
// in both modalities land in both groups unless `drop_shared` is set.
FramePartition PartitionByFrame(std::span<const AnalysisRecord> records, Frame frame,
                                bool drop_shared = false);

}  // namespace framelens

#endif  // FRAMELENS_LEXICAL_H_
