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

#include "framelens/lexical.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "framelens/errors.h"
#include "framelens/util.h"

namespace framelens {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Length of a U+2010..U+205F sequence at `i`, or 0.
size_t GeneralPunctuationAt(std::string_view s, size_t i) {
  if (i + 2 >= s.size()) return 0;
  auto b0 = static_cast<unsigned char>(s[i]);
  auto b1 = static_cast<unsigned char>(s[i + 1]);
  if (b0 != 0xE2) return 0;
  if (b1 == 0x80 && static_cast<unsigned char>(s[i + 2]) >= 0x90) return 3;
  if (b1 == 0x81 && static_cast<unsigned char>(s[i + 2]) <= 0x9F) return 3;
  return 0;
}

// Per-side log-odds term; shared so that swapping corpora negates exactly.
double LogOdds(double y, double n, double a, double a0) {
  return std::log((y + a) / (n + a0 - y - a));
}

}  // namespace

std::string BigramText(const Bigram &b) { return b.first + " " + b.second; }

void BigramCounts::Add(const Bigram &b, int64_t n) {
  counts[b] += n;
  total += n;
}

void BigramCounts::Merge(const BigramCounts &other) {
  for (const auto &[b, n] : other.counts) Add(b, n);
}

int64_t BigramCounts::Count(const Bigram &b) const {
  auto it = counts.find(b);
  return it == counts.end() ? 0 : it->second;
}

Json BigramCounts::ToJson() const {
  Json c = Json::object();
  for (const auto &[b, n] : counts) c[BigramText(b)] = n;
  return Json{{"corpus_id", corpus_id}, {"total", total}, {"counts", std::move(c)}};
}

StopwordSet ParseStopwords(std::string_view text) {
  StopwordSet out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string w = ToLower(Trim(text.substr(pos, end - pos)));
    if (!w.empty()) out.insert(std::move(w));
    pos = end + 1;
  }
  return out;
}

const StopwordSet &DefaultStopwords() {
  static const StopwordSet kSet = ParseStopwords(DefaultStopwordsText());
  return kSet;
}

std::vector<std::string_view> SplitSentences(std::string_view text) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '?' && c != '!') continue;
    if (i + 1 < text.size() && !IsSpace(text[i + 1])) continue;
    out.push_back(text.substr(start, i + 1 - start));
    start = i + 1;
  }
  if (start < text.size()) out.push_back(text.substr(start));
  return out;
}

std::vector<std::string> Tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (size_t i = 0; i < sentence.size();) {
    auto c = static_cast<unsigned char>(sentence[i]);
    if (std::isspace(c)) {
      flush();
      ++i;
    } else if (c < 0x80) {
      if (std::isalnum(c)) cur.push_back(static_cast<char>(std::tolower(c)));
      ++i;
    } else if (size_t n = GeneralPunctuationAt(sentence, i); n > 0) {
      i += n;
    } else {
      cur.push_back(static_cast<char>(c));
      ++i;
    }
  }
  flush();
  return tokens;
}

bool IsNumberToken(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

BigramCounts ExtractBigrams(std::span<const std::string> texts, const StopwordSet &stopwords,
                            std::string corpus_id) {
  BigramCounts out;
  out.corpus_id = std::move(corpus_id);
  auto usable = [&](const std::string &t) { return !IsNumberToken(t) && !stopwords.contains(t); };
  for (const std::string &text : texts) {
    for (std::string_view sentence : SplitSentences(text)) {
      std::vector<std::string> tokens = Tokenize(sentence);
      for (size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (usable(tokens[i]) && usable(tokens[i + 1])) out.Add({tokens[i], tokens[i + 1]});
      }
    }
  }
  return out;
}

std::vector<LexicalScore> FightinWords(const BigramCounts &c1, const BigramCounts &c2,
                                       const FightinWordsOptions &options) {
  if (!(options.prior > 0.0) || !std::isfinite(options.prior)) {
    throw Error("InvalidConfig", "prior must be positive");
  }
  if (options.min_freq < 1) throw Error("InvalidConfig", "min_freq must be >= 1");

  std::vector<LexicalScore> vocab;
  int64_t pooled = 0;
  auto consider = [&](const Bigram &b) {
    LexicalScore s;
    s.bigram = b;
    s.y1 = c1.Count(b);
    s.y2 = c2.Count(b);
    if (s.y1 + s.y2 < options.min_freq) return;
    pooled += s.y1 + s.y2;
    vocab.push_back(std::move(s));
  };
  for (const auto &[b, n] : c1.counts) consider(b);
  for (const auto &[b, n] : c2.counts) {
    if (!c1.counts.contains(b)) consider(b);
  }
  if (vocab.empty()) {
    throw Error("EmptyVocabulary",
                "no bigram reaches min_freq=" + std::to_string(options.min_freq));
  }

  const double a0 = options.prior * static_cast<double>(vocab.size());
  const auto n1 = static_cast<double>(c1.total);
  const auto n2 = static_cast<double>(c2.total);
  for (LexicalScore &s : vocab) {
    double a = options.prior;
    if (options.prior_kind == PriorKind::kInformative) {
      a = a0 * static_cast<double>(s.y1 + s.y2) / static_cast<double>(pooled);
    }
    const auto y1 = static_cast<double>(s.y1);
    const auto y2 = static_cast<double>(s.y2);
    s.delta = LogOdds(y1, n1, a, a0) - LogOdds(y2, n2, a, a0);
    s.sigma2 = 1.0 / (y1 + a) + 1.0 / (y2 + a);
    s.z = s.delta / std::sqrt(s.sigma2);
  }
  std::sort(vocab.begin(), vocab.end(), [](const LexicalScore &x, const LexicalScore &y) {
    if (x.z != y.z) return x.z > y.z;
    return x.bigram < y.bigram;
  });
  return vocab;
}

std::string LexicalScoresToCsv(std::span<const LexicalScore> scores) {
  std::string out = "bigram,y1,y2,delta,sigma2,z\n";
  for (const LexicalScore &s : scores) {
    out += CsvField(BigramText(s.bigram)) + "," + std::to_string(s.y1) + "," +
           std::to_string(s.y2) + "," + FormatDouble(s.delta) + "," + FormatDouble(s.sigma2) +
           "," + FormatDouble(s.z) + "\n";
  }
  return out;
}

Json LexicalScoresToJson(std::span<const LexicalScore> scores,
                         const FightinWordsOptions &options) {
  Json rows = Json::array();
  for (const LexicalScore &s : scores) {
    rows.push_back({{"bigram", BigramText(s.bigram)},
                    {"y1", s.y1},
                    {"y2", s.y2},
                    {"delta", s.delta},
                    {"sigma2", s.sigma2},
                    {"z", s.z}});
  }
  return Json{{"prior", options.prior},
              {"min_freq", options.min_freq},
              {"prior_kind", options.prior_kind == PriorKind::kUniform ? "uniform" : "informative"},
              {"scores", std::move(rows)}};
}

FramePartition PartitionByFrame(std::span<const AnalysisRecord> records, Frame frame,
                                bool drop_shared) {
  FramePartition p;
  p.frame = frame;
  for (const AnalysisRecord &r : records) {
    if (!r.text_frames || !r.image_frames) continue;
    const bool in_image = r.image_frames->Contains(frame);
    const bool in_text = r.text_frames->Contains(frame);
    if (in_image && in_text) {
      ++p.shared;
      if (drop_shared) continue;
    }
    if (in_image) {
      p.image_side.push_back(r.item_id);
      p.image_texts.push_back(r.text);
    }
    if (in_text) {
      p.text_side.push_back(r.item_id);
      p.text_texts.push_back(r.text);
    }
  }
  return p;
}

}  // namespace framelens
