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

#ifndef FRAMELENS_CORPUS_H_
#define FRAMELENS_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framelens/schema.h"

namespace framelens {

struct ImageRef {
  std::string article_id;
  std::string url;
  int64_t byte_size = 0;
  std::optional<std::string> local_path;
};

struct Article {
  std::string id;  // derived from url
  std::string url;
  std::string source_domain;
  std::optional<Leaning> leaning;  // nullopt when the domain is unknown
  std::string date_publish;
  std::string title;
  std::string maintext;
  std::string language;
  std::vector<ImageRef> image_refs;
  int64_t word_count = 0;
};

// First 16 hex digits of SHA-256(url).
std::string ArticleId(std::string_view url);
// Number of whitespace-separated tokens.
int64_t WordCount(std::string_view text);

Json ArticleToJson(const Article &a);
Article ArticleFromJson(const Json &j);
Json ImageRefToJson(const ImageRef &r);
ImageRef ImageRefFromJson(const Json &j);

// Maps publisher domains to leaning ratings.
class LeaningRegistry {
 public:
  LeaningRegistry() = default;

  // The 51 outlets of the dataset, grouped by AllSides rating.
  static LeaningRegistry Default();
  // {"left": [domains...], "left-lean": [...], ...}
  static LeaningRegistry FromJson(const Json &j);
  Json ToJson() const;

  // Throws Error("DuplicateDomain") if the domain is already present with a
  // different leaning.
  void Add(std::string domain, Leaning leaning);

  // Exact match first, then without "www.", then parent domains.
  std::optional<Leaning> Lookup(std::string_view domain) const;

  bool CoversAllLeanings() const;
  size_t size() const { return domains_.size(); }

 private:
  std::map<std::string, Leaning> domains_;
};

// Host of a URL without port, lowercased ("https://www.x.com/a" -> "www.x.com").
std::string DomainOf(std::string_view url);

struct IngestReport {
  int64_t read = 0;
  int64_t parsed = 0;
  int64_t malformed = 0;
  int64_t unknown_domain = 0;

  Json ToJson() const;
};

struct IngestResult {
  std::vector<Article> articles;
  IngestReport report;
};

// Reads news-please style JSONL. Malformed lines are counted and skipped.
// Relative image paths resolve against `base_dir`; local files get their
// byte size from the filesystem unless the record states one.
IngestResult Ingest(std::istream &in, const LeaningRegistry &registry,
                    const std::filesystem::path &base_dir = {});
// Throws Error("UnreadableFile").
IngestResult IngestFile(const std::filesystem::path &path,
                        const LeaningRegistry &registry);

struct FilterConfig {
  double length_low_pct = 5.0;
  double length_high_pct = 95.0;
  double image_high_pct = 95.0;
  int64_t min_image_bytes = 5000;
  std::string language = "en";
};

struct FilterReport {
  int64_t articles_in = 0;
  int64_t articles_kept = 0;
  int64_t dropped_too_short = 0;
  int64_t dropped_too_long = 0;
  int64_t dropped_language = 0;
  int64_t length_low_cut = 0;
  int64_t length_high_cut = 0;

  int64_t images_in = 0;
  int64_t images_kept = 0;
  int64_t dropped_orphaned = 0;  // article dropped
  int64_t dropped_logo = 0;      // below min_image_bytes
  int64_t dropped_too_large = 0;
  int64_t dropped_not_primary = 0;
  int64_t image_size_cut = 0;

  Json ToJson() const;
};

struct FilterResult {
  std::vector<Article> articles;  // image_refs reduced to the primary image
  std::vector<ImageRef> images;
  FilterReport report;
};

// Nearest-rank percentile: the value at 1-based rank ceil(p/100 * N) of the
// sorted values (rank clamped to [1, N]). Requires non-empty input.
int64_t NearestRankPercentile(std::vector<int64_t> values, double pct);

// Length, language and image-size rules. Values equal to a cut survive.
// Each dropped item is counted under exactly one reason, checked in the
// order the report fields are declared. Throws Error("InvalidConfig") for
// bad bounds and Error("EmptyCorpus") when no article survives.
FilterResult FilterCorpus(std::span<const Article> articles,
                          std::span<const ImageRef> images,
                          const FilterConfig &cfg = {});

// All image refs of the articles, in order.
std::vector<ImageRef> CollectImages(std::span<const Article> articles);

struct EntityMention {
  std::string name;
  Sentiment sentiment = Sentiment::kNone;
};

// One article joined with its annotations; the input of every analytic.
struct AnalysisRecord {
  std::string item_id;
  std::optional<Leaning> leaning;
  int64_t word_count = 0;
  std::string text;
  std::optional<std::string> topic;
  std::optional<LabelSet> text_frames;
  std::optional<LabelSet> image_frames;
  std::optional<std::string> issue_frame;
  std::optional<EntityMention> text_entity;
  std::optional<EntityMention> image_entity;
};

// Lowercase, trimmed, whitespace-collapsed topic key.
std::string NormalizeTopic(std::string_view topic);

struct SubsetReport {
  int64_t in = 0;
  int64_t kept = 0;
  int64_t dropped_none_frames = 0;
  int64_t dropped_short = 0;
  int64_t dropped_topic = 0;
};

// Drops articles whose text frames are exactly {none}, with fewer than 100
// words, or on the topics "sports" and "media". Throws
// Error("MissingAnnotation") when text frames or topic are absent.
std::vector<AnalysisRecord> AnalysisSubset(std::span<const AnalysisRecord> in,
                                           SubsetReport *report = nullptr);

}  // namespace framelens

#endif  // FRAMELENS_CORPUS_H_
