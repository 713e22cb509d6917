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

#ifndef FRAMELENS_SCHEMA_H_
#define FRAMELENS_SCHEMA_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace framelens {

using Json = nlohmann::ordered_json;

// The fifteen generic frame dimensions of the Media Frames Corpus, with
// `kNone` standing for both "None" and "Other". The enumerator order is the
// canonical label order used for every matrix and serialized label list.
enum class Frame : uint8_t {
  kEconomic,
  kCapacityResources,
  kMorality,
  kFairness,
  kLegality,
  kPolicy,
  kCrime,
  kSecurity,
  kHealth,
  kQualityLife,
  kCulture,
  kPublicOpinion,
  kPolitical,
  kRegulation,
  kNone,
};

inline constexpr int kNumFrames = 15;

inline constexpr int FrameIndex(Frame f) { return static_cast<int>(f); }
inline constexpr Frame FrameAt(int index) { return static_cast<Frame>(index); }

struct FrameLabel {
  Frame frame;
  std::string_view canonical_id;
  std::string_view display_name;
  std::string_view description;
  std::vector<std::string_view> aliases;
};

// Set of frames backed by a bitmask. Iteration follows canonical order.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<Frame> frames) {
    for (Frame f : frames) Insert(f);
  }

  void Insert(Frame f) { bits_ |= Bit(f); }
  void Erase(Frame f) { bits_ &= static_cast<uint16_t>(~Bit(f)); }
  bool Contains(Frame f) const { return (bits_ & Bit(f)) != 0; }
  bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcount(bits_); }
  uint16_t bits() const { return bits_; }

  // True when the set is exactly {none}.
  bool IsNoneOnly() const { return bits_ == Bit(Frame::kNone); }

  std::vector<Frame> ToVector() const;

  friend LabelSet operator&(LabelSet a, LabelSet b) {
    return FromBits(a.bits_ & b.bits_);
  }
  friend LabelSet operator|(LabelSet a, LabelSet b) {
    return FromBits(a.bits_ | b.bits_);
  }
  // Set difference a \ b.
  friend LabelSet operator-(LabelSet a, LabelSet b) {
    return FromBits(a.bits_ & ~b.bits_);
  }
  friend bool operator==(LabelSet a, LabelSet b) = default;

  static LabelSet FromBits(unsigned bits) {
    LabelSet s;
    s.bits_ = static_cast<uint16_t>(bits & ((1u << kNumFrames) - 1));
    return s;
  }

 private:
  static constexpr uint16_t Bit(Frame f) {
    return static_cast<uint16_t>(1u << FrameIndex(f));
  }

  uint16_t bits_ = 0;
};

// Drops `none` when a substantive label is present; an empty set becomes
// {none}.
LabelSet CanonicalizeNone(LabelSet set);

// The fixed taxonomy. Immutable after construction.
class Taxonomy {
 public:
  static const Taxonomy &Get();

  static constexpr std::string_view kVersion = "1";

  const FrameLabel &label(Frame f) const { return labels_[FrameIndex(f)]; }
  const std::array<FrameLabel, kNumFrames> &labels() const { return labels_; }

  // Case, punctuation, hyphen and ampersand insensitive lookup against
  // canonical ids, display names and aliases. Throws UnknownLabel.
  Frame Normalize(std::string_view raw) const;
  std::optional<Frame> TryNormalize(std::string_view raw) const;

  // Exact canonical id lookup, e.g. "cap&res".
  std::optional<Frame> FromCanonicalId(std::string_view id) const;

  Json ToJson() const;

 private:
  Taxonomy();

  std::array<FrameLabel, kNumFrames> labels_;
  std::vector<std::pair<std::string, Frame>> folded_;  // sorted by key
};

// Folding used for alias matching: lowercase, '&' -> "and", hyphens,
// underscores and slashes -> space, other punctuation removed, whitespace
// collapsed and trimmed.
std::string FoldLabel(std::string_view raw);

inline Frame NormalizeLabel(std::string_view raw) {
  return Taxonomy::Get().Normalize(raw);
}

// Normalizes every element, collapses duplicates and applies
// CanonicalizeNone. Throws UnknownLabel carrying the offending index.
LabelSet NormalizeLabelSet(std::span<const std::string> raw);

std::string_view CanonicalId(Frame f);

// Serialized as an array of canonical ids in canonical order.
Json LabelSetToJson(LabelSet set);
// Accepts canonical ids or any alias.
LabelSet LabelSetFromJson(const Json &j);

// Parses an exported taxonomy document and checks it against the built-in
// table. Returns the frames in document order.
std::vector<Frame> ParseTaxonomyJson(const Json &doc);

// Publisher leaning ratings.
enum class Leaning : uint8_t { kLeft, kLeftLean, kCenter, kRightLean, kRight };
enum class CombinedLeaning : uint8_t { kLeft, kCenter, kRight };

inline constexpr int kNumCombinedLeanings = 3;

CombinedLeaning Combine(Leaning l);
std::string_view LeaningName(Leaning l);
std::string_view CombinedLeaningName(CombinedLeaning l);
// Accepts "left", "left-lean", "center", "right-lean", "right" (and
// "lean left"/"left leaning" style variants).
std::optional<Leaning> ParseLeaning(std::string_view raw);

enum class TaskKind : uint8_t {
  kTopic,
  kGenericFrames,
  kIssueFrame,
  kEntitySentiment,
  kCaption,
};
enum class Modality : uint8_t { kText, kImage };

struct AnnotationTask {
  TaskKind kind;
  Modality modality;

  friend bool operator==(const AnnotationTask &, const AnnotationTask &) =
      default;
};

// Text: topic, generic frames, issue frame, entity sentiment.
// Image: caption, generic frames, entity sentiment.
bool IsAllowed(AnnotationTask task);

std::string_view TaskKindName(TaskKind k);    // "generic_frames", ...
std::string_view TaskShortName(TaskKind k);   // "frames", ...
std::string_view ModalityName(Modality m);    // "text" / "image"
// Accepts both the long and the short task names.
std::optional<TaskKind> ParseTaskKind(std::string_view raw);
std::optional<Modality> ParseModality(std::string_view raw);

// e.g. "text_generic_frames"; used as the annotation file stem.
std::string TaskSlug(AnnotationTask task);

enum class Sentiment : uint8_t { kPositive, kNegative, kNeutral, kNone };

std::string_view SentimentName(Sentiment s);
// Case-insensitive; also accepts "None" with stray punctuation.
std::optional<Sentiment> ParseSentiment(std::string_view raw);
// +1 / -1 / 0; nullopt for kNone.
std::optional<int> SentimentScore(Sentiment s);

}  // namespace framelens

#endif  // FRAMELENS_SCHEMA_H_
