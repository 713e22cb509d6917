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

#ifndef FRAMELENS_ANNOTATE_H_
#define FRAMELENS_ANNOTATE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framelens/backend.h"
#include "framelens/corpus.h"
#include "framelens/schema.h"

namespace framelens {

// Input of one annotation call: the article text for text tasks, the image
// for image tasks.
struct AnnotationItem {
  std::string item_id;
  std::string text;
  std::optional<ImagePayload> image;
};

class UnsupportedTask : public Error {
 public:
  explicit UnsupportedTask(AnnotationTask task)
      : Error("UnsupportedTask", "task " + TaskSlug(task) + " not supported") {}
};

// Renders the system and user prompt for the task. Text prompts end with the
// article body; image prompts contain the image marker. Throws
// UnsupportedTask, or Error("MissingImage") for an image task without one.
PromptBundle BuildPrompt(const AnnotationItem &item, AnnotationTask task);

enum class ParseStatus : uint8_t { kOk, kRepaired, kFailed };
std::string_view ParseStatusName(ParseStatus s);

enum class AnnotatorKind : uint8_t { kModel, kHuman };

struct Annotator {
  AnnotatorKind kind = AnnotatorKind::kModel;
  std::string id;
};

struct EntityAnnotation {
  std::string name;
  Sentiment sentiment = Sentiment::kNone;
  std::string reason;
};

struct AnnotationRecord {
  std::string item_id;
  AnnotationTask task{TaskKind::kGenericFrames, Modality::kText};
  LabelSet labels;  // generic_frames only
  std::optional<std::string> topic;
  std::optional<std::string> issue_frame;
  std::optional<EntityAnnotation> entity;
  std::optional<std::string> caption;
  std::string justification;
  Annotator annotator;
  std::string raw_response;
  ParseStatus parse_status = ParseStatus::kFailed;
  std::string error;  // set when parse_status is kFailed
};

Json RecordToJson(const AnnotationRecord &r);
AnnotationRecord RecordFromJson(const Json &j);

// Finds the first balanced {...} object in `raw`, or nullopt.
std::optional<std::string> ExtractJsonObject(std::string_view raw);

// Applies the repair heuristics (trailing commas, unterminated bracketed
// list strings, unescaped interior quotes, single-quoted keys). Returns the
// repaired text; callers re-parse it.
std::string RepairJson(std::string_view text);

// Splits a frames-list string such as "[Economic, Law and order, crime and
// justice]" into labels, rejoining comma-split pieces that only make sense
// together.
std::vector<std::string> SplitLabelList(std::string_view text);

// Never throws. Clean JSON yields kOk, JSON found only after stripping prose
// or repairing yields kRepaired, anything else kFailed with `raw_response`
// preserved and labels left empty.
AnnotationRecord ParseResponse(std::string_view raw, AnnotationTask task,
                               std::string item_id = {});

struct BatchOptions {
  int concurrency = 4;
  RetryPolicy retry;
  // Extra calls after an unparsable reply.
  int max_reasks = 2;
  // The batch aborts once more than this fraction of items hit
  // BackendUnavailable.
  double max_unavailable_fraction = 0.5;
  std::string annotator_id;  // defaults to backend.model_id()
  // Called after each finished item with (done, total).
  std::function<void(size_t, size_t)> progress;
};

struct BatchSummary {
  int64_t total = 0;
  int64_t ok = 0;
  int64_t repaired = 0;
  int64_t failed = 0;
  int64_t unavailable = 0;
  int64_t backend_calls = 0;

  Json ToJson() const;
};

struct BatchResult {
  std::vector<AnnotationRecord> records;  // input order
  BatchSummary summary;
};

// At most `concurrency` calls are in flight. Each item yields exactly one
// record. Throws Error("InvalidConfig") for concurrency < 1 and
// Error("BatchAborted") when backend failures exceed the allowed fraction.
BatchResult RunBatch(std::span<const AnnotationItem> items,
                     AnnotationTask task, Backend &backend,
                     const BatchOptions &options = {});

}  // namespace framelens

#endif  // FRAMELENS_ANNOTATE_H_
