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

#include "framelens/annotate.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <mutex>
#include <regex>
#include <thread>

#include "framelens/prompts.h"
#include "framelens/util.h"

namespace framelens {
namespace {

std::string FoldKey(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '-' || c == ' ') c = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// Looks up the first of `keys` present in the object, comparing keys with
// hyphens, spaces and underscores treated alike.
const Json *FindField(const Json &obj, std::initializer_list<std::string_view> keys) {
  for (std::string_view want : keys) {
    std::string folded = FoldKey(want);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (FoldKey(it.key()) == folded) return &it.value();
    }
  }
  return nullptr;
}

std::string StripQuotes(std::string_view s) {
  std::string t = Trim(s);
  while (t.size() >= 1 && (t.front() == '"' || t.front() == '\'')) t.erase(0, 1);
  while (!t.empty() && (t.back() == '"' || t.back() == '\'')) t.pop_back();
  return Trim(t);
}

std::string JsonText(const Json &v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return {};
  return v.dump();
}

// Fills the task-specific fields; returns an error message on failure.
std::optional<std::string> FillFields(const Json &obj, AnnotationRecord *rec) {
  switch (rec->task.kind) {
    case TaskKind::kGenericFrames: {
      const Json *frames = FindField(obj, {"frames-list", "frames", "frame_name"});
      if (!frames || frames->is_null()) return "missing frames-list";
      std::vector<std::string> raw;
      if (frames->is_array()) {
        for (const Json &e : *frames) {
          if (!e.is_string()) return "non-string frame entry";
          std::string s = e.get<std::string>();
          if (Trim(s).starts_with("[")) {
            for (auto &part : SplitLabelList(s)) raw.push_back(part);
          } else {
            raw.push_back(StripQuotes(s));
          }
        }
      } else if (frames->is_string()) {
        raw = SplitLabelList(frames->get<std::string>());
      } else {
        return "frames-list has unexpected type";
      }
      try {
        rec->labels = NormalizeLabelSet(raw);
      } catch (const UnknownLabel &e) {
        return std::string(e.what());
      }
      if (const Json *r = FindField(obj, {"reason", "frame_justification"})) {
        rec->justification = JsonText(*r);
      }
      return std::nullopt;
    }
    case TaskKind::kTopic: {
      const Json *t = FindField(obj, {"topic"});
      if (!t || !t->is_string() || Trim(t->get<std::string>()).empty()) {
        return "missing topic";
      }
      rec->topic = CollapseWhitespace(t->get<std::string>());
      if (const Json *r = FindField(obj, {"topic_justification"})) {
        rec->justification = JsonText(*r);
      }
      return std::nullopt;
    }
    case TaskKind::kIssueFrame: {
      const Json *f = FindField(obj, {"issue_frame"});
      if (!f || !f->is_string()) return "missing issue_frame";
      std::string text = CollapseWhitespace(StripQuotes(f->get<std::string>()));
      int64_t words = WordCount(text);
      if (words < 1 || words > 5) return "issue_frame must have 1-5 words";
      rec->issue_frame = text;
      if (const Json *r = FindField(obj, {"issue_frame_justification"})) {
        rec->justification = JsonText(*r);
      }
      return std::nullopt;
    }
    case TaskKind::kEntitySentiment: {
      const Json *name = FindField(obj, {"entity-name", "entity"});
      const Json *sent = FindField(obj, {"sentiment"});
      if (!name || !name->is_string()) return "missing entity-name";
      std::string name_text = CollapseWhitespace(name->get<std::string>());
      if (name_text.empty()) return "empty entity-name";
      std::optional<Sentiment> s =
          sent && sent->is_string() ? ParseSentiment(sent->get<std::string>())
                                    : std::optional<Sentiment>(Sentiment::kNone);
      if (!s) return "sentiment must be positive, negative, neutral or none";
      EntityAnnotation e{name_text, *s, {}};
      if (const Json *r = FindField(obj, {"sentiment-reason", "reason"})) {
        e.reason = JsonText(*r);
      }
      rec->justification = e.reason;
      rec->entity = std::move(e);
      return std::nullopt;
    }
    case TaskKind::kCaption: {
      const Json *c = FindField(obj, {"caption"});
      if (!c || !c->is_string() || Trim(c->get<std::string>()).empty()) {
        return "missing caption";
      }
      rec->caption = Trim(c->get<std::string>());
      return std::nullopt;
    }
  }
  return "unsupported task";
}

std::optional<Json> ParseObject(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

// Escapes quotes that cannot terminate a string and raw control characters
// inside strings.
std::string EscapeInteriorQuotes(std::string_view s) {
  std::string out;
  bool in_string = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (!in_string) {
      out.push_back(c);
      if (c == '"') in_string = true;
      continue;
    }
    if (c == '\\' && i + 1 < s.size()) {
      out.push_back(c);
      out.push_back(s[++i]);
    } else if (c == '"') {
      size_t k = i + 1;
      while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
      bool terminates = k >= s.size() || s[k] == ',' || s[k] == '}' ||
                        s[k] == ']' || s[k] == ':';
      if (terminates) {
        out.push_back('"');
        in_string = false;
      } else {
        out += "\\\"";
      }
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\r') {
      out += "\\r";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

PromptBundle BuildPrompt(const AnnotationItem &item, AnnotationTask task) {
  if (!IsAllowed(task)) throw UnsupportedTask(task);
  namespace p = prompts;
  PromptBundle b;
  b.item_id = item.item_id;
  b.task = task;
  b.sampling = SamplingParams::For(task.modality);
  if (task.modality == Modality::kText) {
    b.system_prompt = p::kTextSystemPrompt;
    std::string user;
    switch (task.kind) {
      case TaskKind::kTopic:
        user = p::kTextTopicPrompt;
        break;
      case TaskKind::kGenericFrames:
        user = std::string(p::kTextFrames) + std::string(p::kTextFramesMultiplePrompt);
        break;
      case TaskKind::kIssueFrame:
        user = p::kTextIssuePrompt;
        break;
      case TaskKind::kEntitySentiment:
        user = p::kTextEntityPrompt;
        break;
      case TaskKind::kCaption:
        throw UnsupportedTask(task);
    }
    user += p::kTextPostPrompt;
    user += p::kArticleHeader;
    user += item.text;
    b.user_prompt = std::move(user);
    return b;
  }

  if (!item.image) {
    throw Error("MissingImage", "image task for " + item.item_id + " has no image");
  }
  b.system_prompt = p::kImageSystemPrompt;
  switch (task.kind) {
    case TaskKind::kGenericFrames:
      b.user_prompt = std::string(p::kImageFramingPrompt) +
                      std::string(p::kImageFrames) +
                      std::string(p::kImageFramesTaskPrompt);
      break;
    case TaskKind::kEntitySentiment:
      b.user_prompt = p::kImageEntityPrompt;
      break;
    case TaskKind::kCaption:
      b.user_prompt = p::kImageCaptionPrompt;
      break;
    default:
      throw UnsupportedTask(task);
  }
  b.image = item.image;
  return b;
}

std::string_view ParseStatusName(ParseStatus s) {
  switch (s) {
    case ParseStatus::kOk:
      return "ok";
    case ParseStatus::kRepaired:
      return "repaired";
    case ParseStatus::kFailed:
      return "failed";
  }
  return "failed";
}

Json RecordToJson(const AnnotationRecord &r) {
  Json j{{"item_id", r.item_id},
         {"task", TaskKindName(r.task.kind)},
         {"modality", ModalityName(r.task.modality)},
         {"annotator",
          {{"kind", r.annotator.kind == AnnotatorKind::kModel ? "model" : "human"},
           {"id", r.annotator.id}}},
         {"parse_status", ParseStatusName(r.parse_status)}};
  if (r.task.kind == TaskKind::kGenericFrames) j["labels"] = LabelSetToJson(r.labels);
  if (r.topic) j["topic"] = *r.topic;
  if (r.issue_frame) j["issue_frame"] = *r.issue_frame;
  if (r.entity) {
    j["entity"] = {{"name", r.entity->name},
                   {"sentiment", SentimentName(r.entity->sentiment)},
                   {"reason", r.entity->reason}};
  }
  if (r.caption) j["caption"] = *r.caption;
  j["justification"] = r.justification;
  if (!r.error.empty()) j["error"] = r.error;
  j["raw_response"] = r.raw_response;
  return j;
}

AnnotationRecord RecordFromJson(const Json &j) {
  AnnotationRecord r;
  r.item_id = j.at("item_id").get<std::string>();
  auto kind = ParseTaskKind(j.at("task").get<std::string>());
  auto modality = ParseModality(j.value("modality", "text"));
  if (!kind || !modality) throw Error("SchemaViolation", "bad task in record");
  r.task = {*kind, *modality};
  if (j.contains("annotator")) {
    const Json &a = j["annotator"];
    r.annotator.kind = a.value("kind", "model") == "human" ? AnnotatorKind::kHuman
                                                            : AnnotatorKind::kModel;
    r.annotator.id = a.value("id", "");
  }
  std::string status = j.value("parse_status", "ok");
  r.parse_status = status == "ok"         ? ParseStatus::kOk
                   : status == "repaired" ? ParseStatus::kRepaired
                                          : ParseStatus::kFailed;
  if (j.contains("labels")) r.labels = LabelSetFromJson(j["labels"]);
  if (j.contains("topic")) r.topic = j["topic"].get<std::string>();
  if (j.contains("issue_frame")) r.issue_frame = j["issue_frame"].get<std::string>();
  if (j.contains("entity")) {
    const Json &e = j["entity"];
    r.entity = EntityAnnotation{e.value("name", ""),
                                ParseSentiment(e.value("sentiment", "none"))
                                    .value_or(Sentiment::kNone),
                                e.value("reason", "")};
  }
  if (j.contains("caption")) r.caption = j["caption"].get<std::string>();
  r.justification = j.value("justification", "");
  r.error = j.value("error", "");
  r.raw_response = j.value("raw_response", "");
  return r;
}

std::optional<std::string> ExtractJsonObject(std::string_view raw) {
  size_t start = raw.find('{');
  if (start == std::string_view::npos) return std::nullopt;
  // String-aware scan first.
  int depth = 0;
  bool in_string = false;
  for (size_t i = start; i < raw.size(); ++i) {
    char c = raw[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      return std::string(raw.substr(start, i - start + 1));
    }
  }
  // Unbalanced quotes: count braces only.
  depth = 0;
  for (size_t i = start; i < raw.size(); ++i) {
    if (raw[i] == '{') ++depth;
    if (raw[i] == '}' && --depth == 0) {
      return std::string(raw.substr(start, i - start + 1));
    }
  }
  size_t last = raw.rfind('}');
  if (last != std::string_view::npos && last > start) {
    return std::string(raw.substr(start, last - start + 1));
  }
  return std::nullopt;
}

std::string RepairJson(std::string_view text) {
  std::string s(text);
  if (s.find('"') == std::string::npos && s.find('\'') != std::string::npos) {
    std::replace(s.begin(), s.end(), '\'', '"');
  }
  // "key": "[a, b], "next" -> "key": "[a, b]", "next"
  static const std::regex kOpenList(R"re(:\s*"\[([^\]"]*)\](\s*[,}]))re");
  s = std::regex_replace(s, kOpenList, R"(: "[$1]"$2)");
  // "key": [a, b]" -> "key": "[a, b]"
  static const std::regex kOpenListStart(R"re(:\s*\[([^\]"]*)\]")re");
  s = std::regex_replace(s, kOpenListStart, R"(: "[$1]")");
  static const std::regex kTrailingComma(R"re(,\s*([}\]]))re");
  s = std::regex_replace(s, kTrailingComma, "$1");
  return EscapeInteriorQuotes(s);
}

std::vector<std::string> SplitLabelList(std::string_view text) {
  std::string t = Trim(text);
  while (!t.empty() && (t.front() == '[' || t.front() == '"' || t.front() == '\'')) {
    t.erase(0, 1);
  }
  while (!t.empty() && (t.back() == ']' || t.back() == '"' || t.back() == '\'' ||
                        t.back() == '.')) {
    t.pop_back();
  }
  std::vector<std::string> pieces;
  size_t pos = 0;
  while (pos <= t.size()) {
    size_t comma = t.find(',', pos);
    if (comma == std::string::npos) comma = t.size();
    std::string piece = StripQuotes(std::string_view(t).substr(pos, comma - pos));
    if (!piece.empty()) pieces.push_back(piece);
    pos = comma + 1;
  }
  const Taxonomy &tax = Taxonomy::Get();
  std::vector<std::string> out;
  size_t i = 0;
  while (i < pieces.size()) {
    size_t taken = 0;
    for (size_t j = pieces.size(); j > i; --j) {
      std::string joined = pieces[i];
      for (size_t k = i + 1; k < j; ++k) joined += ", " + pieces[k];
      if (tax.TryNormalize(joined)) {
        out.push_back(joined);
        taken = j - i;
        break;
      }
    }
    if (taken == 0) {
      out.push_back(pieces[i]);
      taken = 1;
    }
    i += taken;
  }
  return out;
}

AnnotationRecord ParseResponse(std::string_view raw, AnnotationTask task,
                               std::string item_id) {
  AnnotationRecord rec;
  rec.item_id = std::move(item_id);
  rec.task = task;
  rec.raw_response = std::string(raw);

  std::optional<Json> obj = ParseObject(Trim(raw));
  ParseStatus status = ParseStatus::kOk;
  if (!obj) {
    status = ParseStatus::kRepaired;
    std::optional<std::string> candidate = ExtractJsonObject(raw);
    if (candidate) obj = ParseObject(*candidate);
    if (!obj && candidate) obj = ParseObject(RepairJson(*candidate));
    if (!obj) {
      std::string repaired = RepairJson(raw);
      if (auto c = ExtractJsonObject(repaired)) obj = ParseObject(*c);
    }
  }
  if (!obj) {
    rec.parse_status = ParseStatus::kFailed;
    rec.error = "no JSON object found";
    return rec;
  }
  if (auto err = FillFields(*obj, &rec)) {
    AnnotationRecord failed;
    failed.item_id = std::move(rec.item_id);
    failed.task = task;
    failed.raw_response = std::move(rec.raw_response);
    failed.parse_status = ParseStatus::kFailed;
    failed.error = *err;
    return failed;
  }
  rec.parse_status = status;
  return rec;
}

Json BatchSummary::ToJson() const {
  return Json{{"total", total},         {"ok", ok},
              {"repaired", repaired},   {"failed", failed},
              {"unavailable", unavailable}, {"backend_calls", backend_calls}};
}

BatchResult RunBatch(std::span<const AnnotationItem> items, AnnotationTask task,
                     Backend &backend, const BatchOptions &options) {
  if (options.concurrency < 1) {
    throw Error("InvalidConfig", "concurrency must be at least 1");
  }
  if (!IsAllowed(task)) throw UnsupportedTask(task);
  const size_t n = items.size();
  const std::string annotator_id =
      options.annotator_id.empty() ? backend.model_id() : options.annotator_id;
  const auto abort_threshold =
      static_cast<int64_t>(options.max_unavailable_fraction * static_cast<double>(n));

  std::vector<AnnotationRecord> records(n);
  std::atomic<size_t> next{0};
  std::atomic<int64_t> unavailable{0};
  std::atomic<int64_t> calls{0};
  std::atomic<bool> aborted{false};
  std::mutex progress_mu;
  size_t done = 0;

  auto process = [&](size_t index) {
    const AnnotationItem &item = items[index];
    AnnotationRecord rec;
    try {
      PromptBundle bundle = BuildPrompt(item, task);
      for (int ask = 0; ask <= options.max_reasks; ++ask) {
        int attempts = 0;
        std::string raw;
        try {
          raw = CallBackend(bundle, backend, options.retry, &attempts);
        } catch (...) {
          calls += attempts;
          throw;
        }
        calls += attempts;
        rec = ParseResponse(raw, task, item.item_id);
        if (rec.parse_status != ParseStatus::kFailed) break;
      }
    } catch (const BackendUnavailable &e) {
      rec = AnnotationRecord{};
      rec.error = std::string("BackendUnavailable: ") + e.what();
      if (++unavailable > abort_threshold) aborted = true;
    } catch (const Error &e) {
      rec = AnnotationRecord{};
      rec.error = e.kind() + ": " + e.what();
    }
    rec.item_id = item.item_id;
    rec.task = task;
    rec.annotator = Annotator{AnnotatorKind::kModel, annotator_id};
    if (rec.parse_status == ParseStatus::kFailed) rec.labels = LabelSet{};
    records[index] = std::move(rec);
    if (options.progress) {
      std::lock_guard lock(progress_mu);
      options.progress(++done, n);
    }
  };

  auto worker = [&] {
    while (!aborted) {
      size_t index = next.fetch_add(1);
      if (index >= n) return;
      process(index);
    }
  };

  const size_t workers = std::min<size_t>(static_cast<size_t>(options.concurrency), n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (aborted) {
    throw Error("BatchAborted",
                std::to_string(unavailable.load()) + " of " + std::to_string(n) +
                    " items could not reach the backend");
  }

  BatchResult result;
  result.summary.total = static_cast<int64_t>(n);
  result.summary.unavailable = unavailable;
  result.summary.backend_calls = calls;
  for (const AnnotationRecord &r : records) {
    switch (r.parse_status) {
      case ParseStatus::kOk:
        ++result.summary.ok;
        break;
      case ParseStatus::kRepaired:
        ++result.summary.repaired;
        break;
      case ParseStatus::kFailed:
        ++result.summary.failed;
        break;
    }
  }
  result.records = std::move(records);
  return result;
}

}  // namespace framelens
