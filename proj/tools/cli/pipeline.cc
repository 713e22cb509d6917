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

#include "pipeline.h"

#include <cctype>

#include "framelens/util.h"

namespace framelens::cli {
namespace fs = std::filesystem;

void AdoptImages(const fs::path &root, std::vector<Article> *articles) {
  fs::create_directories(root / "images");
  for (Article &a : *articles) {
    for (ImageRef &ref : a.image_refs) {
      if (!ref.local_path) continue;
      std::string bytes = ReadFile(*ref.local_path);
      std::string ext = fs::path(*ref.local_path).extension().string();
      std::string rel = "images/" + Sha256Hex(bytes).substr(0, 24) + ToLower(ext);
      if (!fs::exists(root / rel)) WriteFileAtomic(root / rel, bytes);
      ref.local_path = rel;
    }
  }
}

std::vector<Article> LoadArticles(const Dataset &ds) {
  if (!ds.Has(StoreKind::kArticles)) {
    throw Error("MissingData", "no filtered articles; run ingest and filter first");
  }
  std::vector<Article> out;
  for (const Json &j : ds.Read(StoreKind::kArticles)) out.push_back(ArticleFromJson(j));
  return out;
}

std::string MediaTypeOf(std::string_view b) {
  if (b.starts_with("\x89PNG")) return "image/png";
  if (b.starts_with("\xFF\xD8\xFF")) return "image/jpeg";
  if (b.starts_with("GIF8")) return "image/gif";
  if (b.size() > 12 && b.substr(0, 4) == "RIFF" && b.substr(8, 4) == "WEBP") {
    return "image/webp";
  }
  return "application/octet-stream";
}

std::vector<AnnotationItem> BuildItems(const Dataset &ds, const std::vector<Article> &articles,
                                       Modality modality) {
  std::vector<AnnotationItem> items;
  for (const Article &a : articles) {
    AnnotationItem item;
    item.item_id = a.id;
    if (modality == Modality::kText) {
      item.text = a.maintext;
    } else {
      if (a.image_refs.empty() || !a.image_refs.front().local_path) continue;
      fs::path p = ds.root() / *a.image_refs.front().local_path;
      if (!fs::exists(p)) continue;
      std::string bytes = ReadFile(p);
      std::string media = MediaTypeOf(bytes);
      item.image = ImagePayload{std::move(bytes), std::move(media)};
    }
    items.push_back(std::move(item));
  }
  return items;
}

TaskRecords LoadTaskRecords(const Dataset &ds, AnnotationTask task) {
  TaskRecords out;
  std::string name = TaskSlug(task);
  if (!ds.Has(StoreKind::kAnnotations, name)) return out;
  for (const Json &j : ds.Read(StoreKind::kAnnotations, name)) {
    AnnotationRecord r = RecordFromJson(j);
    if (r.parse_status == ParseStatus::kFailed) {
      ++out.failed;
      continue;
    }
    out.by_item.insert_or_assign(r.item_id, std::move(r));
  }
  return out;
}

AnalysisInput LoadAnalysisInput(const Dataset &ds, bool subset) {
  using enum TaskKind;
  std::vector<Article> articles = LoadArticles(ds);
  TaskRecords topic = LoadTaskRecords(ds, {kTopic, Modality::kText});
  TaskRecords text_frames = LoadTaskRecords(ds, {kGenericFrames, Modality::kText});
  TaskRecords image_frames = LoadTaskRecords(ds, {kGenericFrames, Modality::kImage});
  TaskRecords issue = LoadTaskRecords(ds, {kIssueFrame, Modality::kText});
  TaskRecords text_entity = LoadTaskRecords(ds, {kEntitySentiment, Modality::kText});
  TaskRecords image_entity = LoadTaskRecords(ds, {kEntitySentiment, Modality::kImage});

  auto find = [](const TaskRecords &t, const std::string &id) -> const AnnotationRecord * {
    auto it = t.by_item.find(id);
    return it == t.by_item.end() ? nullptr : &it->second;
  };
  AnalysisInput in;
  in.articles = static_cast<int64_t>(articles.size());
  std::vector<AnalysisRecord> all;
  for (const Article &a : articles) {
    AnalysisRecord r;
    r.item_id = a.id;
    r.leaning = a.leaning;
    r.word_count = a.word_count;
    r.text = a.maintext;
    if (auto *t = find(topic, a.id); t && t->topic) r.topic = *t->topic;
    if (auto *t = find(text_frames, a.id)) r.text_frames = t->labels;
    if (auto *t = find(image_frames, a.id)) r.image_frames = t->labels;
    if (auto *t = find(issue, a.id); t && t->issue_frame) r.issue_frame = *t->issue_frame;
    if (auto *t = find(text_entity, a.id); t && t->entity) {
      r.text_entity = EntityMention{t->entity->name, t->entity->sentiment};
    }
    if (auto *t = find(image_entity, a.id); t && t->entity) {
      r.image_entity = EntityMention{t->entity->name, t->entity->sentiment};
    }
    if (!r.text_frames || !r.topic) {
      ++in.unannotated;
      if (subset) continue;
    }
    all.push_back(std::move(r));
  }
  if (subset) {
    SubsetReport rep;
    in.records = AnalysisSubset(all, &rep);
    in.subset = rep;
  } else {
    in.records = std::move(all);
  }
  return in;
}

std::string FileSlug(std::string_view s) {
  std::string out;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      out.push_back(static_cast<char>(std::tolower(u)));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "x" : out;
}

std::string ScopeSlug(const std::optional<std::string> &topic) {
  return topic ? "topic_" + FileSlug(*topic) : "global";
}

}  // namespace framelens::cli
