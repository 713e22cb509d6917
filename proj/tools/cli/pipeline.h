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

#ifndef FRAMELENS_CLI_PIPELINE_H_
#define FRAMELENS_CLI_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framelens/annotate.h"
#include "framelens/corpus.h"
#include "framelens/store.h"

namespace framelens::cli {

// Copies local images into <root>/images/ under content-addressed names and
// rewrites local_path relative to the dataset root.
void AdoptImages(const std::filesystem::path &root, std::vector<Article> *articles);

std::vector<Article> LoadArticles(const Dataset &ds);

// Annotation items for a task: article text for text tasks, the primary
// image for image tasks (articles without a readable image are skipped).
std::vector<AnnotationItem> BuildItems(const Dataset &ds, const std::vector<Article> &articles,
                                       Modality modality);

std::string MediaTypeOf(std::string_view bytes);

// Model annotation records of one task, keyed by item id; failed parses are
// left out and counted.
struct TaskRecords {
  std::map<std::string, AnnotationRecord> by_item;
  int64_t failed = 0;
};
TaskRecords LoadTaskRecords(const Dataset &ds, AnnotationTask task);

struct AnalysisInput {
  std::vector<AnalysisRecord> records;
  int64_t articles = 0;
  int64_t unannotated = 0;  // lacking text frames or topic
  std::optional<SubsetReport> subset;
};

// Joins articles with every available model annotation. With `subset` the
// analysis subset rules are applied to the annotated records.
AnalysisInput LoadAnalysisInput(const Dataset &ds, bool subset = true);

// "global" or a filesystem-safe topic slug.
std::string ScopeSlug(const std::optional<std::string> &topic);
std::string FileSlug(std::string_view s);

}  // namespace framelens::cli

#endif  // FRAMELENS_CLI_PIPELINE_H_
