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

#ifndef FRAMELENS_STORE_H_
#define FRAMELENS_STORE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framelens/errors.h"
#include "framelens/schema.h"

namespace framelens {

inline constexpr std::string_view kStoreSchemaVersion = "1";

enum class StoreKind : uint8_t { kRaw, kArticles, kAnnotations, kGold, kReports };
std::string_view StoreKindName(StoreKind k);

class SchemaViolation : public Error {
 public:
  SchemaViolation(int64_t line, const std::string &msg)
      : Error("SchemaViolation", "record " + std::to_string(line) + ": " + msg), line_(line) {}
  int64_t line() const { return line_; }  // 1-based position in the batch

 private:
  int64_t line_;
};

struct FileEntry {
  int64_t count = 0;
  std::string sha256;
  bool operator==(const FileEntry &) const = default;
};

struct Manifest {
  std::string name;
  std::string created;
  std::string schema_version{kStoreSchemaVersion};
  std::map<std::string, FileEntry> files;  // keyed by path relative to the root

  int64_t Count(const std::string &rel) const;
  Json ToJson() const;
  static Manifest FromJson(const Json &j);
};

// Relative path of a record file: "articles.jsonl", "raw/<name>.jsonl",
// "annotations/<name>.jsonl", "gold/<name>.jsonl", or "reports/<name>"
// (reports keep their own extension). Throws Error("InvalidName").
std::string StorePath(StoreKind kind, std::string_view name = {});

// Throws SchemaViolation for a record that does not fit the kind.
void ValidateRecord(StoreKind kind, const Json &record, int64_t line);

// Exclusive, non-blocking flock on <root>/.lock. Throws
// Error("ConcurrentWriter") when another writer holds it.
class WriterLock {
 public:
  explicit WriterLock(const std::filesystem::path &root);
  ~WriterLock();
  WriterLock(const WriterLock &) = delete;
  WriterLock &operator=(const WriterLock &) = delete;

 private:
  int fd_ = -1;
};

struct JoinedView {
  std::string item_id;
  std::map<std::string, std::vector<Json>> parts;  // source path -> records

  Json ToJson() const;
};

struct JoinResult {
  std::vector<JoinedView> views;  // ordered by item_id
  // Base ids lacking a match in some other source (dropped by inner join).
  int64_t unmatched = 0;
  // Per non-base source, ids that never occur in the base.
  std::map<std::string, int64_t> orphans;
};

class Dataset {
 public:
  // Creates the directory layout and an empty manifest. Throws
  // Error("DatasetExists") if a manifest is already present.
  static Dataset Create(const std::filesystem::path &root, const std::string &name,
                        std::optional<std::string> created = {});
  // Rebuilds counts and hashes from the data files; any difference from the
  // stored manifest is listed in reconciled() and written back when the
  // writer lock is free. Throws Error("NotADataset").
  static Dataset Open(const std::filesystem::path &root);
  static Dataset OpenOrCreate(const std::filesystem::path &root, const std::string &name);

  const std::filesystem::path &root() const { return root_; }
  const Manifest &manifest() const { return manifest_; }
  const std::vector<std::string> &reconciled() const { return reconciled_; }

  bool Has(StoreKind kind, std::string_view name = {}) const;
  int64_t Count(StoreKind kind, std::string_view name = {}) const;

  // Validates every record first; nothing is written if one fails.
  const Manifest &Append(StoreKind kind, std::string_view name, std::span<const Json> records);
  std::vector<Json> Read(StoreKind kind, std::string_view name = {}) const;
  std::vector<Json> ReadPath(const std::string &rel) const;

  // Replaces a report file atomically.
  const Manifest &WriteReport(std::string_view file_name, std::string_view content);
  std::string ReadReport(std::string_view file_name) const;

  // Joins record files (paths relative to the root) by item_id; records
  // without "item_id" fall back to "id". The first path is the base.
  JoinResult Join(std::span<const std::string> rel_paths, bool left_join = false) const;

  // Runs between the data rename and the manifest write; lets tests model a
  // crash at that point.
  void set_before_manifest_hook(std::function<void()> hook) {
    before_manifest_ = std::move(hook);
  }

 private:
  explicit Dataset(std::filesystem::path root) : root_(std::move(root)) {}
  void CommitFile(const std::string &rel, const std::string &content);
  void SaveManifest() const;

  std::filesystem::path root_;
  Manifest manifest_;
  std::vector<std::string> reconciled_;
  std::function<void()> before_manifest_;
};

// Counts non-empty lines.
int64_t CountRecords(std::string_view content);

}  // namespace framelens

#endif  // FRAMELENS_STORE_H_
