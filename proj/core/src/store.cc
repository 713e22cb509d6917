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

#include "framelens/store.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <set>

#include "framelens/annotate.h"
#include "framelens/corpus.h"
#include "framelens/evaluate.h"
#include "framelens/util.h"

namespace framelens {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kManifestFile = "manifest.json";
constexpr std::string_view kLockFile = ".lock";

bool ValidName(std::string_view name) {
  if (name.empty() || name == "." || name == "..") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::string NowUtc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const std::string *StringField(const Json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return nullptr;
  return it->get_ptr<const std::string *>();
}

void RequireString(const Json &j, const char *key, int64_t line) {
  const std::string *s = StringField(j, key);
  if (!s || s->empty()) {
    throw SchemaViolation(line, std::string("missing string field '") + key + "'");
  }
}

// Human label rows and topic judgments share the annotations directory with
// model records.
void ValidateAnnotation(const Json &j, int64_t line) {
  RequireString(j, "item_id", line);
  if (j.contains("task")) {
    RecordFromJson(j);
  } else if (j.contains("judge_id")) {
    RequireString(j, "judge_id", line);
    if (!j.contains("acceptable") || !j["acceptable"].is_boolean()) {
      throw SchemaViolation(line, "judgment needs boolean 'acceptable'");
    }
  } else {
    RequireString(j, "annotator_id", line);
    if (!j.contains("labels")) throw SchemaViolation(line, "missing 'labels'");
    LabelSetFromJson(j["labels"]);
  }
}

std::string JoinKey(const Json &j) {
  if (const std::string *s = StringField(j, "item_id")) return *s;
  if (const std::string *s = StringField(j, "id")) return *s;
  return {};
}

}  // namespace

std::string_view StoreKindName(StoreKind k) {
  switch (k) {
    case StoreKind::kRaw: return "raw";
    case StoreKind::kArticles: return "articles";
    case StoreKind::kAnnotations: return "annotations";
    case StoreKind::kGold: return "gold";
    case StoreKind::kReports: return "reports";
  }
  return "";
}

int64_t CountRecords(std::string_view content) {
  int64_t n = 0;
  size_t pos = 0;
  while (pos < content.size()) {
    size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    if (!Trim(content.substr(pos, end - pos)).empty()) ++n;
    pos = end + 1;
  }
  return n;
}

int64_t Manifest::Count(const std::string &rel) const {
  auto it = files.find(rel);
  return it == files.end() ? 0 : it->second.count;
}

Json Manifest::ToJson() const {
  Json f = Json::object();
  for (const auto &[rel, e] : files) f[rel] = {{"count", e.count}, {"sha256", e.sha256}};
  return Json{{"name", name},
              {"created", created},
              {"schema_version", schema_version},
              {"taxonomy_version", Taxonomy::kVersion},
              {"files", std::move(f)}};
}

Manifest Manifest::FromJson(const Json &j) {
  Manifest m;
  try {
    m.name = j.at("name").get<std::string>();
    m.created = j.value("created", "");
    m.schema_version = j.value("schema_version", std::string(kStoreSchemaVersion));
    if (j.contains("files")) {
      for (const auto &[rel, e] : j["files"].items()) {
        m.files[rel] = {e.at("count").get<int64_t>(), e.at("sha256").get<std::string>()};
      }
    }
  } catch (const Json::exception &e) {
    throw Error("MalformedManifest", e.what());
  }
  return m;
}

std::string StorePath(StoreKind kind, std::string_view name) {
  if (kind == StoreKind::kArticles) return "articles.jsonl";
  if (!ValidName(name)) throw Error("InvalidName", "invalid file name '" + std::string(name) + "'");
  std::string dir(StoreKindName(kind));
  if (kind == StoreKind::kReports) return dir + "/" + std::string(name);
  return dir + "/" + std::string(name) + ".jsonl";
}

void ValidateRecord(StoreKind kind, const Json &record, int64_t line) {
  if (!record.is_object()) throw SchemaViolation(line, "record is not a JSON object");
  try {
    switch (kind) {
      case StoreKind::kRaw:
      case StoreKind::kArticles:
        RequireString(record, "id", line);
        ArticleFromJson(record);
        break;
      case StoreKind::kAnnotations:
        ValidateAnnotation(record, line);
        break;
      case StoreKind::kGold:
        RequireString(record, "item_id", line);
        GoldSetFromJson(record);
        break;
      case StoreKind::kReports:
        break;
    }
  } catch (const SchemaViolation &) {
    throw;
  } catch (const std::exception &e) {
    throw SchemaViolation(line, e.what());
  }
}

WriterLock::WriterLock(const fs::path &root) {
  fs::path p = root / kLockFile;
  fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error("UnwritableDataset", "cannot open " + p.string());
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw Error("ConcurrentWriter", "another writer holds " + p.string());
  }
}

WriterLock::~WriterLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

Json JoinedView::ToJson() const {
  Json p = Json::object();
  for (const auto &[src, recs] : parts) p[src] = recs;
  return Json{{"item_id", item_id}, {"parts", std::move(p)}};
}

Dataset Dataset::Create(const fs::path &root, const std::string &name,
                        std::optional<std::string> created) {
  if (fs::exists(root / kManifestFile)) {
    throw Error("DatasetExists", "dataset already exists at " + root.string());
  }
  for (StoreKind k : {StoreKind::kRaw, StoreKind::kAnnotations, StoreKind::kGold,
                      StoreKind::kReports}) {
    fs::create_directories(root / StoreKindName(k));
  }
  Dataset d(root);
  d.manifest_.name = name;
  d.manifest_.created = created ? *created : NowUtc();
  WriterLock lock(root);
  d.SaveManifest();
  return d;
}

Dataset Dataset::Open(const fs::path &root) {
  fs::path mpath = root / kManifestFile;
  if (!fs::exists(mpath)) throw Error("NotADataset", "no manifest at " + root.string());
  Dataset d(root);
  Json mj;
  try {
    mj = Json::parse(ReadFile(mpath));
  } catch (const Json::exception &e) {
    throw Error("MalformedManifest", e.what());
  }
  d.manifest_ = Manifest::FromJson(mj);

  std::map<std::string, FileEntry> actual;
  auto scan = [&](const std::string &rel) {
    std::string content = ReadFile(root / rel);
    bool report = rel.starts_with("reports/");
    actual[rel] = {report ? 1 : CountRecords(content), Sha256Hex(content)};
  };
  if (fs::exists(root / "articles.jsonl")) scan("articles.jsonl");
  for (StoreKind k : {StoreKind::kRaw, StoreKind::kAnnotations, StoreKind::kGold,
                      StoreKind::kReports}) {
    fs::path dir = root / StoreKindName(k);
    if (!fs::is_directory(dir)) continue;
    std::vector<std::string> names;
    for (const auto &e : fs::directory_iterator(dir)) {
      std::string fname = e.path().filename().string();
      if (!e.is_regular_file() || fname.ends_with(".tmp")) continue;
      if (k != StoreKind::kReports && !fname.ends_with(".jsonl")) continue;
      names.push_back(std::string(StoreKindName(k)) + "/" + fname);
    }
    std::sort(names.begin(), names.end());
    for (const std::string &rel : names) scan(rel);
  }

  std::set<std::string> keys;
  for (const auto &[rel, e] : actual) keys.insert(rel);
  for (const auto &[rel, e] : d.manifest_.files) keys.insert(rel);
  for (const std::string &rel : keys) {
    auto a = actual.find(rel);
    auto m = d.manifest_.files.find(rel);
    if (a != actual.end() && m != d.manifest_.files.end() && a->second == m->second) continue;
    d.reconciled_.push_back(rel);
  }
  if (!d.reconciled_.empty()) {
    d.manifest_.files = std::move(actual);
    try {
      WriterLock lock(root);
      d.SaveManifest();
    } catch (const Error &e) {
      if (e.kind() != "ConcurrentWriter") throw;
    }
  }
  return d;
}

Dataset Dataset::OpenOrCreate(const fs::path &root, const std::string &name) {
  if (fs::exists(root / kManifestFile)) return Open(root);
  return Create(root, name);
}

bool Dataset::Has(StoreKind kind, std::string_view name) const {
  return manifest_.files.contains(StorePath(kind, name));
}

int64_t Dataset::Count(StoreKind kind, std::string_view name) const {
  return manifest_.Count(StorePath(kind, name));
}

void Dataset::SaveManifest() const {
  WriteFileAtomic(root_ / kManifestFile, manifest_.ToJson().dump(2) + "\n");
}

void Dataset::CommitFile(const std::string &rel, const std::string &content) {
  fs::create_directories((root_ / rel).parent_path());
  WriteFileAtomic(root_ / rel, content);
  if (before_manifest_) before_manifest_();
  bool report = rel.starts_with("reports/");
  manifest_.files[rel] = {report ? 1 : CountRecords(content), Sha256Hex(content)};
  SaveManifest();
}

const Manifest &Dataset::Append(StoreKind kind, std::string_view name,
                                std::span<const Json> records) {
  if (kind == StoreKind::kReports) {
    throw Error("InvalidConfig", "reports are written with WriteReport");
  }
  std::string rel = StorePath(kind, name);
  int64_t line = 0;
  for (const Json &r : records) ValidateRecord(kind, r, ++line);

  WriterLock lock(root_);
  std::string content;
  if (fs::exists(root_ / rel)) {
    content = ReadFile(root_ / rel);
    if (!content.empty() && content.back() != '\n') content.push_back('\n');
  }
  for (const Json &r : records) {
    content += r.dump();
    content.push_back('\n');
  }
  CommitFile(rel, content);
  return manifest_;
}

std::vector<Json> Dataset::ReadPath(const std::string &rel) const {
  fs::path p = root_ / rel;
  if (!fs::exists(p)) throw Error("MissingData", "dataset has no " + rel);
  return ParseJsonl(ReadFile(p));
}

std::vector<Json> Dataset::Read(StoreKind kind, std::string_view name) const {
  return ReadPath(StorePath(kind, name));
}

const Manifest &Dataset::WriteReport(std::string_view file_name, std::string_view content) {
  std::string rel = StorePath(StoreKind::kReports, file_name);
  WriterLock lock(root_);
  CommitFile(rel, std::string(content));
  return manifest_;
}

std::string Dataset::ReadReport(std::string_view file_name) const {
  fs::path p = root_ / StorePath(StoreKind::kReports, file_name);
  if (!fs::exists(p)) throw Error("MissingData", "dataset has no report " + p.string());
  return ReadFile(p);
}

JoinResult Dataset::Join(std::span<const std::string> rel_paths, bool left_join) const {
  JoinResult out;
  if (rel_paths.empty()) return out;
  std::vector<std::map<std::string, std::vector<Json>>> sources;
  for (const std::string &rel : rel_paths) {
    std::map<std::string, std::vector<Json>> by_id;
    for (Json &r : ReadPath(rel)) {
      std::string key = JoinKey(r);
      if (!key.empty()) by_id[key].push_back(std::move(r));
    }
    sources.push_back(std::move(by_id));
  }
  const auto &base = sources[0];
  for (size_t s = 1; s < sources.size(); ++s) {
    int64_t orphans = 0;
    for (const auto &[id, recs] : sources[s]) {
      if (!base.contains(id)) ++orphans;
    }
    out.orphans[rel_paths[s]] = orphans;
  }
  for (const auto &[id, recs] : base) {
    JoinedView v;
    v.item_id = id;
    v.parts[rel_paths[0]] = recs;
    bool complete = true;
    for (size_t s = 1; s < sources.size(); ++s) {
      auto it = sources[s].find(id);
      if (it == sources[s].end()) {
        complete = false;
        continue;
      }
      v.parts[rel_paths[s]] = it->second;
    }
    if (!complete) ++out.unmatched;
    if (complete || left_join) out.views.push_back(std::move(v));
  }
  return out;
}

}  // namespace framelens
