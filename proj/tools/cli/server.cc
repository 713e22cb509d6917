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

#include "server.h"

#include <algorithm>
#include <atomic>
#include <limits>

#include "framelens/util.h"
#include "httplib.h"
#include "pipeline.h"

namespace framelens::cli {
namespace fs = std::filesystem;
namespace {

ApiReply ErrorReply(int status, std::string_view kind, const std::string &message) {
  return {status, Json{{"error", kind}, {"message", message}}};
}

}  // namespace

std::map<std::string, double> ParseStrataWeights(std::string_view spec) {
  std::map<std::string, double> out;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view part = spec.substr(pos, end - pos);
    pos = end + 1;
    if (Trim(part).empty()) continue;
    size_t eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw Error("InvalidConfig", "strata weight '" + std::string(part) + "' lacks '='");
    }
    std::string topic = NormalizeTopic(part.substr(0, eq));
    double w = 0.0;
    try {
      w = std::stod(std::string(part.substr(eq + 1)));
    } catch (const std::exception &) {
      w = -1.0;
    }
    if (!(w > 0.0)) throw Error("InvalidConfig", "strata weight for '" + topic + "' must be > 0");
    out[topic] = w;
  }
  return out;
}

AnnotationService::AnnotationService(const fs::path &root, ServeOptions options)
    : root_(root), options_(std::move(options)) {
  ds_.emplace(Dataset::Open(root_));
  std::vector<Article> articles = LoadArticles(*ds_);
  TaskRecords topics = LoadTaskRecords(*ds_, {TaskKind::kTopic, Modality::kText});
  std::set<std::string> strata;
  for (const Article &a : articles) {
    if (a.image_refs.empty() || !a.image_refs.front().local_path) continue;
    std::string rel = *a.image_refs.front().local_path;
    if (!fs::exists(root_ / rel)) continue;
    Item item;
    item.id = a.id;
    auto t = topics.by_item.find(a.id);
    item.stratum = t != topics.by_item.end() && t->second.topic
                       ? NormalizeTopic(*t->second.topic)
                       : "unlabeled";
    item.image_path = rel;
    item.metadata = {{"title", a.title},
                     {"url", a.url},
                     {"source_domain", a.source_domain},
                     {"date_publish", a.date_publish},
                     {"leaning", a.leaning ? Json(LeaningName(*a.leaning)) : Json()},
                     {"topic", item.stratum}};
    index_[item.id] = items_.size();
    strata.insert(item.stratum);
    items_.push_back(std::move(item));
  }
  strata_.assign(strata.begin(), strata.end());
  if (ds_->Has(StoreKind::kAnnotations, options_.output)) {
    for (const Json &row : ds_->Read(StoreKind::kAnnotations, options_.output)) {
      done_.emplace(row.value("annotator_id", ""), row.value("item_id", ""));
    }
  }
}

ApiReply AnnotationService::Taxonomy() const { return {200, Taxonomy::Get().ToJson()}; }

ApiReply AnnotationService::Next(const std::string &annotator) const {
  if (Trim(annotator).empty()) {
    return ErrorReply(400, "MissingAnnotator", "query parameter 'annotator' is required");
  }
  std::lock_guard lock(mu_);
  std::map<std::string, int64_t> labeled;
  std::map<std::string, const Item *> first_pending;
  int64_t done = 0;
  for (const Item &item : items_) {
    if (done_.contains({annotator, item.id})) {
      ++labeled[item.stratum];
      ++done;
    } else if (!first_pending.contains(item.stratum)) {
      first_pending[item.stratum] = &item;
    }
  }
  const Item *pick = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const std::string &s : strata_) {
    auto it = first_pending.find(s);
    if (it == first_pending.end()) continue;
    auto w = options_.strata_weights.find(s);
    double weight = w == options_.strata_weights.end() ? 1.0 : w->second;
    double ratio = static_cast<double>(labeled[s]) / weight;
    if (ratio < best) {
      best = ratio;
      pick = it->second;
    }
  }
  if (!pick) return {204, Json()};
  std::string bytes = ReadFile(root_ / pick->image_path);
  return {200, Json{{"item_id", pick->id},
                    {"stratum", pick->stratum},
                    {"image", {{"media_type", MediaTypeOf(bytes)},
                               {"data_base64", Base64Encode(bytes)}}},
                    {"metadata", pick->metadata},
                    {"progress", {{"done", done}, {"total", items_.size()}}}}};
}

ApiReply AnnotationService::Submit(std::string_view body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) return ErrorReply(400, "MalformedJson", "request body is not JSON");
  if (!j.is_object() || !j.contains("item_id") || !j["item_id"].is_string() ||
      !j.contains("annotator_id") || !j["annotator_id"].is_string() ||
      !j.contains("labels") || !j["labels"].is_array()) {
    return ErrorReply(400, "SchemaViolation",
                      "body must be {item_id: string, annotator_id: string, labels: [string]}");
  }
  std::string item_id = j["item_id"].get<std::string>();
  std::string annotator = Trim(j["annotator_id"].get<std::string>());
  if (annotator.empty()) return ErrorReply(400, "SchemaViolation", "annotator_id is empty");
  std::vector<std::string> raw;
  for (const Json &l : j["labels"]) {
    if (!l.is_string()) return ErrorReply(400, "SchemaViolation", "labels must be strings");
    raw.push_back(l.get<std::string>());
  }
  if (!index_.contains(item_id)) {
    return ErrorReply(404, "UnknownItem", "no image item '" + item_id + "'");
  }
  if (raw.empty()) return ErrorReply(400, "EmptyLabels", "select at least one label");
  LabelSet labels;
  try {
    labels = NormalizeLabelSet(raw);
  } catch (const UnknownLabel &e) {
    ApiReply r = ErrorReply(400, "UnknownLabel", e.what());
    r.body["index"] = e.index();
    r.body["label"] = e.raw();
    return r;
  }
  Json row{{"item_id", item_id}, {"annotator_id", annotator}, {"labels", LabelSetToJson(labels)}};
  for (const char *key : {"started_at", "submitted_at"}) {
    if (j.contains(key) && j[key].is_string()) row[key] = j[key];
  }

  std::lock_guard lock(mu_);
  if (done_.contains({annotator, item_id})) {
    return ErrorReply(409, "DuplicateSubmission",
                      annotator + " already labeled " + item_id);
  }
  try {
    ds_->Append(StoreKind::kAnnotations, options_.output, std::span<const Json>(&row, 1));
  } catch (const Error &e) {
    if (e.kind() == "ConcurrentWriter") return ErrorReply(503, e.kind(), e.what());
    throw;
  }
  done_.emplace(annotator, item_id);
  return {200, Json{{"status", "ok"},
                    {"item_id", item_id},
                    {"annotator_id", annotator},
                    {"labels", row["labels"]}}};
}

ApiReply AnnotationService::Progress() const {
  std::lock_guard lock(mu_);
  std::map<std::string, int64_t> per_annotator;
  for (const auto &[annotator, item] : done_) {
    if (index_.contains(item)) ++per_annotator[annotator];
  }
  Json annotators = Json::object();
  for (const auto &[a, n] : per_annotator) {
    annotators[a] = {{"done", n}, {"remaining", static_cast<int64_t>(items_.size()) - n}};
  }
  Json strata = Json::object();
  for (const Item &item : items_) {
    strata[item.stratum] = strata.value(item.stratum, 0) + 1;
  }
  return {200, Json{{"total_items", items_.size()},
                    {"strata", std::move(strata)},
                    {"annotators", std::move(annotators)},
                    {"output", StorePath(StoreKind::kAnnotations, options_.output)}}};
}

struct AnnotationServer::Impl {
  Impl(const fs::path &root, ServeOptions opts) : service(root, opts), options(std::move(opts)) {}

  void Install() {
    auto send = [](httplib::Response &res, const ApiReply &r) {
      res.status = r.status;
      if (r.status != 204) res.set_content(r.body.dump(), "application/json");
    };
    auto guarded = [send](auto fn) {
      return [send, fn](const httplib::Request &req, httplib::Response &res) {
        try {
          send(res, fn(req));
        } catch (const Error &e) {
          send(res, ErrorReply(500, e.kind(), e.what()));
        } catch (const std::exception &e) {
          send(res, ErrorReply(500, "InternalError", e.what()));
        }
      };
    };
    server.Get("/api/taxonomy", guarded([this](const httplib::Request &) {
                 return service.Taxonomy();
               }));
    server.Get("/api/next", guarded([this](const httplib::Request &req) {
                 return service.Next(req.get_param_value("annotator"));
               }));
    server.Post("/api/annotations", guarded([this](const httplib::Request &req) {
                  return service.Submit(req.body);
                }));
    server.Get("/api/progress", guarded([this](const httplib::Request &) {
                 return service.Progress();
               }));
    if (options.static_dir) {
      if (!server.set_mount_point("/", options.static_dir->string())) {
        throw Error("InvalidConfig", "static directory " + options.static_dir->string() +
                                         " does not exist");
      }
    }
  }

  int Bind() {
    int port = options.port;
    if (port == 0) {
      port = server.bind_to_any_port(options.host);
    } else if (!server.bind_to_port(options.host, port)) {
      port = -1;
    }
    if (port < 0) {
      throw Error("BindFailed", "cannot bind " + options.host + ":" + std::to_string(options.port));
    }
    return port;
  }

  AnnotationService service;
  ServeOptions options;
  httplib::Server server;
  std::thread thread;
};

AnnotationServer::AnnotationServer(const fs::path &root, ServeOptions options)
    : impl_(std::make_unique<Impl>(root, std::move(options))) {
  impl_->Install();
}

AnnotationServer::~AnnotationServer() { Stop(); }

int AnnotationServer::Start() {
  int port = impl_->Bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void AnnotationServer::Run() {
  impl_->Bind();
  impl_->server.listen_after_bind();
}

void AnnotationServer::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace framelens::cli
