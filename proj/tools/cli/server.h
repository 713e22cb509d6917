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

#ifndef FRAMELENS_CLI_SERVER_H_
#define FRAMELENS_CLI_SERVER_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "framelens/store.h"

namespace framelens::cli {

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> static_dir;
  std::string output = "human_image_frames";  // annotations/<output>.jsonl
  std::map<std::string, double> strata_weights;  // topic -> weight, default 1
};

// Parses "politics=2,crime=1". Throws Error("InvalidConfig").
std::map<std::string, double> ParseStrataWeights(std::string_view spec);

struct ApiReply {
  int status = 200;
  Json body;  // null for 204
};

// Endpoint logic, independent of the HTTP layer. Thread-safe.
class AnnotationService {
 public:
  AnnotationService(const std::filesystem::path &root, ServeOptions options);

  ApiReply Taxonomy() const;
  // Next item the annotator has not labeled: the stratum with the lowest
  // labeled/weight ratio for that annotator wins, ties by stratum name, and
  // items within a stratum keep corpus order. 204 once exhausted.
  ApiReply Next(const std::string &annotator) const;
  ApiReply Submit(std::string_view body);
  ApiReply Progress() const;

  size_t item_count() const { return items_.size(); }

 private:
  struct Item {
    std::string id;
    std::string stratum;
    std::string image_path;
    Json metadata;
  };

  std::filesystem::path root_;
  ServeOptions options_;
  std::vector<Item> items_;
  std::map<std::string, size_t> index_;
  std::vector<std::string> strata_;
  mutable std::mutex mu_;
  std::optional<Dataset> ds_;
  std::set<std::pair<std::string, std::string>> done_;  // (annotator, item)
};

// HTTP front end over AnnotationService.
class AnnotationServer {
 public:
  AnnotationServer(const std::filesystem::path &root, ServeOptions options);
  ~AnnotationServer();

  // Binds and serves on a background thread; returns the bound port.
  int Start();
  // Binds and serves on the calling thread until Stop().
  void Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace framelens::cli

#endif  // FRAMELENS_CLI_SERVER_H_
