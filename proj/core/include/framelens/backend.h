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

#ifndef FRAMELENS_BACKEND_H_
#define FRAMELENS_BACKEND_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "framelens/errors.h"
#include "framelens/schema.h"

namespace framelens {

struct SamplingParams {
  double temperature = 0.2;
  int max_tokens = 4000;
  int image_edge = 512;  // images only

  // temperature 0.2; 4000 tokens for text, 1024 for images.
  static SamplingParams For(Modality modality);
};

struct ImagePayload {
  std::string bytes;
  std::string media_type;  // e.g. "image/png"
};

struct PromptBundle {
  std::string item_id;
  std::string system_prompt;
  std::string user_prompt;
  AnnotationTask task{TaskKind::kGenericFrames, Modality::kText};
  SamplingParams sampling;
  std::optional<ImagePayload> image;
};

// Retryable transport failure (connection error, HTTP 5xx or 429).
class TransientBackendError : public Error {
 public:
  explicit TransientBackendError(const std::string &msg)
      : Error("TransientBackendError", msg) {}
};

class BackendUnavailable : public Error {
 public:
  explicit BackendUnavailable(const std::string &msg)
      : Error("BackendUnavailable", msg) {}
};

class PayloadTooLarge : public Error {
 public:
  explicit PayloadTooLarge(const std::string &msg)
      : Error("PayloadTooLarge", msg) {}
};

// A chat-completion style model. Implementations must be safe to call from
// several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;

  // Returns the assistant message content. Throws TransientBackendError for
  // retryable failures.
  virtual std::string Complete(const PromptBundle &bundle) = 0;

  // Model identifier recorded as the annotator id.
  virtual std::string model_id() const = 0;
};

struct HttpBackendConfig {
  std::string base_url = "http://127.0.0.1:8000";  // scheme://host:port
  std::string model = "mistralai/Mistral-7B-Instruct-v0.3";
  std::string api_key;  // sent as a bearer token when non-empty
  std::chrono::seconds timeout{120};
};

// Speaks POST /v1/chat/completions.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  std::string Complete(const PromptBundle &bundle) override;
  std::string model_id() const override { return config_.model; }

 private:
  HttpBackendConfig config_;
};

// Request body for the chat-completions endpoint. Image prompts are split at
// the image marker into text and image_url (base64 data URL) parts.
Json BuildChatRequest(const PromptBundle &bundle, const std::string &model);
// choices[0].message.content; throws TransientBackendError when absent.
std::string ExtractChatContent(const Json &response);

// Offline stand-in with rule-based, fully deterministic replies. The reply
// depends only on the seed, the task and the prompt content.
class MockBackend : public Backend {
 public:
  explicit MockBackend(uint64_t seed = 0) : seed_(seed) {}

  std::string Complete(const PromptBundle &bundle) override;
  std::string model_id() const override { return "mock"; }

 private:
  uint64_t seed_;
};

// Adapts a callable; used for scripted test doubles.
class FunctionBackend : public Backend {
 public:
  using Fn = std::function<std::string(const PromptBundle &)>;
  FunctionBackend(Fn fn, std::string id = "function")
      : fn_(std::move(fn)), id_(std::move(id)) {}

  std::string Complete(const PromptBundle &bundle) override {
    return fn_(bundle);
  }
  std::string model_id() const override { return id_; }

 private:
  Fn fn_;
  std::string id_;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{250};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};
  // Largest image payload sent after downscaling.
  size_t max_image_bytes = 20u << 20;
};

// Downscales any image payload to image_edge x image_edge, then calls the
// backend, retrying TransientBackendError with exponential backoff. Throws
// BackendUnavailable once retries are exhausted and PayloadTooLarge when the
// image exceeds the policy limit. `attempts`, when given, receives the number
// of backend calls made.
std::string CallBackend(const PromptBundle &bundle, Backend &backend,
                        const RetryPolicy &policy = {},
                        int *attempts = nullptr);

// Decodes, resizes to edge x edge with bilinear sampling and re-encodes as
// PNG. Throws Error("InvalidImage") when the bytes cannot be decoded.
ImagePayload ResizeImage(const ImagePayload &image, int edge);

}  // namespace framelens

#endif  // FRAMELENS_BACKEND_H_
