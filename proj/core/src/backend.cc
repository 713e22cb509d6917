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

#include "framelens/backend.h"

#include <algorithm>
#include <thread>

#include "framelens/prompts.h"
#include "framelens/util.h"
#include "httplib.h"

namespace framelens {

SamplingParams SamplingParams::For(Modality modality) {
  SamplingParams p;
  p.max_tokens = modality == Modality::kText ? 4000 : 1024;
  return p;
}

Json BuildChatRequest(const PromptBundle &bundle, const std::string &model) {
  Json messages = Json::array();
  messages.push_back({{"role", "system"}, {"content", bundle.system_prompt}});
  if (!bundle.image) {
    messages.push_back({{"role", "user"}, {"content", bundle.user_prompt}});
  } else {
    Json image_part{
        {"type", "image_url"},
        {"image_url",
         {{"url", "data:" + bundle.image->media_type + ";base64," +
                      Base64Encode(bundle.image->bytes)}}}};
    Json parts = Json::array();
    std::string_view user = bundle.user_prompt;
    size_t marker = user.find(prompts::kImageMarker);
    if (marker == std::string_view::npos) {
      parts.push_back({{"type", "text"}, {"text", user}});
      parts.push_back(std::move(image_part));
    } else {
      std::string_view before = user.substr(0, marker);
      std::string_view after = user.substr(marker + prompts::kImageMarker.size());
      if (!before.empty()) parts.push_back({{"type", "text"}, {"text", before}});
      parts.push_back(std::move(image_part));
      if (!after.empty()) parts.push_back({{"type", "text"}, {"text", after}});
    }
    messages.push_back({{"role", "user"}, {"content", std::move(parts)}});
  }
  return Json{{"model", model},
              {"messages", std::move(messages)},
              {"temperature", bundle.sampling.temperature},
              {"max_tokens", bundle.sampling.max_tokens}};
}

std::string ExtractChatContent(const Json &response) {
  try {
    const Json &content = response.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    // Some servers return content parts.
    std::string out;
    for (const Json &part : content) {
      if (part.value("type", "") == "text") out += part.value("text", "");
    }
    return out;
  } catch (const Json::exception &) {
    throw TransientBackendError("response has no choices[0].message.content");
  }
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {}

std::string HttpBackend::Complete(const PromptBundle &bundle) {
  // Split "http://host:port/prefix" into the client origin and path prefix.
  std::string origin = config_.base_url;
  std::string prefix;
  size_t scheme = origin.find("://");
  size_t slash = origin.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash != std::string::npos) {
    prefix = origin.substr(slash);
    origin.resize(slash);
  }
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  if (prefix.ends_with("/v1")) prefix.resize(prefix.size() - 3);

  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  std::string body = BuildChatRequest(bundle, config_.model).dump();
  auto res = client.Post(prefix + "/v1/chat/completions", headers, body,
                         "application/json");
  if (!res) {
    throw TransientBackendError("request to " + config_.base_url + " failed: " +
                                httplib::to_string(res.error()));
  }
  if (res->status == 413) {
    throw PayloadTooLarge("backend rejected payload of " +
                          std::to_string(body.size()) + " bytes");
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransientBackendError("backend returned HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw Error("BackendRejected", "backend returned HTTP " + std::to_string(res->status) +
                                       ": " + res->body.substr(0, 200));
  }
  Json parsed = Json::parse(res->body, nullptr, false);
  if (parsed.is_discarded()) throw TransientBackendError("backend returned invalid JSON");
  return ExtractChatContent(parsed);
}

std::string CallBackend(const PromptBundle &bundle, Backend &backend,
                        const RetryPolicy &policy, int *attempts) {
  int calls = 0;
  if (attempts) *attempts = 0;
  const PromptBundle *to_send = &bundle;
  PromptBundle resized;
  if (bundle.image) {
    resized = bundle;
    resized.image = ResizeImage(*bundle.image, bundle.sampling.image_edge);
    if (resized.image->bytes.size() > policy.max_image_bytes) {
      throw PayloadTooLarge("image payload of " +
                            std::to_string(resized.image->bytes.size()) +
                            " bytes exceeds limit");
    }
    to_send = &resized;
  }
  auto backoff = policy.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      ++calls;
      if (attempts) *attempts = calls;
      return backend.Complete(*to_send);
    } catch (const TransientBackendError &e) {
      if (attempt >= policy.max_retries) {
        throw BackendUnavailable(std::string(e.what()) + " (after " +
                                 std::to_string(calls) + " attempts)");
      }
    }
    std::this_thread::sleep_for(backoff);
    auto next = std::chrono::duration_cast<std::chrono::milliseconds>(
        backoff * policy.multiplier);
    backoff = std::min(next, policy.max_backoff);
  }
}

}  // namespace framelens
