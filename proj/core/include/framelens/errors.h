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

#ifndef FRAMELENS_ERRORS_H_
#define FRAMELENS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace framelens {

// All library failures derive from Error. kind() is a stable identifier
// (e.g. "UnknownLabel") that the CLI reports in its machine-readable error
// JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string &message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string &kind() const { return kind_; }

 private:
  std::string kind_;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(std::string raw, int index = -1)
      : Error("UnknownLabel", Describe(raw, index)),
        raw_(std::move(raw)),
        index_(index) {}

  const std::string &raw() const { return raw_; }
  // Position in the input list, or -1 for a single label.
  int index() const { return index_; }

 private:
  static std::string Describe(const std::string &raw, int index) {
    std::string msg = "unknown frame label '" + raw + "'";
    if (index >= 0) msg += " at index " + std::to_string(index);
    return msg;
  }

  std::string raw_;
  int index_;
};

}  // namespace framelens

#endif  // FRAMELENS_ERRORS_H_
