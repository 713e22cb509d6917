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

#ifndef FRAMELENS_UTIL_H_
#define FRAMELENS_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "framelens/schema.h"

namespace framelens {

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

std::string Base64Encode(std::string_view data);

// Throws Error("UnreadableFile") when the file cannot be opened.
std::string ReadFile(const std::filesystem::path &path);

// Writes via a temporary sibling, fsync and rename.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view data);

// Serializes one JSON value per line. Every line ends with '\n'.
std::string ToJsonl(const std::vector<Json> &records);

// Parses JSONL; blank lines are skipped, malformed lines throw
// Error("MalformedJson") naming the 1-based line number.
std::vector<Json> ParseJsonl(std::string_view text);
std::vector<Json> ReadJsonl(const std::filesystem::path &path);

std::string Trim(std::string_view s);
// Trims and collapses internal whitespace runs to one space.
std::string CollapseWhitespace(std::string_view s);
std::string ToLower(std::string_view s);

// Shortest decimal text that round-trips to the same double.
std::string FormatDouble(double v);

// Quotes a CSV field when it contains a delimiter, quote or newline.
std::string CsvField(std::string_view s);

}  // namespace framelens

#endif  // FRAMELENS_UTIL_H_
