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

#ifndef FRAMELENS_PROMPTS_H_
#define FRAMELENS_PROMPTS_H_

#include <string_view>

// Prompt fragments for the annotation tasks. Text is kept byte-for-byte,
// including the original typos; tests pin every fragment by checksum.
namespace framelens::prompts {

extern const std::string_view kImageSystemPrompt;
extern const std::string_view kImageEntityPrompt;
extern const std::string_view kImageFrames;
extern const std::string_view kImageFramingPrompt;
extern const std::string_view kImageFramesTaskPrompt;
extern const std::string_view kImageCaptionPrompt;

extern const std::string_view kTextSystemPrompt;
extern const std::string_view kTextTopicPrompt;
extern const std::string_view kTextEntityPrompt;
extern const std::string_view kTextFrames;
extern const std::string_view kTextFramesMultiplePrompt;
extern const std::string_view kTextIssuePrompt;
extern const std::string_view kTextPostPrompt;

// Marks where the image goes inside an image-task user prompt.
inline constexpr std::string_view kImageMarker = "<image>";
// Separates the instructions from the article body in text prompts.
inline constexpr std::string_view kArticleHeader = "\n\nArticle:\n";

}  // namespace framelens::prompts

#endif  // FRAMELENS_PROMPTS_H_
