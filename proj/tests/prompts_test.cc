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

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "framelens/annotate.h"
#include "framelens/prompts.h"
#include "framelens/util.h"
#include "support/test_util.h"

namespace framelens {
namespace {

std::string Golden(const std::string &name) {
  return ReadFile(testutil::TestDir() / "golden" / "prompts" / name);
}

AnnotationItem FixtureItem() {
  AnnotationItem item;
  item.item_id = "fixture";
  item.text = Golden("fixture_article.txt");
  item.image = ImagePayload{"\x89PNG", "image/png"};
  return item;
}

const std::vector<AnnotationTask> &AllTasks() {
  static const std::vector<AnnotationTask> tasks = {
      {TaskKind::kTopic, Modality::kText},
      {TaskKind::kGenericFrames, Modality::kText},
      {TaskKind::kIssueFrame, Modality::kText},
      {TaskKind::kEntitySentiment, Modality::kText},
      {TaskKind::kGenericFrames, Modality::kImage},
      {TaskKind::kEntitySentiment, Modality::kImage},
      {TaskKind::kCaption, Modality::kImage},
  };
  return tasks;
}

// Frozen checksums of the golden transcriptions.
const std::map<std::string, std::string> kGoldenSha = {
    {"fixture_article.txt", "4903e18dbbd51ed39adcd40bea7e2e7884717db51f546327ee9578afc51b40d5"},
    {"text_topic.user.txt", "4bcf23c0dba354a8b27dae8e4609a68bd6be6714bcba9201aaf795672a80830e"},
    {"text_generic_frames.user.txt", "a0b87f8b57476062316838381258c036868b3cf38fdefc841d17a5ac2f3bb4f0"},
    {"text_issue_frame.user.txt", "7e2d6e43c04422852ab1810dfce4a97640ce803034e22fb6079986eba27ab35d"},
    {"text_entity_sentiment.user.txt", "abf855741d2c547cd28a31e278d57091fd75171e7f3744d9cc60bbb96237b8ec"},
    {"image_generic_frames.user.txt", "f56b5575175772dfe2d72ef146620e9d796a08d49067b03c8e5aed7b9d9e3fb0"},
    {"image_entity_sentiment.user.txt", "81ec60e46d445d919ca6d71bac06837afdd18d957c6827ac8b928912e8929011"},
    {"image_caption.user.txt", "f9a795e063bdce97c24e8cd6808eaf82a1c727b7e80638de3a344e09b79eba52"},
    {"text_topic.system.txt", "4c48a34d1c73dbc2e11b1529b99584622077611c2784ae8e8367631a14da6a78"},
    {"image_generic_frames.system.txt", "713a50f33abbd987705f4d2ebb30a04628d5e924ed4674efd7889a4a5b823c24"},
};

TEST(Prompts, GoldenFilesArePinned) {
  for (const auto &[name, sha] : kGoldenSha) {
    EXPECT_EQ(Sha256Hex(Golden(name)), sha) << name;
  }
}

TEST(Prompts, RenderedMatchesGoldenByteForByte) {
  AnnotationItem item = FixtureItem();
  for (const AnnotationTask &task : AllTasks()) {
    PromptBundle b = BuildPrompt(item, task);
    std::string slug = TaskSlug(task);
    EXPECT_EQ(b.system_prompt, Golden(slug + ".system.txt")) << slug;
    EXPECT_EQ(b.user_prompt, Golden(slug + ".user.txt")) << slug;
    EXPECT_EQ(b.task, task);
    EXPECT_EQ(b.item_id, "fixture");
  }
}

TEST(Prompts, TextPromptsEndWithArticle) {
  AnnotationItem item = FixtureItem();
  for (const AnnotationTask &task : AllTasks()) {
    if (task.modality != Modality::kText) continue;
    PromptBundle b = BuildPrompt(item, task);
    std::string tail = std::string(prompts::kArticleHeader) + item.text;
    ASSERT_GE(b.user_prompt.size(), tail.size());
    EXPECT_EQ(b.user_prompt.substr(b.user_prompt.size() - tail.size()), tail);
    EXPECT_FALSE(b.image.has_value());
    EXPECT_EQ(b.sampling.max_tokens, 4000);
  }
}

TEST(Prompts, ImagePromptsCarryMarkerAndImage) {
  AnnotationItem item = FixtureItem();
  for (const AnnotationTask &task : AllTasks()) {
    if (task.modality != Modality::kImage) continue;
    PromptBundle b = BuildPrompt(item, task);
    EXPECT_NE(b.user_prompt.find(prompts::kImageMarker), std::string::npos);
    EXPECT_EQ(b.user_prompt.find(item.text), std::string::npos);
    ASSERT_TRUE(b.image.has_value());
    EXPECT_EQ(b.sampling.max_tokens, 1024);
    EXPECT_EQ(b.sampling.image_edge, 512);
    EXPECT_DOUBLE_EQ(b.sampling.temperature, 0.2);
  }
}

TEST(Prompts, FramesPromptCoversTaxonomy) {
  for (Modality m : {Modality::kText, Modality::kImage}) {
    PromptBundle b = BuildPrompt(FixtureItem(), {TaskKind::kGenericFrames, m});
    std::set<Frame> listed;
    std::istringstream lines(b.user_prompt);
    std::string line;
    while (std::getline(lines, line)) {
      size_t dash = line.find(" - ");
      if (dash == std::string::npos) continue;
      std::string name = line.substr(0, dash);
      for (std::string_view prefix : {"- ", "* "}) {
        if (name.starts_with(prefix)) name = name.substr(prefix.size());
      }
      if (auto f = Taxonomy::Get().TryNormalize(name)) listed.insert(*f);
    }
    EXPECT_EQ(listed.size(), static_cast<size_t>(kNumFrames)) << ModalityName(m);
  }
}

TEST(Prompts, Errors) {
  AnnotationItem no_image = FixtureItem();
  no_image.image.reset();
  try {
    BuildPrompt(no_image, {TaskKind::kGenericFrames, Modality::kImage});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "MissingImage");
  }
  EXPECT_THROW(BuildPrompt(FixtureItem(), {TaskKind::kTopic, Modality::kImage}), UnsupportedTask);
  EXPECT_THROW(BuildPrompt(FixtureItem(), {TaskKind::kIssueFrame, Modality::kImage}),
               UnsupportedTask);
  EXPECT_THROW(BuildPrompt(FixtureItem(), {TaskKind::kCaption, Modality::kText}), UnsupportedTask);
}

}  // namespace
}  // namespace framelens
