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

#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "framelens/store.h"
#include "framelens/util.h"
#include "support/test_util.h"
#include "support/toy_pipeline.h"

namespace framelens {
namespace {

using testutil::RunStage;
using testutil::StageResult;

// Runs the installed binary and returns its exit status.
int RunBinary(const std::string &args) {
  std::string cmd = std::string(FRAMELENS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string ErrorKind(const StageResult &r) {
  Json j = Json::parse(r.err, nullptr, false);
  return j.is_object() ? j.value("error", "") : "";
}

std::string Toy(const std::string &file) {
  return (testutil::SourceDir() / "data" / "toy" / file).string();
}

TEST(Cli, ExitCodes) {
  testutil::TempDir dir;
  EXPECT_EQ(RunBinary("frobnicate"), 2);
  EXPECT_EQ(RunBinary("--help"), 0);
  EXPECT_EQ(RunBinary("ingest"), 2);
  EXPECT_EQ(RunBinary("--data " + (dir / "none").string() + " filter"), 1);
}

TEST(Cli, SummaryFormats) {
  testutil::TempDir dir;
  std::ostringstream out, err;
  int code = cli::RunCli({"--data", (dir / "ds").string(), "ingest", "--input",
                          Toy("articles.jsonl"), "--registry", Toy("leaning_registry.json")},
                         out, err);
  EXPECT_EQ(code, 0) << err.str();
  EXPECT_TRUE(out.str().starts_with("ingest: read=57 parsed=56 malformed=1")) << out.str();

  StageResult r = RunStage(dir / "ds", {"filter"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["articles"]["kept"], 50);
  EXPECT_EQ(j["images"]["dropped_logo"], 6);
}

TEST(Cli, ErrorsAreStructured) {
  testutil::TempDir dir;
  std::filesystem::path root = dir / "ds";
  ASSERT_EQ(RunStage(root, {"ingest", "--input", Toy("articles.jsonl")}).code, 0);
  ASSERT_EQ(RunStage(root, {"filter"}).code, 0);
  StageResult again = RunStage(root, {"filter"});
  EXPECT_EQ(again.code, 1);
  EXPECT_EQ(ErrorKind(again), "AlreadyFiltered");

  StageResult annotate =
      RunStage(root, {"annotate", "--task", "frames", "--modality", "text", "--mock"});
  ASSERT_EQ(annotate.code, 0) << annotate.err;
  EXPECT_EQ(Dataset::Open(root).Count(StoreKind::kAnnotations, "text_generic_frames"), 50);

  StageResult eval = RunStage(root, {"eval", "frames", "--modality", "text"});
  EXPECT_EQ(eval.code, 1);
  EXPECT_EQ(ErrorKind(eval), "MissingGold");
  EXPECT_EQ(Json::parse(eval.err)["command"], "eval frames");

  StageResult bad_task = RunStage(root, {"annotate", "--task", "topic", "--modality", "image",
                                         "--mock"});
  EXPECT_EQ(bad_task.code, 1);
  EXPECT_EQ(ErrorKind(bad_task), "UnsupportedTask");
}

TEST(Cli, AnnotateSkipsExistingAndHonoursLimit) {
  testutil::TempDir dir;
  std::filesystem::path root = dir / "ds";
  ASSERT_EQ(RunStage(root, {"ingest", "--input", Toy("articles.jsonl")}).code, 0);
  ASSERT_EQ(RunStage(root, {"filter"}).code, 0);
  std::vector<std::string> args{"annotate", "--task", "topic", "--modality", "text", "--mock",
                                "--limit", "20"};
  StageResult first = RunStage(root, args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(Json::parse(first.out)["items"], 20);
  StageResult second = RunStage(root, {"annotate", "--task", "topic", "--modality", "text",
                                       "--mock"});
  EXPECT_EQ(Json::parse(second.out)["items"], 30);
  EXPECT_EQ(Json::parse(second.out)["skipped_existing"], 20);
  EXPECT_EQ(Dataset::Open(root).Count(StoreKind::kAnnotations, "text_topic"), 50);
}

TEST(Cli, UnreachableBackendFails) {
  testutil::TempDir dir;
  std::filesystem::path root = dir / "ds";
  ASSERT_EQ(RunStage(root, {"ingest", "--input", Toy("articles.jsonl")}).code, 0);
  ASSERT_EQ(RunStage(root, {"filter"}).code, 0);
  StageResult r = RunStage(root, {"annotate", "--task", "topic", "--modality", "text",
                                  "--limit", "1", "--base-url", "http://127.0.0.1:1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(ErrorKind(r), "BatchAborted") << r.err;
  EXPECT_FALSE(Dataset::Open(root).Has(StoreKind::kAnnotations, "text_topic"));
}

TEST(Cli, ConfigFile) {
  testutil::TempDir dir;
  std::filesystem::path root = dir / "ds";
  ASSERT_EQ(RunStage(root, {"ingest", "--input", Toy("articles.jsonl")}).code, 0);
  ASSERT_EQ(RunStage(root, {"filter"}).code, 0);
  std::vector<std::string> annotate{"annotate", "--task", "topic", "--modality", "text",
                                    "--mock", "--limit", "2"};
  WriteFileAtomic(dir / "bad.json", "{not json");
  std::vector<std::string> args{"--config", (dir / "bad.json").string()};
  args.insert(args.end(), annotate.begin(), annotate.end());
  StageResult r = RunStage(root, args);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(ErrorKind(r), "InvalidConfig");

  WriteFileAtomic(dir / "cfg.json", R"({"backend": {"model": "m"}, "concurrency": 2})");
  args[1] = (dir / "cfg.json").string();
  r = RunStage(root, args);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["items"], 2);
}

class ToyPipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testutil::TempDir();
    failure_ = testutil::RunToyPipeline(*dir_ / "ds", testutil::SourceDir());
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  std::filesystem::path root() const { return *dir_ / "ds"; }

  static testutil::TempDir *dir_;
  static std::optional<StageResult> failure_;
};

testutil::TempDir *ToyPipelineTest::dir_ = nullptr;
std::optional<StageResult> ToyPipelineTest::failure_;

TEST_F(ToyPipelineTest, EveryStageSucceeds) {
  if (failure_) {
    std::string cmd;
    for (const auto &a : failure_->args) cmd += a + " ";
    FAIL() << cmd << "\n" << failure_->err;
  }
}

TEST_F(ToyPipelineTest, ReportsExist) {
  ASSERT_FALSE(failure_);
  Dataset ds = Dataset::Open(root());
  for (const char *report :
       {"filter.json", "eval_frames_text.json", "eval_frames_text.csv", "mismatch_image.csv",
        "agreement.json", "eval_topics.json", "freq_global_text.csv", "rankdiff_global.csv",
        "pmi_global.csv", "cooc_topic_crime.csv", "leaning_global_image.csv",
        "issue_global.csv", "sentiment.csv", "fightin_words_crime.csv"}) {
    EXPECT_TRUE(ds.Has(StoreKind::kReports, report)) << report;
  }
  EXPECT_EQ(ds.Count(StoreKind::kGold, "mfc_top3"), 20);
  EXPECT_EQ(ds.Count(StoreKind::kGold, "union"), 20);
  for (const auto &[rel, entry] : ds.manifest().files) {
    EXPECT_EQ(Sha256Hex(ReadFile(root() / rel)), entry.sha256) << rel;
  }
}

TEST_F(ToyPipelineTest, GoldIsNotOverwritten) {
  ASSERT_FALSE(failure_);
  StageResult r = RunStage(root(), {"gold", "union", "--input", "human_image_frames"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(ErrorKind(r), "GoldExists");
}

TEST_F(ToyPipelineTest, ExportRoundTrip) {
  ASSERT_FALSE(failure_);
  testutil::TempDir out;
  std::filesystem::path dest = out / "copy";
  StageResult r = RunStage(root(), {"export", "--out", dest.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(testutil::ArtifactHashes(dest), testutil::ArtifactHashes(root()));
  Dataset copy = Dataset::Open(dest);
  EXPECT_TRUE(copy.reconciled().empty());
  EXPECT_EQ(copy.Count(StoreKind::kArticles), 50);
  for (const Json &a : copy.Read(StoreKind::kArticles)) {
    for (const Json &ref : a.value("image_refs", Json::array())) {
      if (!ref.contains("local_path")) continue;
      EXPECT_TRUE(std::filesystem::exists(dest / ref.at("local_path").get<std::string>()));
    }
  }
  StageResult again = RunStage(root(), {"export", "--out", dest.string()});
  EXPECT_EQ(ErrorKind(again), "ExportExists");

  // The copy is an independent dataset: analysis there matches the source.
  StageResult pmi = RunStage(dest, {"analyze", "pmi"});
  ASSERT_EQ(pmi.code, 0) << pmi.err;
  EXPECT_EQ(Dataset::Open(dest).ReadReport("pmi_global.csv"),
            Dataset::Open(root()).ReadReport("pmi_global.csv"));
}

TEST_F(ToyPipelineTest, ExportRefusesCorruptData) {
  ASSERT_FALSE(failure_);
  for (const std::string target : {"image", "data"}) {
    testutil::TempDir scratch;
    std::filesystem::path copy = scratch / "src";
    std::filesystem::copy(root(), copy, std::filesystem::copy_options::recursive);
    std::filesystem::path victim = target == "image"
                                       ? *std::filesystem::directory_iterator(copy / "images")
                                       : copy / "annotations" / "text_topic.jsonl";
    std::ofstream(victim, std::ios::app) << "{}\n";
    StageResult r = RunStage(copy, {"export", "--out", (scratch / "dest").string()});
    EXPECT_EQ(r.code, 1) << target;
    EXPECT_EQ(ErrorKind(r), "CorruptDataset") << target << r.err;
  }
}

}  // namespace
}  // namespace framelens
