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

#include <fstream>

#include "framelens/errors.h"
#include "framelens/util.h"
#include "support/test_util.h"

namespace framelens {
namespace {

TEST(Util, Sha256KnownVectors) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Util, Base64KnownVectors) {
  EXPECT_EQ(Base64Encode(""), "");
  EXPECT_EQ(Base64Encode("Man"), "TWFu");
  EXPECT_EQ(Base64Encode("Ma"), "TWE=");
  EXPECT_EQ(Base64Encode("M"), "TQ==");
  EXPECT_EQ(Base64Encode(std::string("\x00\xff", 2)), "AP8=");
}

TEST(Util, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1.0), "1");
  EXPECT_EQ(FormatDouble(-2.5), "-2.5");
  double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(FormatDouble(third)), third);
}

TEST(Util, CsvFieldQuotesWhenNeeded) {
  EXPECT_EQ(CsvField("plain"), "plain");
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Util, JsonlRoundTripAndMalformedLine) {
  std::vector<Json> rows{Json{{"a", 1}}, Json{{"b", "x"}}};
  std::string text = ToJsonl(rows);
  EXPECT_EQ(text, "{\"a\":1}\n{\"b\":\"x\"}\n");
  EXPECT_EQ(ParseJsonl(text), rows);
  try {
    ParseJsonl("{\"a\":1}\n\n{oops\n");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "MalformedJson");
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(Util, StringHelpers) {
  EXPECT_EQ(Trim("  x y \n"), "x y");
  EXPECT_EQ(CollapseWhitespace(" a \t b\n\nc "), "a b c");
  EXPECT_EQ(ToLower("MiXeD"), "mixed");
}

TEST(Util, AtomicWriteReplacesContent) {
  testutil::TempDir dir;
  auto p = dir / "f.txt";
  WriteFileAtomic(p, "one");
  WriteFileAtomic(p, "two");
  EXPECT_EQ(ReadFile(p), "two");
  EXPECT_FALSE(std::filesystem::exists(dir / "f.txt.tmp"));
  EXPECT_THROW(ReadFile(dir / "missing"), Error);
}

}  // namespace
}  // namespace framelens
