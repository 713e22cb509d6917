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

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "framelens/backend.h"

namespace framelens {

ImagePayload ResizeImage(const ImagePayload &image, int edge) {
  if (edge <= 0) throw Error("InvalidConfig", "image edge must be positive");
  std::vector<uchar> buf(image.bytes.begin(), image.bytes.end());
  cv::Mat decoded = cv::imdecode(buf, cv::IMREAD_COLOR);
  if (decoded.empty()) {
    throw Error("InvalidImage", "cannot decode image of " +
                                    std::to_string(image.bytes.size()) + " bytes");
  }
  cv::Mat resized;
  cv::resize(decoded, resized, cv::Size(edge, edge), 0, 0, cv::INTER_LINEAR);
  std::vector<uchar> out;
  if (!cv::imencode(".png", resized, out)) {
    throw Error("InvalidImage", "cannot encode resized image");
  }
  return ImagePayload{std::string(out.begin(), out.end()), "image/png"};
}

}  // namespace framelens
