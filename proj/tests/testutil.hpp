/* Copyright 2026 The Percept Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef PERCEPT_TESTS_TESTUTIL_HPP_
#define PERCEPT_TESTS_TESTUTIL_HPP_

#include <unistd.h>

#include <filesystem>
#include <string>

#include "percept/image.hpp"
#include "percept/rng.hpp"

namespace testutil {

inline percept::imaging::Image random_image(int h, int w, percept::Rng& rng) {
  percept::imaging::Image img(h, w);
  for (double& v : img.data) v = rng.uniform();
  return img;
}

// temp directory scoped to one test
class TmpDir {
 public:
  explicit TmpDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("percept-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TmpDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  std::string dir() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil

#endif  // PERCEPT_TESTS_TESTUTIL_HPP_
