// Copyright 2026 The sketchsynth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>

#include "suites/suites.h"

#ifndef SKETCHSYNTH_TEST_DATA_DIR
#define SKETCHSYNTH_TEST_DATA_DIR "data"
#endif
#ifndef SKETCHSYNTH_TEST_SOURCE_DIR
#define SKETCHSYNTH_TEST_SOURCE_DIR "tests"
#endif

namespace sketchsynth::suites {

std::string DataDir() {
  const char* env = std::getenv("SKETCHSYNTH_DATA_DIR");
  return env && *env ? env : SKETCHSYNTH_TEST_DATA_DIR;
}

std::string ParserCorpusPath() {
  return std::string(SKETCHSYNTH_TEST_SOURCE_DIR) + "/data/parser_corpus.json";
}

}  // namespace sketchsynth::suites
