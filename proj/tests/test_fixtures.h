// Copyright 2026 The Surveyor Authors.
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

#ifndef SURVEYOR_TESTS_TEST_FIXTURES_H_
#define SURVEYOR_TESTS_TEST_FIXTURES_H_

#include <array>
#include <filesystem>
#include <string>

#include "surveyor/corpus.h"

namespace surveyor::testing {

inline constexpr std::array<const char*, 3> kFixtureTopics = {
    "Text Summarization", "BERT", "Dropout"};

std::filesystem::path FixtureDir();

// Ingests one topic of the bundled offline web fixture.
Corpus FixtureCorpus(const std::string& topic);

}  // namespace surveyor::testing

#endif  // SURVEYOR_TESTS_TEST_FIXTURES_H_
