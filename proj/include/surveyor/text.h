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

#ifndef SURVEYOR_TEXT_H_
#define SURVEYOR_TEXT_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace surveyor::text {

enum class TokenKind { kWord, kNumber, kPunct };

// A lowercased token. `offset`/`length` locate the original bytes in the
// tokenized input so callers can cut the source text at a token boundary.
struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kWord;
  std::size_t offset = 0;
  std::size_t length = 0;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string text;
  std::vector<Token> tokens;
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
};

struct NGramBag {
  int n = 1;
  std::map<std::vector<std::string>, int> counts;

  // Number of n-grams counted with multiplicity.
  int total() const;
};

// Splits on Unicode whitespace, lowercases, emits every punctuation
// character as its own token and separates maximal digit runs from
// letter runs. Total and deterministic.
std::vector<Token> Tokenize(std::string_view text);

// Sentence boundaries fall after a run of '.', '!' or '?' that is followed
// by whitespace and an uppercase letter, or by the end of the text. A
// period closing one of "e.g.", "i.e.", "et al.", "fig." or "eq." never
// ends a sentence.
std::vector<Sentence> SplitSentences(std::string_view text);

// Throws InvalidArgument when n < 1.
NGramBag NGrams(std::span<const std::string> tokens, int n);
NGramBag NGrams(std::span<const Token> tokens, int n);

std::vector<std::string> Surfaces(std::span<const Token> tokens);

// Surfaces of word-kind tokens only.
std::vector<std::string> WordSurfaces(std::span<const Token> tokens);

// Unicode-aware lowercasing for the scripts the tokenizer folds
// (ASCII, Latin-1, Latin Extended-A, Greek, Cyrillic).
std::string Lowercase(std::string_view text);

// Whitespace-delimited word count; the unit of the summary length band.
int CountWords(std::string_view text);

// Returns the text made of the first `n` whitespace-delimited words.
std::string FirstWords(std::string_view text, int n);

bool IsUnicodeSpace(char32_t cp);

enum class CharClass { kSeparator, kPunct, kDigit, kLetter };

// The classification Tokenize uses: separators split, punctuation becomes
// single-character tokens, everything else is a digit or a letter.
CharClass Classify(char32_t cp);
char32_t ToLower(char32_t cp);

// Decodes UTF-8, replacing malformed sequences with U+FFFD.
std::u32string DecodeUtf8(std::string_view bytes);
void AppendUtf8(char32_t cp, std::string& out);

}  // namespace surveyor::text

#endif  // SURVEYOR_TEXT_H_
