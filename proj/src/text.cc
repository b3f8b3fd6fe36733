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

#include "surveyor/text.h"

#include <algorithm>
#include <array>

#include "surveyor/errors.h"

namespace surveyor::text {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

struct CodePoint {
  char32_t cp;
  std::size_t offset;
  std::size_t length;
};

std::vector<CodePoint> Decode(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      extra = 1;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3;
      cp = b0 & 0x07;
    } else {
      out.push_back({kReplacement, i, 1});
      ++i;
      continue;
    }
    bool ok = i + static_cast<std::size_t>(extra) < s.size();
    for (int k = 1; ok && k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms, surrogates and out-of-range values.
    if (ok && ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
               (extra == 3 && cp < 0x10000) || cp > 0x10FFFF ||
               (cp >= 0xD800 && cp <= 0xDFFF))) {
      ok = false;
    }
    if (!ok) {
      out.push_back({kReplacement, i, 1});
      ++i;
      continue;
    }
    out.push_back({cp, i, static_cast<std::size_t>(extra) + 1});
    i += extra + 1;
  }
  return out;
}

char32_t LowerImpl(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x17F) {
    if ((c <= 0x137 || (c >= 0x14A && c <= 0x177)) && c % 2 == 0) return c + 1;
    if (((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) &&
        c % 2 == 1) {
      return c + 1;
    }
    return c;
  }
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

bool IsUpper(char32_t c) { return LowerImpl(c) != c; }

bool IsDigit(char32_t c) { return c >= '0' && c <= '9'; }

// Control characters are treated like whitespace so they never form tokens.
bool IsSeparator(char32_t c) {
  return IsUnicodeSpace(c) || c < 0x20 || c == 0x7F ||
         (c >= 0x80 && c < 0xA0) || c == 0x200B || c == 0xFEFF;
}

bool IsPunct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  return (c >= 0xA1 && c <= 0xBF && c != 0xAA && c != 0xB2 && c != 0xB3 &&
          c != 0xB5 && c != 0xB9 && c != 0xBA) ||
         c == 0xD7 || c == 0xF7 || (c >= 0x2010 && c <= 0x2027) ||
         (c >= 0x2030 && c <= 0x205E) || (c >= 0x20A0 && c <= 0x20CF) ||
         (c >= 0x2190 && c <= 0x23FF) || (c >= 0x2500 && c <= 0x27BF) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0x3008 && c <= 0x3011) ||
         (c >= 0xFE50 && c <= 0xFE6B) || (c >= 0xFF01 && c <= 0xFF0F) ||
         c == kReplacement;
}

bool IsTerminator(char32_t c) { return c == '.' || c == '!' || c == '?'; }

std::string Encode(std::span<const CodePoint> cps, bool lower) {
  std::string out;
  for (const auto& c : cps) AppendUtf8(lower ? LowerImpl(c.cp) : c.cp, out);
  return out;
}

constexpr std::array<std::string_view, 4> kAbbreviations = {"e.g.", "i.e.",
                                                            "fig.", "eq."};

// Lowercased chunk of non-separator characters ending just before `end`.
std::string ChunkBefore(const std::vector<CodePoint>& cps, std::size_t end,
                        std::size_t* chunk_begin) {
  std::size_t b = end;
  while (b > 0 && !IsSeparator(cps[b - 1].cp)) --b;
  if (chunk_begin != nullptr) *chunk_begin = b;
  return Encode(std::span(cps).subspan(b, end - b), /*lower=*/true);
}

bool IsAbbreviation(const std::vector<CodePoint>& cps, std::size_t end) {
  std::size_t begin = 0;
  const std::string chunk = ChunkBefore(cps, end, &begin);
  for (auto abbr : kAbbreviations) {
    if (chunk == abbr) return true;
  }
  if (chunk == "al.") {
    std::size_t prev_end = begin;
    while (prev_end > 0 && IsSeparator(cps[prev_end - 1].cp)) --prev_end;
    if (prev_end < begin && ChunkBefore(cps, prev_end, nullptr) == "et") {
      return true;
    }
  }
  return false;
}

}  // namespace

bool IsUnicodeSpace(char32_t c) {
  switch (c) {
    case ' ':
    case '\t':
    case '\n':
    case '\v':
    case '\f':
    case '\r':
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

char32_t ToLower(char32_t cp) { return LowerImpl(cp); }

CharClass Classify(char32_t cp) {
  if (IsSeparator(cp)) return CharClass::kSeparator;
  if (IsPunct(cp)) return CharClass::kPunct;
  if (IsDigit(cp)) return CharClass::kDigit;
  return CharClass::kLetter;
}

std::u32string DecodeUtf8(std::string_view bytes) {
  std::u32string out;
  for (const auto& c : Decode(bytes)) out.push_back(c.cp);
  return out;
}

void AppendUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string Lowercase(std::string_view text) {
  return Encode(Decode(text), /*lower=*/true);
}

int NGramBag::total() const {
  int sum = 0;
  for (const auto& [gram, count] : counts) sum += count;
  return sum;
}

std::vector<Token> Tokenize(std::string_view text) {
  const auto cps = Decode(text);
  std::vector<Token> tokens;
  std::size_t run_begin = 0;
  std::size_t run_len = 0;
  TokenKind run_kind = TokenKind::kWord;

  auto flush = [&]() {
    if (run_len == 0) return;
    auto span = std::span(cps).subspan(run_begin, run_len);
    const std::size_t offset = span.front().offset;
    const std::size_t end = span.back().offset + span.back().length;
    tokens.push_back({Encode(span, /*lower=*/true), run_kind, offset,
                      end - offset});
    run_len = 0;
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i].cp;
    if (IsSeparator(c)) {
      flush();
    } else if (IsPunct(c)) {
      flush();
      tokens.push_back({Encode(std::span(cps).subspan(i, 1), true),
                        TokenKind::kPunct, cps[i].offset, cps[i].length});
    } else {
      const TokenKind kind = IsDigit(c) ? TokenKind::kNumber : TokenKind::kWord;
      if (run_len > 0 && kind != run_kind) flush();
      if (run_len == 0) {
        run_begin = i;
        run_kind = kind;
      }
      ++run_len;
    }
  }
  flush();
  return tokens;
}

std::vector<Sentence> SplitSentences(std::string_view text) {
  const auto cps = Decode(text);
  std::vector<Sentence> sentences;

  auto emit = [&](std::size_t first, std::size_t last_exclusive) {
    while (first < last_exclusive && IsSeparator(cps[first].cp)) ++first;
    while (last_exclusive > first && IsSeparator(cps[last_exclusive - 1].cp)) {
      --last_exclusive;
    }
    if (first >= last_exclusive) return;
    Sentence s;
    s.begin = cps[first].offset;
    s.end = cps[last_exclusive - 1].offset + cps[last_exclusive - 1].length;
    s.text = std::string(text.substr(s.begin, s.end - s.begin));
    s.tokens = Tokenize(s.text);
    if (!s.tokens.empty()) sentences.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!IsTerminator(cps[i].cp)) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < cps.size() && IsTerminator(cps[run_end].cp)) ++run_end;
    std::size_t next = run_end;
    while (next < cps.size() && IsSeparator(cps[next].cp)) ++next;
    const bool at_end = next == cps.size();
    const bool boundary =
        at_end || (next > run_end && IsUpper(cps[next].cp) &&
                   !(run_end == i + 1 && cps[i].cp == '.' &&
                     IsAbbreviation(cps, run_end)));
    if (boundary) {
      emit(start, run_end);
      start = next;
    }
    i = run_end;
  }
  emit(start, cps.size());
  return sentences;
}

NGramBag NGrams(std::span<const std::string> tokens, int n) {
  if (n < 1) throw InvalidArgument("n-gram order must be >= 1");
  NGramBag bag;
  bag.n = n;
  const auto order = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    ++bag.counts[std::vector<std::string>(tokens.begin() + i,
                                          tokens.begin() + i + order)];
  }
  return bag;
}

NGramBag NGrams(std::span<const Token> tokens, int n) {
  const auto surfaces = Surfaces(tokens);
  return NGrams(std::span<const std::string>(surfaces), n);
}

std::vector<std::string> Surfaces(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<std::string> WordSurfaces(std::span<const Token> tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::kWord) out.push_back(t.surface);
  }
  return out;
}

int CountWords(std::string_view text) {
  int count = 0;
  bool in_word = false;
  for (const auto& c : Decode(text)) {
    const bool sep = IsSeparator(c.cp);
    if (!sep && !in_word) ++count;
    in_word = !sep;
  }
  return count;
}

std::string FirstWords(std::string_view text, int n) {
  const auto cps = Decode(text);
  int seen = 0;
  bool in_word = false;
  std::size_t first = cps.size();
  std::size_t end = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const bool sep = IsSeparator(cps[i].cp);
    if (!sep && !in_word) {
      if (seen == n) break;
      ++seen;
      if (first == cps.size()) first = i;
    }
    if (!sep) end = cps[i].offset + cps[i].length;
    in_word = !sep;
  }
  if (seen == 0) return {};
  return std::string(text.substr(cps[first].offset, end - cps[first].offset));
}

}  // namespace surveyor::text
