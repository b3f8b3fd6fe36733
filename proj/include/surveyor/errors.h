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

#ifndef SURVEYOR_ERRORS_H_
#define SURVEYOR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace surveyor {

// Caller passed a value outside an operation's documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for runtime failures raised by the pipeline.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file or payload could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Persisted data violates a structural invariant (e.g. duplicate ids).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class FetchError : public Error {
 public:
  enum class Kind { kRetriable, kPermanent, kTruncated, kNotHtml };

  FetchError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }
  bool retriable() const { return kind_ == Kind::kRetriable; }

 private:
  Kind kind_;
};

// A remote model provider could not be reached.
class ProviderUnavailable : public Error {
 public:
  using Error::Error;
};

// A remote provider answered with a payload that breaks the wire contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A ranker could not produce scores; callers may fall back to TF-IDF.
class RankerUnavailable : public Error {
 public:
  using Error::Error;
};

// System and reference inputs disagree on their topic keys.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace surveyor

#endif  // SURVEYOR_ERRORS_H_
