// Copyright 2026 The Synmark Authors
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

#ifndef SYNMARK_ERRORS_H_
#define SYNMARK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace synmark {

// Base class for every error raised by the library. The CLI maps
// ConfigError to exit status 2 and everything else to per-document failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A synonym provider failed to answer (timeout, transport failure, or an
// error record from a remote provider).
class ProviderError : public Error {
 public:
  using Error::Error;
};

// A peer sent a record that violates the line protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Detection found no testable encodings (N = 0).
class UndecidableError : public Error {
 public:
  using Error::Error;
};

class AttackAbortedError : public Error {
 public:
  using Error::Error;
};

// Prefixes `what` with the token position it concerns.
std::string WithTokenContext(const std::string& what, size_t token_index,
                             const std::string& surface);

}  // namespace synmark

#endif  // SYNMARK_ERRORS_H_
