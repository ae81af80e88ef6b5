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

#ifndef SYNMARK_ENCODING_H_
#define SYNMARK_ENCODING_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synmark/textmodel.h"

namespace synmark {

// First 8 bytes of SHA-256 over the NFC-normalized UTF-8 surface, read
// big-endian.
struct WordHash {
  uint64_t value = 0;

  friend bool operator==(WordHash, WordHash) = default;
};

struct EncodedToken {
  size_t token_index = 0;
  int bit = 0;
  uint64_t seed = 0;  // hash(token) ^ hash(predecessor)
};

// Throws InvalidArgumentError on an empty surface.
WordHash HashWord(std::string_view surface);

// Least significant bit of the first byte of SHA-256 over the 8-byte
// big-endian encoding of `seed`.
int RandomBinary(uint64_t seed);

// The bit carried by `cur` when it follows `prev`.
int EncodePair(std::string_view prev, std::string_view cur);

// Encodes the tokens at `scope` (ascending, 0-based, index 0 excluded)
// against their immediate predecessors in `doc`.
std::vector<EncodedToken> EncodeStream(const Document& doc,
                                       std::span<const size_t> scope);

// Cross-implementation conformance fixture: lines of prev<TAB>cur<TAB>bit.
// Lines starting with '#' are comments.
struct GoldenTriple {
  std::string prev;
  std::string cur;
  int bit = 0;
};

std::vector<GoldenTriple> LoadGoldenBits(const std::string& path);

struct ConformanceResult {
  size_t checked = 0;
  std::vector<GoldenTriple> mismatches;
};

ConformanceResult CheckGoldenBits(std::span<const GoldenTriple> triples);

// Path of the fixture shipped with the source tree.
std::string DefaultGoldenBitsPath();

}  // namespace synmark

#endif  // SYNMARK_ENCODING_H_
