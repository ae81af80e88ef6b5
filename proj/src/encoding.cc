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

#include "synmark/encoding.h"

#include <openssl/sha.h>

#include <array>
#include <fstream>

#include "synmark/errors.h"
#include "synmark/keyvalue.h"
#include "synmark/unicode.h"

namespace synmark {
namespace {

using Digest = std::array<unsigned char, SHA256_DIGEST_LENGTH>;

Digest Sha256(const void* data, size_t size) {
  Digest digest;
  SHA256(static_cast<const unsigned char*>(data), size, digest.data());
  return digest;
}

}  // namespace

WordHash HashWord(std::string_view surface) {
  if (surface.empty()) throw InvalidArgumentError("cannot hash an empty word");
  const std::string normalized = unicode::Nfc(surface);
  const Digest digest = Sha256(normalized.data(), normalized.size());
  uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value = (value << 8) | digest[i];
  return WordHash{value};
}

int RandomBinary(uint64_t seed) {
  std::array<unsigned char, 8> bytes;
  for (int i = 7; i >= 0; --i) {
    bytes[i] = static_cast<unsigned char>(seed & 0xff);
    seed >>= 8;
  }
  return Sha256(bytes.data(), bytes.size())[0] & 1;
}

int EncodePair(std::string_view prev, std::string_view cur) {
  return RandomBinary(HashWord(cur).value ^ HashWord(prev).value);
}

std::vector<EncodedToken> EncodeStream(const Document& doc,
                                       std::span<const size_t> scope) {
  std::vector<EncodedToken> out;
  out.reserve(scope.size());
  size_t last = 0;
  for (const size_t index : scope) {
    if (index == 0) {
      throw InvalidArgumentError("token 0 has no predecessor to encode against");
    }
    if (index >= doc.tokens.size()) {
      throw InvalidArgumentError("scope index " + std::to_string(index) +
                                 " past end of document");
    }
    if (index <= last && !out.empty()) {
      throw InvalidArgumentError("scope must be strictly ascending");
    }
    last = index;
    const uint64_t seed = HashWord(doc.tokens[index].surface).value ^
                          HashWord(doc.tokens[index - 1].surface).value;
    out.push_back({index, RandomBinary(seed), seed});
  }
  return out;
}

std::vector<GoldenTriple> LoadGoldenBits(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open fixture " + path);
  std::vector<GoldenTriple> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const size_t tab1 = line.find('\t');
    const size_t tab2 =
        tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected prev<TAB>cur<TAB>bit");
    }
    const std::string_view bit = Trim(std::string_view(line).substr(tab2 + 1));
    if (bit != "0" && bit != "1") {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": bad bit");
    }
    out.push_back({line.substr(0, tab1), line.substr(tab1 + 1, tab2 - tab1 - 1),
                   bit == "1" ? 1 : 0});
  }
  return out;
}

ConformanceResult CheckGoldenBits(std::span<const GoldenTriple> triples) {
  ConformanceResult result;
  for (const GoldenTriple& t : triples) {
    ++result.checked;
    if (EncodePair(t.prev, t.cur) != t.bit) result.mismatches.push_back(t);
  }
  return result;
}

std::string DefaultGoldenBitsPath() { return SYNMARK_DEFAULT_FIXTURE; }

}  // namespace synmark
