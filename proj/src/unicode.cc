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

#include "synmark/unicode.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "synmark/errors.h"

namespace synmark::unicode {

bool IsValidUtf8(std::string_view utf8) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

std::string Nfc(std::string_view utf8) {
  if (!IsValidUtf8(utf8)) {
    throw InvalidArgumentError("input is not valid UTF-8");
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  if (nfc->isNormalized(src, status) && U_SUCCESS(status)) {
    return std::string(utf8);
  }
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfc->normalize(src, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

char32_t NextCodePoint(std::string_view utf8, size_t& pos) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  int32_t i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_NEXT(s, i, static_cast<int32_t>(utf8.size()), c);
  pos = static_cast<size_t>(i);
  return c < 0 ? U'�' : static_cast<char32_t>(c);
}

bool IsWhitespace(char32_t c) { return u_isUWhiteSpace(c); }

bool IsPunctuation(char32_t c) { return u_ispunct(c); }

bool IsSymbol(char32_t c) {
  return (U_GET_GC_MASK(c) & U_GC_S_MASK) != 0;
}

bool IsDigit(char32_t c) { return u_isdigit(c); }
bool IsLetter(char32_t c) { return u_isalpha(c); }
bool IsUpper(char32_t c) { return u_isUUppercase(c); }
bool IsLower(char32_t c) { return u_isULowercase(c); }

namespace {

icu::UnicodeString FromUtf8(std::string_view utf8) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

std::string ToUtf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

}  // namespace

std::string ToLower(std::string_view utf8) {
  icu::UnicodeString s = FromUtf8(utf8);
  s.toLower(icu::Locale::getRoot());
  return ToUtf8(s);
}

std::string ToUpper(std::string_view utf8) {
  icu::UnicodeString s = FromUtf8(utf8);
  s.toUpper(icu::Locale::getRoot());
  return ToUtf8(s);
}

std::string UpperFirst(std::string_view utf8) {
  if (utf8.empty()) return {};
  size_t pos = 0;
  NextCodePoint(utf8, pos);
  return ToUpper(utf8.substr(0, pos)) + std::string(utf8.substr(pos));
}

}  // namespace synmark::unicode
