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

#ifndef SYNMARK_UNICODE_H_
#define SYNMARK_UNICODE_H_

#include <string>
#include <string_view>

namespace synmark::unicode {

// NFC normalization of UTF-8 text. Ill-formed input throws
// InvalidArgumentError.
std::string Nfc(std::string_view utf8);
bool IsValidUtf8(std::string_view utf8);

// Decodes the code point starting at `pos` and advances `pos` past it.
char32_t NextCodePoint(std::string_view utf8, size_t& pos);

bool IsWhitespace(char32_t c);
bool IsPunctuation(char32_t c);  // Unicode general category P*
bool IsSymbol(char32_t c);       // Unicode general category S*
bool IsDigit(char32_t c);
bool IsLetter(char32_t c);
bool IsUpper(char32_t c);
bool IsLower(char32_t c);

std::string ToLower(std::string_view utf8);
std::string ToUpper(std::string_view utf8);
// Uppercases the first code point only.
std::string UpperFirst(std::string_view utf8);

}  // namespace synmark::unicode

#endif  // SYNMARK_UNICODE_H_
