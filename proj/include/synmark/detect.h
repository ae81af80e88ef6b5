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

#ifndef SYNMARK_DETECT_H_
#define SYNMARK_DETECT_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "synmark/config.h"
#include "synmark/encoding.h"
#include "synmark/textmodel.h"

namespace synmark {

enum class DetectionMode { kFast, kPrecise };

std::string_view ModeName(DetectionMode mode);
DetectionMode ParseMode(std::string_view name);  // ConfigError if unknown

struct TraceEntry {
  size_t token_index = 0;
  int bit = 0;
  bool in_scope = false;
};

struct DetectionReport {
  DetectionMode mode = DetectionMode::kFast;
  size_t n = 0;
  size_t count_one = 0;
  double p_hat = 0;
  double z = 0;
  double p_value = 1;
  double alpha = 0.05;
  bool watermarked = false;
  // One entry per eligible token when requested.
  std::optional<std::vector<TraceEntry>> trace;
};

// Standard normal CDF.
double NormalCdf(double z);

// Upper-tail critical value: the (1 - alpha) quantile of the standard normal.
// Throws InvalidArgumentError unless 0 < alpha < 1.
double ZCritical(double alpha);

// Inverse of NormalCdf for p in (0, 1).
double NormalQuantile(double p);

// One-sided test of the bit-1 proportion against 0.5, without continuity
// correction. Throws UndecidableError when n == 0.
DetectionReport ReportFromCounts(DetectionMode mode, size_t n, size_t count_one,
                                 double alpha);

// Scope: every eligible token.
DetectionReport DetectFast(const Document& doc, const WatermarkConfig& cfg,
                           bool with_trace = false);

// Scope: eligible tokens whose filtered candidate set is non-empty under
// cfg.provider.
DetectionReport DetectPrecise(const Document& doc, const WatermarkConfig& cfg,
                              bool with_trace = false);

DetectionReport Detect(const Document& doc, const WatermarkConfig& cfg,
                       DetectionMode mode, bool with_trace = false);

// Rounds to `digits` significant digits, for reporting.
double RoundSignificant(double value, int digits);

}  // namespace synmark

#endif  // SYNMARK_DETECT_H_
