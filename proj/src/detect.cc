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

#include "synmark/detect.h"

#include <cmath>
#include <string>

#include "synmark/errors.h"
#include "synmark/providers.h"

namespace synmark {
namespace {

// Wichura's AS241 (PPND16) rational approximation; relative accuracy about
// 1e-16 over (0, 1).
double Ppnd16(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545925 * r + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                  0.24178072517745061177) * r + 1.27045825245236838258) * r +
                3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                  0.0151986665636164571966) * r + 0.14810397642748007459) * r +
                0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  0.0012426609473880784386) * r + 0.026532189526576123093) * r +
                0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                  1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
                0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
  }
  return q < 0 ? -value : value;
}

}  // namespace

std::string_view ModeName(DetectionMode mode) {
  return mode == DetectionMode::kFast ? "fast" : "precise";
}

DetectionMode ParseMode(std::string_view name) {
  if (name == "fast") return DetectionMode::kFast;
  if (name == "precise") return DetectionMode::kPrecise;
  throw ConfigError("unknown detection mode '" + std::string(name) + "'");
}

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgumentError("quantile probability must lie in (0, 1)");
  }
  return Ppnd16(p);
}

double ZCritical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgumentError("alpha must lie in (0, 1)");
  }
  // Upper tail directly, so small alpha keeps full precision.
  return -Ppnd16(alpha);
}

DetectionReport ReportFromCounts(DetectionMode mode, size_t n, size_t count_one,
                                 double alpha) {
  if (n == 0) {
    throw UndecidableError("no testable encodings (N = 0)");
  }
  if (count_one > n) throw InvalidArgumentError("count_one exceeds N");
  DetectionReport r;
  r.mode = mode;
  r.n = n;
  r.count_one = count_one;
  r.alpha = alpha;
  r.p_hat = static_cast<double>(count_one) / static_cast<double>(n);
  r.z = (r.p_hat - 0.5) / std::sqrt(0.25 / static_cast<double>(n));
  r.p_value = 0.5 * std::erfc(r.z / std::sqrt(2.0));
  r.watermarked = r.z > ZCritical(alpha);
  return r;
}

namespace {

DetectionReport DetectScoped(const Document& doc, const WatermarkConfig& cfg,
                             DetectionMode mode, bool with_trace) {
  cfg.Validate();
  std::vector<size_t> eligible;
  for (size_t i = 1; i < doc.tokens.size(); ++i) {
    if (doc.tokens[i].eligible) eligible.push_back(i);
  }
  const std::vector<EncodedToken> bits = EncodeStream(doc, eligible);
  size_t n = 0;
  size_t ones = 0;
  std::vector<TraceEntry> trace;
  for (const EncodedToken& e : bits) {
    bool in_scope = true;
    if (mode == DetectionMode::kPrecise) {
      in_scope = !Candidates(doc, e.token_index, cfg).filtered.empty();
    }
    if (in_scope) {
      ++n;
      ones += static_cast<size_t>(e.bit);
    }
    if (with_trace) trace.push_back({e.token_index, e.bit, in_scope});
  }
  DetectionReport report = ReportFromCounts(mode, n, ones, cfg.alpha);
  if (with_trace) report.trace = std::move(trace);
  return report;
}

}  // namespace

DetectionReport DetectFast(const Document& doc, const WatermarkConfig& cfg,
                           bool with_trace) {
  return DetectScoped(doc, cfg, DetectionMode::kFast, with_trace);
}

DetectionReport DetectPrecise(const Document& doc, const WatermarkConfig& cfg,
                              bool with_trace) {
  return DetectScoped(doc, cfg, DetectionMode::kPrecise, with_trace);
}

DetectionReport Detect(const Document& doc, const WatermarkConfig& cfg,
                       DetectionMode mode, bool with_trace) {
  return DetectScoped(doc, cfg, mode, with_trace);
}

double RoundSignificant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  const double magnitude = std::floor(std::log10(std::fabs(value)));
  const double scale = std::pow(10.0, digits - 1 - magnitude);
  return std::round(value * scale) / scale;
}

}  // namespace synmark
