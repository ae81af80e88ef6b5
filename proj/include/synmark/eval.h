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

#ifndef SYNMARK_EVAL_H_
#define SYNMARK_EVAL_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "synmark/attacks.h"
#include "synmark/config.h"
#include "synmark/detect.h"
#include "synmark/lexicon.h"
#include "synmark/textmodel.h"

namespace synmark {

struct RocPoint {
  double threshold = 0;  // scores >= threshold count as positive
  double tpr = 0;
  double fpr = 0;
};

struct RocResult {
  // Ascending thresholds over the distinct scores, then +inf.
  std::vector<RocPoint> curve;
  double auc = 0;
};

// AUC is the probability that a random positive outscores a random
// negative, ties counting one half. Empty inputs throw InvalidArgumentError.
RocResult RocAuc(std::span<const double> pos_scores,
                 std::span<const double> neg_scores);

struct F1Result {
  double f1 = 0;
  double precision = 0;
  double recall = 0;
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  size_t tn = 0;
  // Set when there were neither predicted nor actual positives; f1 is 0.
  bool degenerate = false;
};

// F1 of the watermarked verdict with `pos` as the positive class. Every
// report must have been computed at `alpha`.
F1Result F1AtAlpha(std::span<const DetectionReport> pos,
                   std::span<const DetectionReport> neg, double alpha);

// Exact-match unigram METEOR variant: greedy left-to-right alignment,
// Fmean = 10PR / (R + 9P), penalty = 0.5 * (chunks / matches)^3,
// score = Fmean * (1 - penalty); 0 without matches.
double MeteorLite(const Document& reference, const Document& candidate);

// Cosine of the mean word vectors of the two documents.
double VecSimilarity(const Lexicon& lexicon, const Document& reference,
                     const Document& candidate);

struct FidelityScores {
  double meteor_lite = 0;
  double vec_similarity = 0;
};

FidelityScores Fidelity(const Lexicon& lexicon, const Document& reference,
                        const Document& candidate);

struct LengthSweepRow {
  size_t length = 0;
  size_t documents = 0;   // documents with a decidable fast and precise test
  size_t undecidable = 0;
  double mean_fast_z = 0;
  double mean_precise_z = 0;
};

struct LengthSweepResult {
  std::vector<LengthSweepRow> rows;
  std::vector<std::string> warnings;
};

// Injects every document of each bucket, re-analyzes the watermarked text
// and averages the fast and precise Z scores. Needs at least two buckets;
// empty buckets are skipped with a warning.
LengthSweepResult LengthSweep(
    const std::map<size_t, std::vector<Document>>& corpus_by_length,
    const WatermarkConfig& cfg, size_t threads = 0);

struct AttackSweepRow {
  double p = 0;
  double mean_z = 0;        // over decidable attacked documents
  double detection_rate = 0;
  double f1 = 0;            // attacked watermarked vs clean documents
  size_t undecidable = 0;
};

// For each probability, attacks every watermarked document (seeded per
// document from `seed`), re-analyzes and runs fast detection. Undecidable
// documents count as not watermarked.
std::vector<AttackSweepRow> AttackSweep(std::span<const Document> watermarked,
                                        std::span<const Document> clean,
                                        const AttackSpec& attack,
                                        std::span<const double> probabilities,
                                        const WatermarkConfig& cfg,
                                        size_t threads = 0);

// seed ^ hash(key), for per-document random streams.
uint64_t DeriveSeed(uint64_t seed, const std::string& key);

// Long-format results: one row per (experiment, parameter, metric, value).
struct ResultRow {
  std::string experiment;
  std::string parameter;
  std::string metric;
  double value = 0;
};

void WriteResultsCsv(std::ostream& out, std::span<const ResultRow> rows);
void WriteRocCsv(std::ostream& out, const RocResult& roc);

}  // namespace synmark

#endif  // SYNMARK_EVAL_H_
