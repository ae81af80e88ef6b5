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

#include "synmark/eval.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "synmark/encoding.h"
#include "synmark/errors.h"
#include "synmark/inject.h"
#include "synmark/parallel.h"

namespace synmark {
namespace {

size_t ResolveThreads(size_t threads) {
  return threads == 0 ? DefaultThreads() : threads;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

RocResult RocAuc(std::span<const double> pos_scores,
                 std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) {
    throw InvalidArgumentError("ROC needs positive and negative scores");
  }
  struct Item {
    double score;
    bool positive;
  };
  std::vector<Item> items;
  items.reserve(pos_scores.size() + neg_scores.size());
  for (double s : pos_scores) items.push_back({s, true});
  for (double s : neg_scores) items.push_back({s, false});
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.score < b.score; });

  const double n_pos = static_cast<double>(pos_scores.size());
  const double n_neg = static_cast<double>(neg_scores.size());
  RocResult result;
  double wins = 0;
  size_t neg_below = 0;
  size_t pos_below = 0;
  for (size_t i = 0; i < items.size();) {
    size_t j = i;
    size_t pos_here = 0;
    size_t neg_here = 0;
    while (j < items.size() && items[j].score == items[i].score) {
      (items[j].positive ? pos_here : neg_here) += 1;
      ++j;
    }
    // Threshold at this score: everything from here up is called positive.
    result.curve.push_back({items[i].score,
                            (n_pos - static_cast<double>(pos_below)) / n_pos,
                            (n_neg - static_cast<double>(neg_below)) / n_neg});
    wins += static_cast<double>(pos_here) *
            (static_cast<double>(neg_below) + 0.5 * static_cast<double>(neg_here));
    pos_below += pos_here;
    neg_below += neg_here;
    i = j;
  }
  result.curve.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  result.auc = wins / (n_pos * n_neg);
  return result;
}

F1Result F1AtAlpha(std::span<const DetectionReport> pos,
                   std::span<const DetectionReport> neg, double alpha) {
  F1Result r;
  const auto check = [alpha](const DetectionReport& report) {
    if (std::fabs(report.alpha - alpha) > 1e-12) {
      throw InvalidArgumentError("report computed at a different alpha");
    }
  };
  for (const DetectionReport& report : pos) {
    check(report);
    (report.watermarked ? r.tp : r.fn) += 1;
  }
  for (const DetectionReport& report : neg) {
    check(report);
    (report.watermarked ? r.fp : r.tn) += 1;
  }
  const size_t predicted = r.tp + r.fp;
  const size_t actual = r.tp + r.fn;
  if (predicted == 0 && actual == 0) {
    r.degenerate = true;
    return r;
  }
  r.precision = predicted == 0 ? 0.0 : static_cast<double>(r.tp) / predicted;
  r.recall = actual == 0 ? 0.0 : static_cast<double>(r.tp) / actual;
  r.f1 = 2.0 * static_cast<double>(r.tp) /
         static_cast<double>(2 * r.tp + r.fp + r.fn);
  return r;
}

double MeteorLite(const Document& reference, const Document& candidate) {
  const size_t n_ref = reference.tokens.size();
  const size_t n_cand = candidate.tokens.size();
  if (n_ref == 0 || n_cand == 0) return 0.0;
  std::vector<bool> used(n_ref, false);
  std::vector<std::optional<size_t>> align(n_cand);
  size_t matches = 0;
  for (size_t j = 0; j < n_cand; ++j) {
    for (size_t i = 0; i < n_ref; ++i) {
      if (!used[i] && reference.tokens[i].surface == candidate.tokens[j].surface) {
        used[i] = true;
        align[j] = i;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;
  size_t chunks = 0;
  for (size_t j = 0; j < n_cand; ++j) {
    if (!align[j]) continue;
    const bool continues = j > 0 && align[j - 1] && *align[j] == *align[j - 1] + 1;
    if (!continues) ++chunks;
  }
  const double m = static_cast<double>(matches);
  const double precision = m / static_cast<double>(n_cand);
  const double recall = m / static_cast<double>(n_ref);
  const double fmean = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double penalty = 0.5 * std::pow(static_cast<double>(chunks) / m, 3.0);
  return fmean * (1.0 - penalty);
}

double VecSimilarity(const Lexicon& lexicon, const Document& reference,
                     const Document& candidate) {
  const std::vector<std::string> a = reference.Surfaces();
  const std::vector<std::string> b = candidate.Surfaces();
  return MeanVectorSimilarity(lexicon, a, b);
}

FidelityScores Fidelity(const Lexicon& lexicon, const Document& reference,
                        const Document& candidate) {
  return {MeteorLite(reference, candidate),
          VecSimilarity(lexicon, reference, candidate)};
}

LengthSweepResult LengthSweep(
    const std::map<size_t, std::vector<Document>>& corpus_by_length,
    const WatermarkConfig& cfg, size_t threads) {
  if (corpus_by_length.size() < 2) {
    throw InvalidArgumentError("length sweep needs at least two buckets");
  }
  const Analyzer analyzer = cfg.MakeAnalyzer();
  LengthSweepResult result;
  for (const auto& [length, docs] : corpus_by_length) {
    if (docs.empty()) {
      result.warnings.push_back("bucket " + std::to_string(length) +
                                " is empty; skipped");
      continue;
    }
    std::vector<std::optional<std::pair<double, double>>> z(docs.size());
    ParallelFor(docs.size(), ResolveThreads(threads), [&](size_t i) {
      const InjectionReport injected = Inject(docs[i], cfg);
      const Document marked = analyzer.Analyze(injected.doc_out.text);
      try {
        z[i] = std::make_pair(DetectFast(marked, cfg).z,
                              DetectPrecise(marked, cfg).z);
      } catch (const UndecidableError&) {
      }
    });
    LengthSweepRow row;
    row.length = length;
    for (const auto& entry : z) {
      if (!entry) {
        ++row.undecidable;
        continue;
      }
      ++row.documents;
      row.mean_fast_z += entry->first;
      row.mean_precise_z += entry->second;
    }
    if (row.documents == 0) {
      result.warnings.push_back("bucket " + std::to_string(length) +
                                " has no decidable documents; skipped");
      continue;
    }
    row.mean_fast_z /= static_cast<double>(row.documents);
    row.mean_precise_z /= static_cast<double>(row.documents);
    result.rows.push_back(row);
  }
  return result;
}

uint64_t DeriveSeed(uint64_t seed, const std::string& key) {
  return seed ^ HashWord(key.empty() ? std::string("\x01") : key).value;
}

std::vector<AttackSweepRow> AttackSweep(std::span<const Document> watermarked,
                                        std::span<const Document> clean,
                                        const AttackSpec& attack,
                                        std::span<const double> probabilities,
                                        const WatermarkConfig& cfg,
                                        size_t threads) {
  const Analyzer analyzer = cfg.MakeAnalyzer();
  const auto detect_or_null = [&cfg](const Document& doc) {
    try {
      return std::optional<DetectionReport>(DetectFast(doc, cfg));
    } catch (const UndecidableError&) {
      return std::optional<DetectionReport>();
    }
  };
  const auto null_report = [&cfg] {
    DetectionReport r;
    r.alpha = cfg.alpha;
    return r;
  };

  std::vector<DetectionReport> negatives(clean.size());
  ParallelFor(clean.size(), ResolveThreads(threads), [&](size_t i) {
    negatives[i] = detect_or_null(clean[i]).value_or(null_report());
  });

  std::vector<AttackSweepRow> rows;
  for (const double p : probabilities) {
    std::vector<std::optional<DetectionReport>> reports(watermarked.size());
    ParallelFor(watermarked.size(), ResolveThreads(threads), [&](size_t i) {
      AttackSpec spec = attack;
      spec.p = p;
      spec.rng_seed = DeriveSeed(attack.rng_seed, std::to_string(i));
      const AttackResult attacked = RunAttack(watermarked[i], spec, cfg);
      reports[i] = detect_or_null(analyzer.Reanalyze(attacked.doc));
    });
    AttackSweepRow row;
    row.p = p;
    std::vector<DetectionReport> positives;
    size_t decided = 0;
    size_t detected = 0;
    for (const auto& r : reports) {
      if (!r) {
        ++row.undecidable;
        positives.push_back(null_report());
        continue;
      }
      ++decided;
      row.mean_z += r->z;
      detected += r->watermarked;
      positives.push_back(*r);
    }
    if (decided > 0) row.mean_z /= static_cast<double>(decided);
    row.detection_rate = watermarked.empty()
                             ? 0.0
                             : static_cast<double>(detected) /
                                   static_cast<double>(watermarked.size());
    row.f1 = F1AtAlpha(positives, negatives, cfg.alpha).f1;
    rows.push_back(row);
  }
  return rows;
}

void WriteResultsCsv(std::ostream& out, std::span<const ResultRow> rows) {
  out << "experiment,parameter,metric,value\n";
  for (const ResultRow& r : rows) {
    out << CsvField(r.experiment) << ',' << CsvField(r.parameter) << ','
        << CsvField(r.metric) << ',' << FormatNumber(r.value) << '\n';
  }
}

void WriteRocCsv(std::ostream& out, const RocResult& roc) {
  out << "threshold,tpr,fpr\n";
  for (const RocPoint& p : roc.curve) {
    out << FormatNumber(p.threshold) << ',' << FormatNumber(p.tpr) << ','
        << FormatNumber(p.fpr) << '\n';
  }
}

}  // namespace synmark
