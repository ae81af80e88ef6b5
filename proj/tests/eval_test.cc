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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "support/synthetic.h"
#include "synmark/attacks.h"
#include "synmark/encoding.h"
#include "synmark/errors.h"
#include "synmark/inject.h"

namespace synmark {
namespace {

double BruteForceAuc(const std::vector<double>& pos, const std::vector<double>& neg) {
  double wins = 0;
  for (double p : pos) {
    for (double n : neg) wins += p > n ? 1.0 : (p == n ? 0.5 : 0.0);
  }
  return wins / (pos.size() * neg.size());
}

DetectionReport Verdict(bool watermarked, double alpha = 0.05) {
  DetectionReport r;
  r.watermarked = watermarked;
  r.alpha = alpha;
  return r;
}

TEST(RocTest, KnownCases) {
  EXPECT_DOUBLE_EQ(RocAuc(std::vector<double>{3, 4}, std::vector<double>{1, 2}).auc, 1.0);
  EXPECT_DOUBLE_EQ(RocAuc(std::vector<double>{2, 0}, std::vector<double>{1}).auc, 0.5);
  EXPECT_DOUBLE_EQ(RocAuc(std::vector<double>{1}, std::vector<double>{1}).auc, 0.5);
  EXPECT_THROW(RocAuc(std::vector<double>{}, std::vector<double>{1}),
               InvalidArgumentError);
}

TEST(RocTest, MatchesPairCountingWithTies) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 50; ++round) {
    std::vector<double> pos(1 + rng() % 30), neg(1 + rng() % 30);
    for (double& x : pos) x = static_cast<double>(rng() % 10);
    for (double& x : neg) x = static_cast<double>(rng() % 8);
    const RocResult roc = RocAuc(pos, neg);
    EXPECT_NEAR(roc.auc, BruteForceAuc(pos, neg), 1e-12);

    // Trapezoids under the curve give the same area.
    double area = 0;
    for (size_t i = 1; i < roc.curve.size(); ++i) {
      const RocPoint& a = roc.curve[i - 1];
      const RocPoint& b = roc.curve[i];
      area += (a.fpr - b.fpr) * (a.tpr + b.tpr) / 2;
      EXPECT_LE(b.tpr, a.tpr);
      EXPECT_LE(b.fpr, a.fpr);
      EXPECT_LT(a.threshold, b.threshold);
    }
    EXPECT_NEAR(area, roc.auc, 1e-12);
    EXPECT_DOUBLE_EQ(roc.curve.front().tpr, 1.0);
    EXPECT_DOUBLE_EQ(roc.curve.front().fpr, 1.0);
    EXPECT_DOUBLE_EQ(roc.curve.back().tpr, 0.0);
  }
}

TEST(RocTest, SameDistributionIsNearChance) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> pos(4000), neg(4000);
  for (double& x : pos) x = normal(rng);
  for (double& x : neg) x = normal(rng);
  EXPECT_NEAR(RocAuc(pos, neg).auc, 0.5, 0.02);
}

TEST(F1Test, ConfusionArithmetic) {
  std::vector<DetectionReport> pos, neg;
  for (int i = 0; i < 8; ++i) pos.push_back(Verdict(true));
  for (int i = 0; i < 2; ++i) pos.push_back(Verdict(false));
  for (int i = 0; i < 2; ++i) neg.push_back(Verdict(true));
  for (int i = 0; i < 5; ++i) neg.push_back(Verdict(false));
  const F1Result r = F1AtAlpha(pos, neg, 0.05);
  EXPECT_EQ(r.tp, 8u);
  EXPECT_EQ(r.fp, 2u);
  EXPECT_EQ(r.fn, 2u);
  EXPECT_EQ(r.tn, 5u);
  EXPECT_DOUBLE_EQ(r.precision, 0.8);
  EXPECT_DOUBLE_EQ(r.recall, 0.8);
  EXPECT_DOUBLE_EQ(r.f1, 0.8);
}

TEST(F1Test, EdgeCases) {
  const std::vector<DetectionReport> yes = {Verdict(true), Verdict(true)};
  const std::vector<DetectionReport> no = {Verdict(false), Verdict(false)};
  EXPECT_DOUBLE_EQ(F1AtAlpha(yes, no, 0.05).f1, 1.0);
  const F1Result nothing = F1AtAlpha(no, no, 0.05);
  EXPECT_DOUBLE_EQ(nothing.f1, 0.0);
  EXPECT_FALSE(nothing.degenerate);
  const F1Result empty = F1AtAlpha({}, no, 0.05);
  EXPECT_TRUE(empty.degenerate);
  const std::vector<DetectionReport> other = {Verdict(true, 0.01)};
  EXPECT_THROW(F1AtAlpha(other, no, 0.05), InvalidArgumentError);
}

TEST(MeteorTest, IdenticalFourTokens) {
  const Document doc = Tokenize("a b c d");
  EXPECT_DOUBLE_EQ(MeteorLite(doc, doc), 1.0 - 0.5 / 64.0);  // 0.9921875
}

TEST(MeteorTest, HandTracedGap) {
  // Matches a, b, d in two chunks: P = R = 3/4, penalty 0.5 * (2/3)^3.
  EXPECT_NEAR(MeteorLite(Tokenize("a b c d"), Tokenize("a b x d")), 23.0 / 36.0,
              1e-12);
}

TEST(MeteorTest, DisjointAndEmpty) {
  EXPECT_DOUBLE_EQ(MeteorLite(Tokenize("a b"), Tokenize("c d")), 0.0);
  EXPECT_DOUBLE_EQ(MeteorLite(Tokenize(""), Tokenize("c d")), 0.0);
}

TEST(MeteorTest, OneSubstitutionScoresLower) {
  const Document ref = Tokenize("one two three four five six seven eight nine .");
  const Document changed = Tokenize("one two three four FIVE six seven eight nine .");
  EXPECT_LT(MeteorLite(ref, changed), MeteorLite(ref, ref));
  EXPECT_GT(MeteorLite(ref, changed), 0.0);
}

TEST(VecSimilarityTest, Basics) {
  const Lexicon lex({}, {{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 0}}});
  EXPECT_DOUBLE_EQ(VecSimilarity(lex, Tokenize("a"), Tokenize("c")), 1.0);
  EXPECT_DOUBLE_EQ(VecSimilarity(lex, Tokenize("a"), Tokenize("b")), 0.0);
  const FidelityScores f = Fidelity(lex, Tokenize("a b"), Tokenize("c b"));
  EXPECT_DOUBLE_EQ(f.vec_similarity, 1.0);
  EXPECT_LT(f.meteor_lite, 1.0);
}

class SweepTest : public ::testing::Test {
 protected:
  SweepTest() : world_(testutil::MakeWorld()), cfg_(testutil::MakeConfig(world_)) {}
  std::vector<Document> Corpus(size_t n, size_t tokens, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Analyzer analyzer = cfg_.MakeAnalyzer();
    std::vector<Document> docs;
    for (size_t i = 0; i < n; ++i) {
      docs.push_back(analyzer.Analyze(testutil::ProseText(world_, tokens, 0.5, rng)));
    }
    return docs;
  }
  testutil::SyntheticWorld world_;
  WatermarkConfig cfg_;
};

TEST_F(SweepTest, LengthTrend) {
  std::map<size_t, std::vector<Document>> buckets;
  for (size_t len : {50, 100, 200}) buckets[len] = Corpus(40, len, len);
  const LengthSweepResult result = LengthSweep(buckets, cfg_);
  ASSERT_EQ(result.rows.size(), 3u);
  for (size_t i = 1; i < result.rows.size(); ++i) {
    EXPECT_GT(result.rows[i].mean_fast_z, result.rows[i - 1].mean_fast_z);
  }
  for (const LengthSweepRow& row : result.rows) {
    EXPECT_GE(row.mean_precise_z, row.mean_fast_z);
  }
}

TEST_F(SweepTest, LengthSweepNeedsTwoBuckets) {
  std::map<size_t, std::vector<Document>> one = {{50, Corpus(2, 50, 1)}};
  EXPECT_THROW(LengthSweep(one, cfg_), InvalidArgumentError);
  std::map<size_t, std::vector<Document>> with_empty = {{50, Corpus(2, 50, 1)},
                                                       {100, {}}};
  const LengthSweepResult r = LengthSweep(with_empty, cfg_);
  EXPECT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST_F(SweepTest, DeletionSweepIsMonotone) {
  const std::vector<Document> clean = Corpus(40, 150, 3);
  std::vector<Document> marked;
  const Analyzer analyzer = cfg_.MakeAnalyzer();
  for (const Document& d : clean) marked.push_back(analyzer.Reanalyze(Inject(d, cfg_).doc_out));
  AttackSpec spec;
  spec.kind = AttackKind::kDelete;
  spec.rng_seed = 17;
  const std::vector<double> ps = {0.0, 0.2, 0.5};
  const std::vector<AttackSweepRow> rows = AttackSweep(marked, clean, spec, ps, cfg_);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GE(rows[0].mean_z, rows[1].mean_z);
  EXPECT_GE(rows[1].mean_z, rows[2].mean_z);
  EXPECT_GT(rows[0].detection_rate, 0.8);
}

TEST(DeriveSeedTest, XorWithKeyHash) {
  EXPECT_EQ(DeriveSeed(5, "doc-1"), 5 ^ HashWord("doc-1").value);
  EXPECT_NE(DeriveSeed(5, "doc-1"), DeriveSeed(5, "doc-2"));
}

TEST(CsvTest, LongFormat) {
  std::ostringstream out;
  const std::vector<ResultRow> rows = {{"length", "50", "mean_z", 1.5},
                                       {"attack", "delete,p=0.1", "f1", 0.25}};
  WriteResultsCsv(out, rows);
  EXPECT_EQ(out.str(),
            "experiment,parameter,metric,value\n"
            "length,50,mean_z,1.5\n"
            "attack,\"delete,p=0.1\",f1,0.25\n");
  std::ostringstream roc;
  WriteRocCsv(roc, RocAuc(std::vector<double>{1}, std::vector<double>{0}));
  EXPECT_EQ(roc.str(), "threshold,tpr,fpr\n0,1,1\n1,1,0\ninf,0,0\n");
}

}  // namespace
}  // namespace synmark
