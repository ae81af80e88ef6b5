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

#include "synmark/attacks.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "support/synthetic.h"
#include "synmark/detect.h"
#include "synmark/errors.h"
#include "synmark/inject.h"
#include "synmark/unicode.h"

namespace synmark {
namespace {

class CountingTransformer : public TextTransformer {
 public:
  enum class Behaviour { kEcho, kUpper, kFail, kFailOdd };
  explicit CountingTransformer(Behaviour b) : behaviour_(b) {}
  std::string Transform(const std::string& text,
                        const std::string&) const override {
    const int n = calls_++;
    switch (behaviour_) {
      case Behaviour::kEcho:
        return text;
      case Behaviour::kUpper:
        return unicode::ToUpper(text);
      case Behaviour::kFail:
        throw ProviderError("unavailable");
      case Behaviour::kFailOdd:
        if (n % 2 == 1) throw ProviderError("flaky");
        return text + " again";
    }
    return text;
  }
  int calls() const { return calls_; }

 private:
  Behaviour behaviour_;
  mutable std::atomic<int> calls_{0};
};

AttackSpec Spec(AttackKind kind, double p, uint64_t seed = 1) {
  AttackSpec spec;
  spec.kind = kind;
  spec.p = p;
  spec.rng_seed = seed;
  return spec;
}

Document Analyze(std::string_view text) {
  return Analyzer(FindTagger("rule"), PresetExclusions("en")).Analyze(text);
}

TEST(AttackRngTest, TopBitsOfMersenneTwister) {
  AttackRng rng(42);
  std::mt19937_64 reference(42);
  for (int i = 0; i < 100; ++i) {
    const double u = rng.Uniform();
    EXPECT_EQ(u, static_cast<double>(reference() >> 11) / 9007199254740992.0);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(AttackSpecTest, Validation) {
  EXPECT_THROW(Spec(AttackKind::kDelete, -0.1).Validate(), ConfigError);
  EXPECT_THROW(Spec(AttackKind::kDelete, 1.5).Validate(), ConfigError);
  EXPECT_THROW(Spec(AttackKind::kPolish, 0.5).Validate(), ConfigError);
  EXPECT_NO_THROW(Spec(AttackKind::kDelete, 1.0).Validate());
  EXPECT_EQ(ParseAttackKind("retranslate"), AttackKind::kRetranslate);
  EXPECT_EQ(AttackKindName(AttackKind::kSynonym), "synonym");
  EXPECT_THROW(ParseAttackKind("shuffle"), ConfigError);
}

TEST(DeleteAttackTest, Extremes) {
  const Document doc = Analyze("The cat sat on the mat. It purred!");
  EXPECT_EQ(AttackDelete(doc, Spec(AttackKind::kDelete, 0)).doc.text, doc.text);
  const AttackResult all = AttackDelete(doc, Spec(AttackKind::kDelete, 1));
  EXPECT_TRUE(all.doc.empty());
  EXPECT_EQ(all.changed, doc.size());
}

TEST(DeleteAttackTest, SurvivingFraction) {
  const testutil::SyntheticWorld world = testutil::MakeWorld();
  std::mt19937_64 rng(2);
  const Document doc = Analyze(testutil::ProseText(world, 5000, 0.5, rng));
  const AttackResult r = AttackDelete(doc, Spec(AttackKind::kDelete, 0.3, 77));
  const double n = static_cast<double>(doc.size());
  const double kept = static_cast<double>(r.doc.size()) / n;
  EXPECT_NEAR(kept, 0.7, 3 * std::sqrt(0.21 / n));
  EXPECT_EQ(r.doc.size() + r.changed, doc.size());
}

TEST(DeleteAttackTest, SurvivorsKeepSurfacesAndOrder) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> pieces = {"alpha", "beta,", "(gamma)", "delta.",
                                           "\"eps\"", "zeta!", "eta"};
  for (uint64_t seed = 0; seed < 100; ++seed) {
    std::string text;
    for (int i = 0; i < 20; ++i) {
      text += pieces[rng() % pieces.size()];
      text += rng() % 4 == 0 ? "\n" : " ";
    }
    const Document doc = Tokenize(text);
    const AttackResult r = AttackDelete(doc, Spec(AttackKind::kDelete, 0.4, seed));
    EXPECT_EQ(r.doc.size() + r.changed, doc.size());
    // Survivors form a subsequence of the original surfaces.
    size_t j = 0;
    for (const Token& t : doc.tokens) {
      if (j < r.doc.size() && r.doc.tokens[j].surface == t.surface) ++j;
    }
    EXPECT_EQ(j, r.doc.size());
  }
}

TEST(DeleteAttackTest, SeedDeterminesOutcome) {
  const Document doc = Analyze("one two three four five six seven eight nine ten");
  const std::string a = AttackDelete(doc, Spec(AttackKind::kDelete, 0.5, 9)).doc.text;
  EXPECT_EQ(a, AttackDelete(doc, Spec(AttackKind::kDelete, 0.5, 9)).doc.text);
  bool differs = false;
  for (uint64_t s = 10; s < 20 && !differs; ++s) {
    differs = AttackDelete(doc, Spec(AttackKind::kDelete, 0.5, s)).doc.text != a;
  }
  EXPECT_TRUE(differs);
}

class SynonymAttackTest : public ::testing::Test {
 protected:
  SynonymAttackTest()
      : world_(testutil::MakeWorld()), cfg_(testutil::MakeConfig(world_)) {}
  testutil::SyntheticWorld world_;
  WatermarkConfig cfg_;
};

TEST_F(SynonymAttackTest, ZeroProbabilityIsIdentity) {
  std::mt19937_64 rng(1);
  const Document doc =
      cfg_.MakeAnalyzer().Analyze(testutil::ProseText(world_, 60, 1.0, rng));
  const AttackResult r = RunAttack(doc, Spec(AttackKind::kSynonym, 0), cfg_);
  EXPECT_EQ(r.doc.text, doc.text);
  EXPECT_EQ(r.attempted, 0u);
}

TEST_F(SynonymAttackTest, CertainAttackUsesTopCandidate) {
  // Ten content words; each cluster member's top candidate is the
  // alphabetically first other member, as all members share one vector.
  std::vector<std::string> words(world_.synonym_words.begin(),
                                 world_.synonym_words.begin() + 40);
  std::vector<std::string> chosen;
  for (size_t i = 0; i < 10; ++i) chosen.push_back(words[(i * 7) % 40]);
  std::string text;
  for (const std::string& w : chosen) text += (text.empty() ? "" : " ") + w;
  const Document doc = cfg_.MakeAnalyzer().Analyze(text);
  const AttackResult r = RunAttack(doc, Spec(AttackKind::kSynonym, 1), cfg_);
  ASSERT_EQ(r.doc.size(), 10u);
  EXPECT_EQ(r.doc.tokens[0].surface, chosen[0]);
  for (size_t i = 1; i < 10; ++i) {
    std::vector<std::string> others = *world_.lexicon->Synonyms(chosen[i]);
    std::sort(others.begin(), others.end());
    EXPECT_EQ(r.doc.tokens[i].surface, others.front()) << i;
  }
  EXPECT_EQ(r.changed, 9u);
}

TEST_F(SynonymAttackTest, LowersMeanZ) {
  const Analyzer analyzer = cfg_.MakeAnalyzer();
  std::mt19937_64 rng(5);
  double before = 0, after = 0;
  for (uint64_t d = 0; d < 40; ++d) {
    const Document doc = analyzer.Analyze(testutil::ProseText(world_, 200, 1.0, rng));
    const Document marked = analyzer.Reanalyze(Inject(doc, cfg_).doc_out);
    before += DetectFast(marked, cfg_).z;
    const AttackResult r = RunAttack(marked, Spec(AttackKind::kSynonym, 0.5, d), cfg_);
    after += DetectFast(analyzer.Reanalyze(r.doc), cfg_).z;
  }
  EXPECT_LT(after, before);
}

TEST(ExternalAttackTest, ZeroProbabilityMakesNoCalls) {
  auto client = std::make_shared<CountingTransformer>(
      CountingTransformer::Behaviour::kFail);
  AttackSpec spec = Spec(AttackKind::kRetranslate, 0);
  spec.client = client;
  const Document doc = Analyze("One thing. Two things.");
  EXPECT_EQ(AttackExternal(doc, spec).doc.text, doc.text);
  EXPECT_EQ(client->calls(), 0);
}

TEST(ExternalAttackTest, EchoLeavesTextUnchanged) {
  auto client = std::make_shared<CountingTransformer>(
      CountingTransformer::Behaviour::kEcho);
  const Document doc = Analyze("One thing. Two things!  Three more?");
  for (double p : {0.3, 0.7, 1.0}) {
    AttackSpec spec = Spec(AttackKind::kPolish, p, 4);
    spec.client = client;
    EXPECT_EQ(AttackExternal(doc, spec).doc.text, doc.text);
  }
}

TEST(ExternalAttackTest, UppercasingStubRecomputesBits) {
  auto client = std::make_shared<CountingTransformer>(
      CountingTransformer::Behaviour::kUpper);
  AttackSpec spec = Spec(AttackKind::kRetranslate, 1);
  spec.client = client;
  const WatermarkConfig cfg;
  const Analyzer analyzer = cfg.MakeAnalyzer();
  const Document doc = analyzer.Analyze("Gardens bloom early. Rivers flow north.");
  const AttackResult r = AttackExternal(doc, spec);
  EXPECT_EQ(r.doc.text, "GARDENS BLOOM EARLY. RIVERS FLOW NORTH.");
  EXPECT_EQ(client->calls(), 2);
  EXPECT_EQ(r.changed, 2u);
  const DetectionReport after = DetectFast(analyzer.Reanalyze(r.doc), cfg, true);
  const DetectionReport direct = DetectFast(
      analyzer.Analyze("GARDENS BLOOM EARLY. RIVERS FLOW NORTH."), cfg, true);
  EXPECT_EQ(after.count_one, direct.count_one);
  EXPECT_EQ(after.n, direct.n);
}

TEST(ExternalAttackTest, FailuresAreLoggedAndTotalFailureAborts) {
  const Document doc = Analyze("A one. B two. C three. D four.");
  AttackSpec spec = Spec(AttackKind::kRetranslate, 1);
  spec.max_in_flight = 1;
  spec.client = std::make_shared<CountingTransformer>(
      CountingTransformer::Behaviour::kFailOdd);
  const AttackResult partial = AttackExternal(doc, spec);
  EXPECT_EQ(partial.attempted, 4u);
  EXPECT_EQ(partial.changed, 2u);
  EXPECT_EQ(partial.log.size(), 2u);

  spec.client = std::make_shared<CountingTransformer>(
      CountingTransformer::Behaviour::kFail);
  EXPECT_THROW(AttackExternal(doc, spec), AttackAbortedError);
}

TEST(ExternalAttackTest, LineClientOverProcess) {
  ExternalTransformerHandle handle;
  handle.endpoint = std::string(SYNMARK_FAKE_SERVER) + " upper";
  handle.prompt_or_route = "en>de>en";
  AttackSpec spec = Spec(AttackKind::kRetranslate, 1);
  spec.client = LineTransformerClient::Open(handle);
  spec.route = handle.prompt_or_route;
  const AttackResult r = AttackExternal(Analyze("quiet words. more words."), spec);
  EXPECT_EQ(r.doc.text, "QUIET WORDS. MORE WORDS.");
}

TEST(FixtureTapeTest, RecordThenReplay) {
  const std::string tape = ::testing::TempDir() + "/transform_tape.jsonl";
  std::remove(tape.c_str());
  const Document doc = Analyze("First part here. Second part there.");
  AttackSpec spec = Spec(AttackKind::kPolish, 1);
  spec.route = "polish";
  spec.client = std::make_shared<RecordingTransformer>(
      std::make_shared<CountingTransformer>(CountingTransformer::Behaviour::kUpper),
      tape);
  const std::string live = AttackExternal(doc, spec).doc.text;

  const auto replay = FixtureTapeTransformer::Load(tape);
  EXPECT_EQ(replay->size(), 2u);
  spec.client = std::shared_ptr<const TextTransformer>(replay.get(), [](auto*) {});
  EXPECT_EQ(AttackExternal(doc, spec).doc.text, live);
  EXPECT_THROW(replay->Transform("never recorded", "polish"), ProviderError);
  EXPECT_THROW(replay->Transform("First part here.", "other route"), ProviderError);
}

TEST(FixtureTapeTest, MalformedTapes) {
  const std::string tape = ::testing::TempDir() + "/bad_tape.jsonl";
  std::ofstream(tape) << R"({"id":1,"op":"transform","text":"a","route":""})"
                      << "\n";
  EXPECT_THROW(FixtureTapeTransformer::Load(tape), ConfigError);
  std::ofstream(tape) << R"({"id":1,"op":"transform","text":"a","route":""})"
                      << "\n" << R"({"id":2,"text":"b"})" << "\n";
  EXPECT_THROW(FixtureTapeTransformer::Load(tape), ConfigError);
  EXPECT_THROW(FixtureTapeTransformer::Load("/nonexistent"), ConfigError);
}

TEST(FixtureTapeTest, ShippedTapeReplays) {
  const auto tape = FixtureTapeTransformer::Load(
      std::string(SYNMARK_TEST_DATA) + "/fixtures/retranslate_tape.jsonl");
  EXPECT_GE(tape->size(), 1u);
}

}  // namespace
}  // namespace synmark
