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

#include "synmark/cli.h"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "support/tcp_line_server.h"
#include "synmark/detect.h"

namespace synmark {
namespace {

using json = nlohmann::ordered_json;

const std::string kData = SYNMARK_TEST_DATA;

std::string Temp(const std::string& name) { return ::testing::TempDir() + "/" + name; }

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> ReadRecords(const std::string& path) {
  std::vector<json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

CliConfig Base(const std::string& command) {
  CliConfig cli;
  cli.command = command;
  cli.config_path = kData + "/demo/config.ini";
  cli.threads = 2;
  return cli;
}

int Shell(const std::string& args) {
  const int status = std::system((std::string(SYNMARK_CLI) + " " + args +
                                  " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, InjectThenDetect) {
  CliConfig inject = Base("inject");
  inject.input_path = kData + "/demo/corpus.jsonl";
  inject.output_path = Temp("marked.jsonl");
  std::ostringstream diag;
  ASSERT_EQ(synmark::Run(inject, diag), kExitOk) << diag.str();
  const std::vector<json> marked = ReadRecords(inject.output_path);
  ASSERT_EQ(marked.size(), 4u);
  size_t replaced = 0;
  for (const json& r : marked) {
    EXPECT_TRUE(r["watermarked"].is_string());
    EXPECT_LE(r["replaced"].get<size_t>(), r["visited"].get<size_t>());
    replaced += r["replaced"].get<size_t>();
  }
  EXPECT_GT(replaced, 0u);
  EXPECT_EQ(marked[0]["id"], "d1");

  CliConfig detect = Base("detect");
  detect.input_path = inject.output_path;
  detect.output_path = Temp("verdicts.jsonl");
  detect.mode = "fast";
  detect.alpha = 0.05;
  ASSERT_EQ(synmark::Run(detect, diag), kExitOk) << diag.str();
  const std::vector<json> verdicts = ReadRecords(detect.output_path);
  ASSERT_EQ(verdicts.size(), 4u);
  for (const json& v : verdicts) {
    const double n = v["N"].get<double>();
    const double ones = v["ones"].get<double>();
    const double z = (ones / n - 0.5) / std::sqrt(0.25 / n);
    EXPECT_NEAR(v["z"].get<double>(), z, 1e-12);
    EXPECT_EQ(v["watermarked"].get<bool>(), z > 1.6449);
    EXPECT_EQ(v["mode"], "fast");
    std::vector<std::string> keys;
    for (const auto& item : v.items()) keys.push_back(item.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"id", "mode", "N", "ones", "p_hat",
                                              "z", "p_value", "watermarked"}));
  }
}

TEST(CliTest, PreciseDetectAndEval) {
  CliConfig inject = Base("inject");
  inject.input_path = kData + "/demo/corpus.jsonl";
  inject.output_path = Temp("marked2.jsonl");
  std::ostringstream diag;
  ASSERT_EQ(synmark::Run(inject, diag), kExitOk);

  CliConfig detect = Base("detect");
  detect.input_path = inject.output_path;
  detect.output_path = Temp("precise.jsonl");
  detect.mode = "precise";
  ASSERT_EQ(synmark::Run(detect, diag), kExitOk) << diag.str();
  for (const json& v : ReadRecords(detect.output_path)) {
    EXPECT_EQ(v["mode"], "precise");
  }

  CliConfig eval = Base("eval");
  eval.input_path = inject.output_path;
  eval.output_path = Temp("eval.csv");
  eval.roc_out = Temp("roc.csv");
  ASSERT_EQ(synmark::Run(eval, diag), kExitOk) << diag.str();
  const std::string csv = ReadFile(eval.output_path);
  EXPECT_EQ(csv.rfind("experiment,parameter,metric,value\n", 0), 0u);
  EXPECT_NE(csv.find(",auc,"), std::string::npos);
  EXPECT_NE(csv.find(",vec_similarity,"), std::string::npos);
  EXPECT_EQ(ReadFile(*eval.roc_out).rfind("threshold,tpr,fpr\n", 0), 0u);
}

TEST(CliTest, AttackIsSeededPerDocument) {
  CliConfig attack = Base("attack");
  attack.input_path = kData + "/demo/corpus.jsonl";
  attack.attack_kind = "delete";
  attack.attack_p = 0.3;
  attack.seed = 42;
  std::ostringstream diag;
  attack.output_path = Temp("attack_a.jsonl");
  ASSERT_EQ(synmark::Run(attack, diag), kExitOk) << diag.str();
  attack.output_path = Temp("attack_b.jsonl");
  attack.threads = 1;
  ASSERT_EQ(synmark::Run(attack, diag), kExitOk);
  EXPECT_EQ(ReadFile(Temp("attack_a.jsonl")), ReadFile(Temp("attack_b.jsonl")));
  const std::vector<json> out = ReadRecords(Temp("attack_a.jsonl"));
  ASSERT_EQ(out.size(), 4u);
  EXPECT_NE(out[0]["attacked"], out[0]["text"]);
  EXPECT_EQ(out[0]["attack"]["kind"], "delete");

  attack.seed = 43;
  attack.output_path = Temp("attack_c.jsonl");
  ASSERT_EQ(synmark::Run(attack, diag), kExitOk);
  EXPECT_NE(ReadFile(Temp("attack_a.jsonl")), ReadFile(Temp("attack_c.jsonl")));
}

TEST(CliTest, RetranslateFromTape) {
  CliConfig attack = Base("attack");
  attack.input_path = kData + "/demo/corpus.jsonl";
  attack.output_path = Temp("retranslated.jsonl");
  attack.field = "text";
  attack.attack_kind = "retranslate";
  attack.attack_p = 1.0;
  attack.route = "en>de>en";
  attack.transformer_tape = kData + "/fixtures/retranslate_tape.jsonl";
  std::ostringstream diag;
  // d3 and d4 are not on the tape, so their attacks abort.
  EXPECT_EQ(synmark::Run(attack, diag), kExitDocumentError);
  const std::vector<json> out = ReadRecords(attack.output_path);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0]["attacked"].get<std::string>().rfind("The ancient river", 0), 0u);
  EXPECT_TRUE(out[2].contains("error"));
  EXPECT_EQ(out[2]["id"], "d3");
}

TEST(CliTest, DocumentErrorsProduceRecordsAndExitOne) {
  const std::string input = Temp("mixed.jsonl");
  std::ofstream(input) << R"({"id":"ok","text":"Gardens bloom near quiet rivers."})"
                       << "\n"
                       << R"({"id":"punct","text":"... !!!"})" << "\n"
                       << "not json\n"
                       << R"({"id":"notext"})" << "\n";
  CliConfig detect = Base("detect");
  detect.input_path = input;
  detect.output_path = Temp("mixed_out.jsonl");
  std::ostringstream diag;
  EXPECT_EQ(synmark::Run(detect, diag), kExitDocumentError);
  const std::vector<json> out = ReadRecords(detect.output_path);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_FALSE(out[0].contains("error"));
  EXPECT_TRUE(out[1].contains("error"));
  EXPECT_TRUE(out[2].contains("error"));
  EXPECT_EQ(out[2]["id"], "line:3");
  EXPECT_TRUE(out[3].contains("error"));
}

TEST(CliTest, ConfigurationErrorsExitTwo) {
  std::ostringstream diag;
  CliConfig bad = Base("detect");
  bad.config_path = "/nonexistent.ini";
  EXPECT_EQ(synmark::Run(bad, diag), kExitConfigError);

  CliConfig alpha = Base("detect");
  alpha.input_path = kData + "/demo/corpus.jsonl";
  alpha.output_path = Temp("unused.jsonl");
  alpha.alpha = 2.0;
  EXPECT_EQ(synmark::Run(alpha, diag), kExitConfigError);

  CliConfig mode = alpha;
  mode.alpha.reset();
  mode.mode = "sideways";
  EXPECT_EQ(synmark::Run(mode, diag), kExitConfigError);

  CliConfig no_provider = Base("inject");
  no_provider.config_path.clear();
  no_provider.input_path = kData + "/demo/corpus.jsonl";
  EXPECT_EQ(synmark::Run(no_provider, diag), kExitConfigError);

  CliConfig attack = Base("attack");
  attack.input_path = kData + "/demo/corpus.jsonl";
  attack.attack_kind = "polish";
  attack.attack_p = 0.5;
  EXPECT_EQ(synmark::Run(attack, diag), kExitConfigError);

  CliConfig unknown = Base("frobnicate");
  EXPECT_EQ(synmark::Run(unknown, diag), kExitConfigError);
}

TEST(CliTest, ConformanceFixture) {
  CliConfig cli = Base("conformance");
  cli.output_path = Temp("conformance.txt");
  std::ostringstream diag;
  EXPECT_EQ(synmark::Run(cli, diag), kExitOk) << diag.str();
  EXPECT_NE(ReadFile(cli.output_path).find("0 mismatched"), std::string::npos);

  const std::string broken = Temp("broken_bits.tsv");
  std::ofstream(broken) << "the\tcat\t0\n";
  cli.input_path = broken;
  EXPECT_EQ(synmark::Run(cli, diag), kExitDocumentError);
}

TEST(CliTest, ConformanceReplaysRequestTapeOverTcp) {
  testutil::TcpLineServer server(testutil::CannedProviderAnswer);
  CliConfig cli = Base("conformance");
  cli.remote_endpoint = server.endpoint();
  cli.output_path = Temp("conformance_remote.txt");
  std::ostringstream diag;
  EXPECT_EQ(synmark::Run(cli, diag), kExitOk) << diag.str() << ReadFile(cli.output_path);
  const std::string report = ReadFile(cli.output_path);
  EXPECT_EQ(report.find("FAIL"), std::string::npos);
  EXPECT_NE(report.find("(ping): ok"), std::string::npos);
}

TEST(CliTest, ConformanceFlagsBrokenProvider) {
  CliConfig cli = Base("conformance");
  cli.remote_endpoint = std::string(SYNMARK_FAKE_SERVER) + " fail";
  cli.output_path = Temp("conformance_fail.txt");
  std::ostringstream diag;
  EXPECT_EQ(synmark::Run(cli, diag), kExitDocumentError);
  EXPECT_NE(ReadFile(cli.output_path).find("FAIL"), std::string::npos);
}

TEST(CliBinaryTest, ArgumentHandling) {
  EXPECT_EQ(Shell("--help"), 0);
  EXPECT_EQ(Shell(""), kExitConfigError);
  EXPECT_EQ(Shell("detect --bogus-flag"), kExitConfigError);
  EXPECT_EQ(Shell("conformance"), kExitOk);
  EXPECT_EQ(Shell("detect --in " + kData + "/demo/corpus.jsonl --mode fast"),
            kExitOk);
}

}  // namespace
}  // namespace synmark
