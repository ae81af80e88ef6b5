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

#ifndef SYNMARK_RPC_CLIENT_H_
#define SYNMARK_RPC_CLIENT_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"
#include "synmark/line_channel.h"

namespace synmark {

// Request/response multiplexer over a LineChannel. Every record is a JSON
// object carrying an integer "id". Any number of threads may call Call()
// concurrently: writes are serialized and a reader thread routes responses
// back by id.
class LineRpcClient {
 public:
  explicit LineRpcClient(std::unique_ptr<LineChannel> channel);
  ~LineRpcClient();

  LineRpcClient(const LineRpcClient&) = delete;
  LineRpcClient& operator=(const LineRpcClient&) = delete;

  // Sets request["id"] to a fresh id, sends it and waits for the response
  // with the same id.
  //   timeout or transport failure   -> ProviderError
  //   {"id", "error"} response        -> ProviderError
  //   malformed or unknown-id record  -> ProtocolError
  nlohmann::json Call(nlohmann::json request, std::chrono::milliseconds timeout);

  // Sends `request` verbatim (its id included) and waits for the matching
  // response. Used for replaying recorded request tapes.
  nlohmann::json CallRaw(const nlohmann::json& request,
                         std::chrono::milliseconds timeout);

 private:
  struct Outcome {
    nlohmann::json response;
    std::exception_ptr error;
  };

  void ReadLoop();
  void FailAll(std::exception_ptr error);

  std::unique_ptr<LineChannel> channel_;
  std::mutex write_mu_;
  std::mutex pending_mu_;
  std::map<int64_t, std::promise<Outcome>> pending_;
  std::set<int64_t> abandoned_;
  std::exception_ptr fatal_;
  std::atomic<int64_t> next_id_{1};
  std::atomic<bool> stop_{false};
  std::thread reader_;
};

}  // namespace synmark

#endif  // SYNMARK_RPC_CLIENT_H_
