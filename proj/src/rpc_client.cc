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

#include "synmark/rpc_client.h"

#include <string>

#include "synmark/errors.h"

namespace synmark {

LineRpcClient::LineRpcClient(std::unique_ptr<LineChannel> channel)
    : channel_(std::move(channel)) {
  if (channel_ == nullptr) throw InvalidArgumentError("null channel");
  reader_ = std::thread([this] { ReadLoop(); });
}

LineRpcClient::~LineRpcClient() {
  stop_ = true;
  if (reader_.joinable()) reader_.join();
}

void LineRpcClient::FailAll(std::exception_ptr error) {
  std::lock_guard<std::mutex> lock(pending_mu_);
  for (auto& [id, promise] : pending_) promise.set_value({{}, error});
  pending_.clear();
}

void LineRpcClient::ReadLoop() {
  std::string line;
  while (!stop_) {
    LineChannel::ReadStatus status;
    try {
      status = channel_->ReadLine(line, std::chrono::milliseconds(50));
    } catch (...) {
      std::lock_guard<std::mutex> lock(pending_mu_);
      fatal_ = std::current_exception();
      for (auto& [id, promise] : pending_) promise.set_value({{}, fatal_});
      pending_.clear();
      return;
    }
    if (status == LineChannel::ReadStatus::kTimeout) continue;
    if (status == LineChannel::ReadStatus::kClosed) {
      std::lock_guard<std::mutex> lock(pending_mu_);
      fatal_ = std::make_exception_ptr(ProviderError("peer closed the channel"));
      for (auto& [id, promise] : pending_) promise.set_value({{}, fatal_});
      pending_.clear();
      return;
    }
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("id") ||
        !record["id"].is_number_integer()) {
      FailAll(std::make_exception_ptr(
          ProtocolError("malformed response record: " + line.substr(0, 200))));
      continue;
    }
    const int64_t id = record["id"].get<int64_t>();
    std::lock_guard<std::mutex> lock(pending_mu_);
    const auto it = pending_.find(id);
    if (it == pending_.end()) {
      if (abandoned_.erase(id) > 0) continue;
      const auto error = std::make_exception_ptr(ProtocolError(
          "response carries unknown id " + std::to_string(id)));
      for (auto& [pid, promise] : pending_) promise.set_value({{}, error});
      pending_.clear();
      continue;
    }
    it->second.set_value({std::move(record), nullptr});
    pending_.erase(it);
  }
}

nlohmann::json LineRpcClient::Call(nlohmann::json request,
                                   std::chrono::milliseconds timeout) {
  request["id"] = next_id_.fetch_add(1);
  return CallRaw(request, timeout);
}

nlohmann::json LineRpcClient::CallRaw(const nlohmann::json& request,
                                      std::chrono::milliseconds timeout) {
  if (!request.contains("id") || !request["id"].is_number_integer()) {
    throw InvalidArgumentError("request lacks an integer id");
  }
  const int64_t id = request["id"].get<int64_t>();
  std::future<Outcome> future;
  {
    std::lock_guard<std::mutex> lock(pending_mu_);
    if (fatal_) std::rethrow_exception(fatal_);
    if (pending_.contains(id)) {
      throw InvalidArgumentError("id " + std::to_string(id) + " already in flight");
    }
    future = pending_[id].get_future();
  }
  try {
    std::lock_guard<std::mutex> lock(write_mu_);
    channel_->WriteLine(request.dump());
  } catch (...) {
    std::lock_guard<std::mutex> lock(pending_mu_);
    pending_.erase(id);
    throw;
  }
  if (future.wait_for(timeout) != std::future_status::ready) {
    std::lock_guard<std::mutex> lock(pending_mu_);
    // The reader may have completed the promise after wait_for returned.
    if (future.wait_for(std::chrono::seconds(0)) != std::future_status::ready) {
      pending_.erase(id);
      abandoned_.insert(id);
      throw ProviderError("request " + std::to_string(id) + " timed out after " +
                          std::to_string(timeout.count()) + " ms");
    }
  }
  Outcome outcome = future.get();
  if (outcome.error) std::rethrow_exception(outcome.error);
  if (outcome.response.contains("error")) {
    const auto& err = outcome.response["error"];
    throw ProviderError("peer reported error: " +
                        (err.is_string() ? err.get<std::string>() : err.dump()));
  }
  return std::move(outcome.response);
}

}  // namespace synmark
