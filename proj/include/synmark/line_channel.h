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

#ifndef SYNMARK_LINE_CHANNEL_H_
#define SYNMARK_LINE_CHANNEL_H_

#include <sys/types.h>

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace synmark {

// A bidirectional stream of newline-terminated UTF-8 records.
class LineChannel {
 public:
  enum class ReadStatus { kLine, kTimeout, kClosed };

  virtual ~LineChannel() = default;

  // Appends '\n'. Throws ProviderError when the peer is gone.
  virtual void WriteLine(std::string_view line) = 0;
  virtual ReadStatus ReadLine(std::string& line,
                              std::chrono::milliseconds timeout) = 0;
};

// Channel over a pair of file descriptors, which it owns.
class FdLineChannel : public LineChannel {
 public:
  FdLineChannel(int read_fd, int write_fd);
  ~FdLineChannel() override;

  FdLineChannel(const FdLineChannel&) = delete;
  FdLineChannel& operator=(const FdLineChannel&) = delete;

  void WriteLine(std::string_view line) override;
  ReadStatus ReadLine(std::string& line,
                      std::chrono::milliseconds timeout) override;

 protected:
  void CloseWrite();
  void CloseAll();

 private:
  int read_fd_;
  int write_fd_;
  bool socket_;
  std::string buffer_;
  bool eof_ = false;
};

// Child process spoken to over its stdin/stdout. The command runs under
// /bin/sh -c; stderr is inherited.
class ProcessChannel : public FdLineChannel {
 public:
  static std::unique_ptr<ProcessChannel> Spawn(const std::string& command);
  ~ProcessChannel() override;

  pid_t pid() const { return pid_; }

 private:
  ProcessChannel(int read_fd, int write_fd, pid_t pid);

  pid_t pid_;
};

std::unique_ptr<LineChannel> ConnectTcp(const std::string& host, uint16_t port);

// "tcp://host:port" or "host:port" connects over TCP; anything else is run
// as a command.
std::unique_ptr<LineChannel> OpenEndpoint(const std::string& endpoint);

}  // namespace synmark

#endif  // SYNMARK_LINE_CHANNEL_H_
