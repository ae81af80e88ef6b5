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

#include "synmark/line_channel.h"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <regex>
#include <thread>

#include "synmark/errors.h"

extern char** environ;

namespace synmark {
namespace {

bool IsSocket(int fd) {
  struct stat st;
  return fstat(fd, &st) == 0 && S_ISSOCK(st.st_mode);
}

void IgnoreSigpipe() {
  static const bool once = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

}  // namespace

FdLineChannel::FdLineChannel(int read_fd, int write_fd)
    : read_fd_(read_fd), write_fd_(write_fd), socket_(IsSocket(write_fd)) {
  IgnoreSigpipe();
}

FdLineChannel::~FdLineChannel() { CloseAll(); }

void FdLineChannel::CloseWrite() {
  if (write_fd_ < 0) return;
  if (write_fd_ == read_fd_) {
    shutdown(write_fd_, SHUT_WR);
  } else {
    close(write_fd_);
  }
  write_fd_ = -1;
}

void FdLineChannel::CloseAll() {
  if (write_fd_ >= 0 && write_fd_ != read_fd_) close(write_fd_);
  if (read_fd_ >= 0) close(read_fd_);
  write_fd_ = read_fd_ = -1;
}

void FdLineChannel::WriteLine(std::string_view line) {
  if (write_fd_ < 0) throw ProviderError("channel closed for writing");
  std::string data(line);
  data.push_back('\n');
  size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n =
        socket_ ? send(write_fd_, data.data() + sent, data.size() - sent,
                       MSG_NOSIGNAL)
                : write(write_fd_, data.data() + sent, data.size() - sent);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProviderError(std::string("write failed: ") + std::strerror(errno));
    }
    sent += static_cast<size_t>(n);
  }
}

LineChannel::ReadStatus FdLineChannel::ReadLine(
    std::string& line, std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    const size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      line.assign(buffer_, 0, nl);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      buffer_.erase(0, nl + 1);
      return ReadStatus::kLine;
    }
    if (eof_ || read_fd_ < 0) {
      if (!buffer_.empty()) {
        line = std::move(buffer_);
        buffer_.clear();
        return ReadStatus::kLine;
      }
      return ReadStatus::kClosed;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) return ReadStatus::kTimeout;
    pollfd pfd{read_fd_, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ProviderError(std::string("poll failed: ") + std::strerror(errno));
    }
    if (ready == 0) return ReadStatus::kTimeout;
    char chunk[4096];
    const ssize_t n = read(read_fd_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      eof_ = true;
      continue;
    }
    if (n == 0) {
      eof_ = true;
      continue;
    }
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

ProcessChannel::ProcessChannel(int read_fd, int write_fd, pid_t pid)
    : FdLineChannel(read_fd, write_fd), pid_(pid) {}

std::unique_ptr<ProcessChannel> ProcessChannel::Spawn(
    const std::string& command) {
  int to_child[2];
  int from_child[2];
  if (pipe2(to_child, O_CLOEXEC) != 0) {
    throw ProviderError("pipe failed for '" + command + "'");
  }
  if (pipe2(from_child, O_CLOEXEC) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    throw ProviderError("pipe failed for '" + command + "'");
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);
  const char* argv[] = {"/bin/sh", "-c", command.c_str(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, nullptr,
                             const_cast<char* const*>(argv), environ);
  posix_spawn_file_actions_destroy(&actions);
  close(to_child[0]);
  close(from_child[1]);
  if (rc != 0) {
    close(to_child[1]);
    close(from_child[0]);
    throw ProviderError("cannot spawn '" + command + "': " + std::strerror(rc));
  }
  return std::unique_ptr<ProcessChannel>(
      new ProcessChannel(from_child[0], to_child[1], pid));
}

ProcessChannel::~ProcessChannel() {
  CloseWrite();
  // Give the child a moment to exit on EOF before terminating it.
  for (int i = 0; i < 50; ++i) {
    int status = 0;
    if (waitpid(pid_, &status, WNOHANG) != 0) return;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  kill(pid_, SIGTERM);
  int status = 0;
  waitpid(pid_, &status, 0);
}

std::unique_ptr<LineChannel> ConnectTcp(const std::string& host, uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  const std::string service = std::to_string(port);
  const int rc = getaddrinfo(host.c_str(), service.c_str(), &hints, &result);
  if (rc != 0) {
    throw ProviderError("cannot resolve " + host + ": " + gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
    fd = socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    if (connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    close(fd);
    fd = -1;
  }
  freeaddrinfo(result);
  if (fd < 0) {
    throw ProviderError("cannot connect to " + host + ":" + service);
  }
  return std::make_unique<FdLineChannel>(fd, fd);
}

std::unique_ptr<LineChannel> OpenEndpoint(const std::string& endpoint) {
  static const std::regex kHostPort(R"(^(?:tcp://)?([A-Za-z0-9.\-]+|\[[0-9a-fA-F:]+\]):(\d{1,5})$)");
  std::smatch m;
  if (std::regex_match(endpoint, m, kHostPort)) {
    std::string host = m[1].str();
    if (host.size() > 2 && host.front() == '[') host = host.substr(1, host.size() - 2);
    const int port = std::stoi(m[2].str());
    if (port <= 0 || port > 65535) {
      throw ConfigError("bad port in endpoint '" + endpoint + "'");
    }
    return ConnectTcp(host, static_cast<uint16_t>(port));
  }
  if (endpoint.rfind("tcp://", 0) == 0) {
    throw ConfigError("malformed TCP endpoint '" + endpoint + "'");
  }
  return ProcessChannel::Spawn(endpoint);
}

}  // namespace synmark
