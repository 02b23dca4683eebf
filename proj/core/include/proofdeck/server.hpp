#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "proofdeck/engine.hpp"

namespace proofdeck {

/// A bidirectional stream of framed JSON messages.
class MessageChannel {
 public:
  virtual ~MessageChannel() = default;
  /// Next inbound message, or nullopt at end of stream.
  virtual std::optional<std::string> receive() = 0;
  virtual void send(std::string_view message) = 0;
};

/// JSON lines over iostreams: one message per `\n`-terminated line.
class StreamChannel : public MessageChannel {
 public:
  StreamChannel(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::optional<std::string> receive() override;
  void send(std::string_view message) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

/// JSON lines over a connected socket. Owns the descriptor.
class SocketChannel : public MessageChannel {
 public:
  explicit SocketChannel(int fd) : fd_(fd) {}
  ~SocketChannel() override;
  SocketChannel(const SocketChannel&) = delete;
  SocketChannel& operator=(const SocketChannel&) = delete;

  std::optional<std::string> receive() override;
  void send(std::string_view message) override;

 private:
  int fd_;
  std::string buffer_;
  bool eof_ = false;
};

/// Processes messages one at a time until the channel reports end of
/// stream. Malformed messages produce JsonExn and the loop continues. When
/// `log` is set, every inbound line is appended as `> msg` and every
/// outbound one as `< msg`.
void serve(MessageChannel& channel, Engine& engine, std::ostream* log = nullptr);

/// Accepts connections on `address` (`host:port` or `port`) and serves each
/// with a fresh engine built from `roots`, one connection at a time. Stops
/// after `max_connections` when given. Throws std::runtime_error on socket
/// setup failure.
void listen_and_serve(const std::string& address, const std::vector<std::filesystem::path>& roots,
                      std::ostream* log = nullptr, std::optional<int> max_connections = std::nullopt);

}  // namespace proofdeck
