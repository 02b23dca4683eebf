#include "proofdeck/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <utility>

namespace proofdeck {

std::optional<std::string> StreamChannel::receive() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void StreamChannel::send(std::string_view message) {
  out_ << message << '\n';
  out_.flush();
}

SocketChannel::~SocketChannel() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<std::string> SocketChannel::receive() {
  while (true) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (eof_) {
      if (buffer_.empty()) return std::nullopt;
      return std::exchange(buffer_, {});
    }
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      eof_ = true;
      continue;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void SocketChannel::send(std::string_view message) {
  std::string framed(message);
  framed += '\n';
  std::size_t off = 0;
  while (off < framed.size()) {
    const ssize_t n = ::send(fd_, framed.data() + off, framed.size() - off, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return;  // peer went away; the next receive sees EOF
    off += static_cast<std::size_t>(n);
  }
}

void serve(MessageChannel& channel, Engine& engine, std::ostream* log) {
  while (auto message = channel.receive()) {
    if (message->find_first_not_of(" \t") == std::string::npos) continue;
    if (log) *log << "> " << *message << '\n';
    for (const auto& out : engine.handle_json(*message)) {
      if (log) *log << "< " << out << '\n';
      channel.send(out);
    }
    if (log) log->flush();
  }
}

void listen_and_serve(const std::string& address, const std::vector<std::filesystem::path>& roots,
                      std::ostream* log, std::optional<int> max_connections) {
  std::string host = "127.0.0.1";
  std::string port = address;
  if (auto colon = address.rfind(':'); colon != std::string::npos) {
    host = address.substr(0, colon);
    port = address.substr(colon + 1);
  }

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  if (int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), port.c_str(), &hints, &res); rc != 0)
    throw std::runtime_error("cannot resolve " + address + ": " + ::gai_strerror(rc));

  int listener = -1;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    listener = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (listener < 0) continue;
    int yes = 1;
    ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    if (::bind(listener, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(listener, 8) == 0) break;
    ::close(listener);
    listener = -1;
  }
  ::freeaddrinfo(res);
  if (listener < 0) throw std::runtime_error("cannot listen on " + address + ": " + std::strerror(errno));

  for (int served = 0; !max_connections || served < *max_connections; ++served) {
    const int fd = ::accept(listener, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      ::close(listener);
      throw std::runtime_error(std::string("accept failed: ") + std::strerror(errno));
    }
    SocketChannel channel(fd);
    Engine engine(roots);
    serve(channel, engine, log);
  }
  ::close(listener);
}

}  // namespace proofdeck
