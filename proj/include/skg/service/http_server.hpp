#pragma once

#include <memory>
#include <string>

#include "skg/service/snapshot.hpp"

namespace skg::service {

/// HTTP front end over handle(). Every request reads whatever snapshot the
/// holder has at that moment.
class HttpServer {
 public:
  explicit HttpServer(SnapshotHolder& holder);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free one. Returns the bound port. Throws on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace skg::service
