#include "skg/service/http_server.hpp"

#include <httplib.h>

#include "skg/common/error.hpp"
#include "skg/service/api.hpp"

namespace skg::service {

struct HttpServer::Impl {
  SnapshotHolder& holder;
  httplib::Server server;

  explicit Impl(SnapshotHolder& h) : holder(h) {}

  void dispatch(const httplib::Request& req, httplib::Response& res) {
    ApiRequest api{req.method, req.path, {}, req.body};
    // httplib folds form-encoded bodies into req.params; only the URL query counts here
    httplib::Params query;
    if (const auto q = req.target.find('?'); q != std::string::npos) {
      httplib::detail::parse_query_text(req.target.substr(q + 1), query);
    }
    for (const auto& [k, v] : query) {
      if (!api.params.emplace(k, v).second) {
        res.status = 400;
        const nlohmann::json body{{"error",
                                   {{"status", 400},
                                    {"code", "duplicate_parameter"},
                                    {"message", "parameter '" + k + "' given twice"}}}};
        res.set_content(body.dump(), "application/json; charset=utf-8");
        return;
      }
    }
    const auto snapshot = holder.get();
    const auto out = handle(*snapshot, api);
    res.status = out.status;
    res.set_content(out.body, "application/json; charset=utf-8");
  }
};

HttpServer::HttpServer(SnapshotHolder& holder) : impl_(std::make_unique<Impl>(holder)) {
  const auto h = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->dispatch(req, res);
  };
  impl_->server.Get(".*", h);
  impl_->server.Post(".*", h);
  impl_->server.Put(".*", h);
  impl_->server.Delete(".*", h);
  impl_->server.Patch(".*", h);
  impl_->server.set_payload_max_length(1 << 20);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace skg::service
