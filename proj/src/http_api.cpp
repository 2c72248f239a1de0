#include "rulplan/http_api.hpp"

#include "httplib.h"

namespace rulplan {

using nlohmann::json;

namespace {

ApiResponse reply(int status, const json& body) { return {status, body.dump()}; }

ApiResponse error_reply(int status, const std::string& message) {
  return reply(status, {{"error", message}});
}

ApiResponse validation_reply(const ValidationError& e) {
  json violations = json::array();
  for (const auto& v : e.violations()) {
    violations.push_back({{"path", v.path}, {"reason", v.reason}});
  }
  return reply(400, {{"error", "validation failed"}, {"violations", violations}});
}

json asset_json(const AssetRecord& a) {
  return {{"id", a.id},
          {"x", a.position.x},
          {"y", a.position.y},
          {"rul", a.rul},
          {"service_time", a.service_time},
          {"component_cost", a.component_cost}};
}

// Empty bodies count as "{}" so POST /plans works without options.
std::optional<json> parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return json::object();
  }
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return std::nullopt;
  return doc;
}

}  // namespace

ApiResponse dispatch(DecisionService& service, std::string_view method,
                     std::string_view path, std::string_view body) {
  constexpr std::string_view kPlansPrefix = "/plans/";
  try {
    if (path == "/assets") {
      if (method == "GET") {
        json out = json::array();
        for (const auto& a : service.list_assets()) out.push_back(asset_json(a));
        return reply(200, out);
      }
      if (method == "POST") {
        auto doc = parse_body(body);
        if (!doc) return error_reply(400, "body is not valid JSON");
        const auto update = rul_update_from_json(*doc, now_utc());
        return reply(200, {{"version", service.ingest(update)}});
      }
      return error_reply(405, "method not allowed");
    }
    if (path == "/plans") {
      if (method != "POST") return error_reply(405, "method not allowed");
      auto doc = parse_body(body);
      if (!doc) return error_reply(400, "body is not valid JSON");
      const auto options = plan_options_from_json(*doc, service.settings());
      return reply(200, to_json(service.request_plan(options)));
    }
    if (path.starts_with(kPlansPrefix) && path.size() > kPlansPrefix.size() &&
        path.find('/', kPlansPrefix.size()) == std::string_view::npos) {
      if (method != "GET") return error_reply(405, "method not allowed");
      const std::string id(path.substr(kPlansPrefix.size()));
      return reply(200, to_json(service.get_plan(id)));
    }
    return error_reply(404, "no such resource");
  } catch (const ValidationError& e) {
    return validation_reply(e);
  } catch (const EmptyRegistryError& e) {
    return error_reply(409, e.what());
  } catch (const NotFoundError& e) {
    return error_reply(404, e.what());
  } catch (const StorageError& e) {
    return error_reply(500, e.what());
  }
}

struct HttpServer::Impl {
  explicit Impl(DecisionService& s) : service(s) {}
  DecisionService& service;
  httplib::Server server;
};

HttpServer::HttpServer(DecisionService& service)
    : impl_(std::make_unique<Impl>(service)) {
  // Method handlers rather than a pre-routing hook: the body has not been
  // read yet when pre-routing runs.
  const auto handle = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = dispatch(impl_->service, req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto& s = impl_->server;
  s.Get(".*", handle);
  s.Post(".*", handle);
  s.Put(".*", handle);
  s.Patch(".*", handle);
  s.Delete(".*", handle);
  s.Options(".*", handle);
  // The default also sets SO_REUSEPORT, which lets two servers share a port.
  s.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes),
                 sizeof yes);
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace rulplan
