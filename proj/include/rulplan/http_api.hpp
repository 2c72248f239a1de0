#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "rulplan/decision_service.hpp"

namespace rulplan {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Routes one request to the service:
///   POST /assets      RulUpdate    -> 200 {"version": k} | 400
///   GET  /assets                   -> 200 [AssetRecord]
///   POST /plans       PlanOptions  -> 200 PlanReport | 400 | 409
///   GET  /plans/{id}               -> 200 PlanReport | 404
/// Anything else is 404 (unknown path) or 405 (known path, wrong method).
ApiResponse dispatch(DecisionService& service, std::string_view method,
                     std::string_view path, std::string_view body);

/// HTTP front end over `dispatch`.
class HttpServer {
 public:
  explicit HttpServer(DecisionService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds without serving. Port 0 picks a free port; returns the bound
  /// port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool serve();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rulplan
