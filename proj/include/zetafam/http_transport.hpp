#pragma once

// Network transport over cpp-httplib.  Requires linking OpenSSL for https
// endpoints.

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include <memory>
#include <string>

#include "zetafam/dbclient.hpp"

namespace zetafam {

class HttpTransport : public Transport {
 public:
  /// `base_url` such as https://www.lmfdb.org/api/nf_fields/
  explicit HttpTransport(const std::string& base_url, double timeout_seconds = 30.0) {
    const auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) throw validation_error("base_url must include a scheme: " + base_url);
    const auto path_start = base_url.find('/', scheme_end + 3);
    origin_ = base_url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : base_url.substr(path_start);
    client_ = std::make_unique<httplib::Client>(origin_);
    const auto sec = static_cast<time_t>(timeout_seconds);
    const auto usec = static_cast<time_t>((timeout_seconds - static_cast<double>(sec)) * 1e6);
    client_->set_connection_timeout(sec, usec);
    client_->set_read_timeout(sec, usec);
    client_->set_follow_location(true);
  }

  HttpResponse get(const std::string& query) override {
    const auto res = client_->Get(path_ + "?" + query);
    if (!res) throw transport_error("GET " + origin_ + path_ + ": " + httplib::to_string(res.error()));
    return {res->status, res->body};
  }

 private:
  std::string origin_;
  std::string path_;
  std::unique_ptr<httplib::Client> client_;
};

/// Client wired to the configured endpoint; offline configs never open sockets.
inline DbClient make_client(const ClientConfig& cfg) {
  if (cfg.offline) return DbClient(cfg);
  return DbClient(cfg, std::make_shared<HttpTransport>(cfg.base_url, cfg.timeout_seconds));
}

}  // namespace zetafam
