#include "http_util.hpp"

#include <httplib.h>

#include "nanoie/error.hpp"

namespace nanoie::detail {

Endpoint split_url(std::string_view url) {
  const auto scheme = url.find("://");
  if (scheme == std::string_view::npos) throw ConfigError("URL lacks a scheme: " + std::string(url));
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, slash)), std::string(url.substr(slash))};
}

ordered_json post_json(std::string_view url, const ordered_json& body, const std::string& bearer_token,
                       int timeout_seconds) {
  const auto ep = split_url(url);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  httplib::Headers headers;
  if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);

  auto res = client.Post(ep.path, headers, body.dump(), "application/json");
  if (!res) throw TransportError("request to " + std::string(url) + " failed: " + httplib::to_string(res.error()));
  if (res->status == 429 || res->status >= 500) {
    throw TransportError("request to " + std::string(url) + " returned HTTP " + std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error("request to " + std::string(url) + " returned HTTP " + std::to_string(res->status) + ": " +
                res->body.substr(0, 200));
  }
  auto parsed = ordered_json::parse(res->body, nullptr, false);
  if (parsed.is_discarded()) throw TransportError("response from " + std::string(url) + " is not JSON");
  return parsed;
}

}  // namespace nanoie::detail
