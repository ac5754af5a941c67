#pragma once

// Internal: thin wrapper around cpp-httplib for JSON POSTs.

#include <string>
#include <string_view>

#include "nanoie/model.hpp"

namespace nanoie::detail {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(std::string_view url);

/// POSTs a JSON body and parses the JSON response. Connection failures and
/// 429/5xx responses raise TransportError; other non-2xx raise Error.
ordered_json post_json(std::string_view url, const ordered_json& body, const std::string& bearer_token,
                       int timeout_seconds);

}  // namespace nanoie::detail
