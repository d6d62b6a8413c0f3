#pragma once

#include <string>

namespace skillforge::http {

// POST a JSON body; returns the response body. Throws Error on transport or
// non-2xx status.
std::string post_json(const std::string& base_url, const std::string& path,
                      const std::string& body, const std::string& bearer_token);

} // namespace skillforge::http
