#include "http_support.hpp"

#include "skillforge/common.hpp"

#include "httplib.h"

namespace skillforge::http {

std::string post_json(const std::string& base_url, const std::string& path,
                      const std::string& body, const std::string& bearer_token) {
    httplib::Client client(base_url);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
        throw Error("http error against " + base_url + path + ": " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw Error("http status " + std::to_string(res->status) + " from " + base_url + path + ": " +
                    res->body);
    }
    return res->body;
}

} // namespace skillforge::http
