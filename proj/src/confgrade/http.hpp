#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace confgrade {

struct HttpResponse {
  int status = 0;
  std::string body;
};

struct HttpRequest {
  std::string url;  // http[s]://host[:port]/path
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
  std::chrono::seconds timeout{120};
};

// POSTs a JSON body. Throws Error(Transport) when no response arrives.
HttpResponse http_post_json(const HttpRequest& request);

}  // namespace confgrade
