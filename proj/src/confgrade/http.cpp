#include "confgrade/http.hpp"

#include "confgrade/errors.hpp"
#include "httplib.h"

namespace confgrade {

HttpResponse http_post_json(const HttpRequest& request) {
  const auto scheme_end = request.url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::InvalidConfig, "endpoint URL has no scheme: " + request.url);
  }
  const auto path_start = request.url.find('/', scheme_end + 3);
  const auto origin = request.url.substr(0, path_start);
  const auto path = path_start == std::string::npos ? std::string("/") : request.url.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) throw Error(ErrorKind::InvalidConfig, "unsupported endpoint: " + origin);
  client.set_connection_timeout(request.timeout);
  client.set_read_timeout(request.timeout);
  client.set_write_timeout(request.timeout);

  httplib::Headers headers;
  for (const auto& [k, v] : request.headers) headers.emplace(k, v);
  auto result = client.Post(path, headers, request.body, "application/json");
  if (!result) {
    throw Error(ErrorKind::Transport,
                "request to " + request.url + " failed: " + httplib::to_string(result.error()));
  }
  return HttpResponse{result->status, result->body};
}

}  // namespace confgrade
