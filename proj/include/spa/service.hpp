// HTTP checking service for the proof editor. Stateless: every request is
// answered from its body and the read-only examples directory.

#pragma once

#include <string>

namespace httplib {
class Server;
}

namespace spa {

constexpr int kDefaultPort = 7423;
constexpr std::size_t kMaxBody = 1 << 20;

struct HttpReply {
  int status;
  std::string body;
  std::string content_type = "application/json";
};

/// POST /api/check with body {"script": "..."}.
HttpReply handle_check(const std::string& body);
/// GET /api/examples: JSON array of example names, sorted.
HttpReply handle_list_examples(const std::string& dir);
/// GET /api/examples/<name>: the script text.
HttpReply handle_get_example(const std::string& dir, const std::string& name);

/// Installs the routes, the body limit and the CORS headers.
void install_routes(httplib::Server& server, const std::string& examples_dir);

/// SPA_PORT when set and valid, otherwise the default port.
int port_from_env();

}  // namespace spa
