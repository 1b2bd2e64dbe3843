#include "spa/service.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "spa/script.hpp"

namespace spa {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

HttpReply error_reply(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

bool valid_name(const std::string& name) {
  static const std::regex re("[A-Za-z0-9_-]+");
  return std::regex_match(name, re);
}

}  // namespace

HttpReply handle_check(const std::string& body) {
  if (body.empty()) return error_reply(400, "empty request body");
  if (body.size() > kMaxBody) return error_reply(413, "request body exceeds 1 MiB");
  json request = json::parse(body, nullptr, false);
  if (request.is_discarded()) return error_reply(400, "malformed JSON");
  if (!request.is_object() || !request.contains("script") || !request["script"].is_string())
    return error_reply(400, "expected an object with a string field \"script\"");
  return {200, to_json(check_text(request["script"].get<std::string>())).dump()};
}

HttpReply handle_list_examples(const std::string& dir) {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".spa") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return {200, json(names).dump()};
}

HttpReply handle_get_example(const std::string& dir, const std::string& name) {
  if (!valid_name(name)) return error_reply(400, "invalid example name");
  std::ifstream in(fs::path(dir) / (name + ".spa"), std::ios::binary);
  if (!in) return error_reply(404, "no example named " + name);
  std::ostringstream text;
  text << in.rdbuf();
  return {200, text.str(), "text/plain; charset=utf-8"};
}

void install_routes(httplib::Server& server, const std::string& examples_dir) {
  server.set_payload_max_length(kMaxBody);
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  };
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Post("/api/check", [send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_check(req.body));
  });
  server.Get("/api/examples", [send, examples_dir](const httplib::Request&, httplib::Response& res) {
    send(res, handle_list_examples(examples_dir));
  });
  server.Get(R"(/api/examples/([^/]+))", [send, examples_dir](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_get_example(examples_dir, req.matches[1]));
  });
}

int port_from_env() {
  if (const char* env = std::getenv("SPA_PORT")) {
    char* end = nullptr;
    long p = std::strtol(env, &end, 10);
    if (end && *end == '\0' && p > 0 && p < 65536) return static_cast<int>(p);
  }
  return kDefaultPort;
}

}  // namespace spa
