#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "spa/service.hpp"

using namespace spa;
using nlohmann::json;

namespace {

std::string read_example(const std::string& name) {
  std::ifstream in(std::string(SPA_EXAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string mutated_p43() {
  std::string text = read_example("pelletier43.spa");
  const std::string cited = "so have \"forall z. P(z,x) <=> P(z,y)\" by A";
  auto at = text.find(cited);
  REQUIRE(at != std::string::npos);
  text.erase(at + cited.size() - 5, 5);
  return text;
}

std::string check_body(const std::string& script) { return json{{"script", script}}.dump(); }

// Runs the service on an ephemeral local port for the lifetime of the object.
class LiveServer {
 public:
  LiveServer() {
    install_routes(server_, SPA_EXAMPLES_DIR);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LiveServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(60, 0);
    return c;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("check handler") {
  HttpReply ok = handle_check(check_body(read_example("pelletier43.spa")));
  CHECK(ok.status == 200);
  CHECK(ok.content_type == "application/json");
  json j = json::parse(ok.body);
  CHECK(j["complete"] == true);
  CHECK(j["lemmas"][0]["name"] == "pelletier43");

  CHECK(handle_check("").status == 400);
  CHECK(handle_check("{not json").status == 400);
  CHECK(handle_check("{}").status == 400);
  CHECK(handle_check(R"({"script": 3})").status == 400);
  CHECK(handle_check("[]").status == 400);
  CHECK(handle_check(std::string(kMaxBody + 1, ' ')).status == 413);

  json bad = json::parse(handle_check(check_body("lemma")).body);
  CHECK(bad["complete"] == false);
  CHECK(bad["lemmas"][0]["steps"][0]["status"] == "error");
}

TEST_CASE("example handlers") {
  HttpReply list = handle_list_examples(SPA_EXAMPLES_DIR);
  CHECK(list.status == 200);
  json names = json::parse(list.body);
  REQUIRE(names.is_array());
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(std::find(names.begin(), names.end(), "pelletier43") != names.end());
  CHECK(std::find(names.begin(), names.end(), "pelletier34") != names.end());

  HttpReply text = handle_get_example(SPA_EXAMPLES_DIR, "pelletier43");
  CHECK(text.status == 200);
  CHECK(text.content_type.find("text/plain") == 0);
  CHECK(text.body == read_example("pelletier43.spa"));
  CHECK(handle_get_example(SPA_EXAMPLES_DIR, "nope").status == 404);
  CHECK(handle_get_example(SPA_EXAMPLES_DIR, "../CMakeLists").status == 400);
  CHECK(handle_get_example(SPA_EXAMPLES_DIR, "").status == 400);
}

TEST_CASE("port selection") {
  unsetenv("SPA_PORT");
  CHECK(port_from_env() == kDefaultPort);
  setenv("SPA_PORT", "8123", 1);
  CHECK(port_from_env() == 8123);
  setenv("SPA_PORT", "banana", 1);
  CHECK(port_from_env() == kDefaultPort);
  unsetenv("SPA_PORT");
}

TEST_CASE("live service") {
  LiveServer server;
  httplib::Client cli = server.client();

  SUBCASE("empty and malformed bodies are rejected") {
    auto empty = cli.Post("/api/check", "", "application/json");
    REQUIRE(empty);
    CHECK(empty->status == 400);
    auto malformed = cli.Post("/api/check", "{\"script\":", "application/json");
    REQUIRE(malformed);
    CHECK(malformed->status == 400);
  }

  SUBCASE("oversized bodies are rejected") {
    auto big = cli.Post("/api/check", check_body(std::string(kMaxBody + 16, 'x')), "application/json");
    REQUIRE(big);
    CHECK(big->status == 413);
  }

  SUBCASE("checking answers json with permissive cors") {
    auto res = cli.Post("/api/check", check_body(read_example("pelletier43.spa")), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Content-Type").find("application/json") == 0);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    CHECK(json::parse(res->body)["complete"] == true);

    auto pre = cli.Options("/api/check");
    REQUIRE(pre);
    CHECK(pre->status == 204);
    CHECK(pre->get_header_value("Access-Control-Allow-Origin") == "*");
    CHECK(pre->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);
  }

  SUBCASE("the mutated script pinpoints the failing line") {
    auto res = cli.Post("/api/check", check_body(mutated_p43()), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    json j = json::parse(res->body);
    CHECK(j["complete"] == false);
    bool seen_error = false;
    for (const auto& step : j["lemmas"][0]["steps"]) {
      if (seen_error) {
        CHECK(step["status"] == "unchecked");
      } else if (step["status"] == "error") {
        seen_error = true;
        CHECK(step["line"] == 14);
        CHECK(step["message"].is_string());
      } else {
        CHECK(step["status"] == "ok");
      }
    }
    CHECK(seen_error);
  }

  SUBCASE("responses are byte-identical across calls") {
    std::string body = check_body(mutated_p43());
    auto a = cli.Post("/api/check", body, "application/json");
    auto b = cli.Post("/api/check", body, "application/json");
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->body == b->body);
  }

  SUBCASE("concurrent requests are independent") {
    std::string good = check_body(read_example("pelletier43.spa"));
    std::string bad = check_body(mutated_p43());
    std::vector<std::string> results(4);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < results.size(); ++i) {
      threads.emplace_back([&, i] {
        httplib::Client c = server.client();
        auto res = c.Post("/api/check", i % 2 ? bad : good, "application/json");
        if (res) results[i] = res->body;
      });
    }
    for (auto& t : threads) t.join();
    CHECK(results[0] == results[2]);
    CHECK(results[1] == results[3]);
    CHECK(results[0] != results[1]);
    CHECK(json::parse(results[0])["complete"] == true);
  }

  SUBCASE("examples are served") {
    auto list = cli.Get("/api/examples");
    REQUIRE(list);
    CHECK(list->status == 200);
    CHECK(json::parse(list->body).is_array());
    auto one = cli.Get("/api/examples/pelletier34");
    REQUIRE(one);
    CHECK(one->status == 200);
    CHECK(one->body == read_example("pelletier34.spa"));
    auto missing = cli.Get("/api/examples/unknown");
    REQUIRE(missing);
    CHECK(missing->status == 404);
  }
}
