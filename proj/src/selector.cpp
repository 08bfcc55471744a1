#include "hype/selector.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "hype/embedding.hpp"

namespace hype {

using nlohmann::json;

namespace {

struct ParsedUrl {
  std::string host;
  int port = 80;
  std::string path = "/";
};

ParsedUrl parse_url(const std::string& url) {
  std::string rest = url;
  const std::string scheme = "http://";
  if (rest.rfind(scheme, 0) != 0) {
    throw std::runtime_error("selector url must start with http:// : " + url);
  }
  rest = rest.substr(scheme.size());

  ParsedUrl out;
  auto slash = rest.find('/');
  std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
  out.path = slash == std::string::npos ? "/" : rest.substr(slash);

  auto colon = authority.find(':');
  if (colon == std::string::npos) {
    out.host = authority;
  } else {
    out.host = authority.substr(0, colon);
    out.port = std::stoi(authority.substr(colon + 1));
  }
  if (out.host.empty()) throw std::runtime_error("selector url has no host: " + url);
  return out;
}

class HttpPathSelector : public PathSelector {
 public:
  explicit HttpPathSelector(HttpSelectorOptions options)
      : options_(std::move(options)), endpoint_(parse_url(options_.url)) {}

  std::optional<std::vector<std::string>> select(
      const std::string& title, const std::string& contents,
      const std::vector<std::string>& candidates) override {
    json request;
    request["title"] = title;
    request["contents"] = contents.substr(0, 2000);
    request["candidates"] = candidates;
    const std::string body = request.dump();

    std::string cache_file;
    if (!options_.cache_dir.empty()) {
      std::filesystem::create_directories(options_.cache_dir);
      std::ostringstream name;
      name << std::hex << fnv1a64(body) << ".json";
      cache_file = (std::filesystem::path(options_.cache_dir) / name.str()).string();
      std::ifstream cached(cache_file);
      if (cached) {
        return parse_response(std::string(std::istreambuf_iterator<char>(cached), {}));
      }
    }

    httplib::Client client(endpoint_.host, endpoint_.port);
    auto timeout = std::chrono::duration<double>(options_.timeout_s);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));

    auto res = client.Post(endpoint_.path, body, "application/json");
    if (!res || res->status != 200) return std::nullopt;

    auto selected = parse_response(res->body);
    if (selected && !cache_file.empty()) {
      std::ofstream out(cache_file);
      out << res->body;
    }
    return selected;
  }

 private:
  static std::optional<std::vector<std::string>> parse_response(const std::string& body) {
    try {
      json doc = json::parse(body);
      return doc.at("selected").get<std::vector<std::string>>();
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  HttpSelectorOptions options_;
  ParsedUrl endpoint_;
};

}  // namespace

std::unique_ptr<PathSelector> make_http_selector(const HttpSelectorOptions& options) {
  return std::make_unique<HttpPathSelector>(options);
}

}  // namespace hype
