#include "simlda/service.hpp"

#include <charconv>

#include "httplib.h"
#include "simlda/errors.hpp"
#include "simlda/io.hpp"
#include "simlda/simgen.hpp"

namespace simlda {

namespace {

HttpResponse error_response(int status, const std::string& message,
                            const std::vector<std::string>& violations = {}) {
  Json j;
  j["code"] = status;
  j["message"] = message;
  if (!violations.empty()) j["violations"] = violations;
  HttpResponse r;
  r.status = status;
  r.body = j.dump();
  return r;
}

}  // namespace

HttpResponse handle_generate(std::string_view body, bool accept_gzip) {
  Json request;
  try {
    request = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return error_response(400, std::string("malformed JSON: ") + e.what());
  }
  if (!request.is_object()) {
    return error_response(422, "request body must be a JSON object",
                          {"request body must be a JSON object"});
  }

  std::vector<std::string> problems;
  bool include_truth = false;
  if (request.contains("include_ground_truth")) {
    if (request["include_ground_truth"].is_boolean()) {
      include_truth = request["include_ground_truth"].get<bool>();
    } else {
      problems.emplace_back("field 'include_ground_truth' must be a boolean");
    }
  }
  const GeneratorConfig config =
      generator_config_from_json(request, problems, {"include_ground_truth"});
  if (!problems.empty()) return error_response(422, "invalid generation request", problems);

  const auto tokens = static_cast<long double>(config.M) * static_cast<long double>(config.N);
  if (tokens > static_cast<long double>(kMaxServiceTokens)) {
    return error_response(413, "request implies " + std::to_string(config.M) + " x " +
                                   std::to_string(config.N) + " tokens; limit is " +
                                   std::to_string(kMaxServiceTokens));
  }

  const GeneratedCorpus generated = generate_corpus(config);
  Json response;
  Json documents = Json::array();
  for (const auto& doc : generated.corpus.docs) documents.push_back(doc);
  response["documents"] = std::move(documents);
  response["dictionary"] = dictionary_json(config.V);
  response["seed"] = config.seed;
  if (include_truth) {
    response["ground_truth"] = {{"phi", matrix_to_json(generated.truth.phi)},
                                {"theta", matrix_to_json(generated.truth.theta)}};
  }

  HttpResponse r;
  r.body = dump_json(response);
  if (accept_gzip) {
    r.body = gzip_compress(r.body);
    r.content_encoding = "gzip";
  }
  return r;
}

HttpResponse handle_health() {
  HttpResponse r;
  r.body = R"({"status":"ok"})";
  return r;
}

ListenAddress parse_listen_address(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
    throw ParameterError("listen address must look like host:port, got '" + std::string(text) + "'");
  }
  ListenAddress a;
  a.host = std::string(text.substr(0, colon));
  const std::string_view port = text.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), a.port);
  if (ec != std::errc() || ptr != port.data() + port.size() || a.port < 0 || a.port > 65535) {
    throw ParameterError("invalid port '" + std::string(port) + "'");
  }
  return a;
}

struct GenerateServer::Impl {
  httplib::Server server;
};

namespace {

void apply(const HttpResponse& from, httplib::Response& to) {
  to.status = from.status;
  if (!from.content_encoding.empty()) to.set_header("Content-Encoding", from.content_encoding);
  to.set_content(from.body, from.content_type);
}

}  // namespace

GenerateServer::GenerateServer() : impl_(std::make_unique<Impl>()) {
  impl_->server.Put("/v1/generate", [](const httplib::Request& req, httplib::Response& res) {
    const std::string encoding = req.get_header_value("Accept-Encoding");
    apply(handle_generate(req.body, encoding.find("gzip") != std::string::npos), res);
  });
  impl_->server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    apply(handle_health(), res);
  });
}

GenerateServer::~GenerateServer() { stop(); }

int GenerateServer::bind(const ListenAddress& address) {
  int port = address.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(address.host.c_str());
  } else if (!impl_->server.bind_to_port(address.host.c_str(), port)) {
    port = -1;
  }
  if (port < 0) {
    throw IoError("cannot bind " + address.host + ":" + std::to_string(address.port));
  }
  return port;
}

void GenerateServer::listen() { impl_->server.listen_after_bind(); }

void GenerateServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace simlda
