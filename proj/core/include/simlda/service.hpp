#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace simlda {

/// Largest corpus (M * N tokens) the generation endpoint will build.
inline constexpr std::uint64_t kMaxServiceTokens = 100'000'000;

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string content_encoding;  // "gzip" or empty
  std::string body;
};

/// PUT /v1/generate. The body is a flat JSON object with the generator
/// fields (M, V, N, K, K_m, seed required; shape, overlap,
/// function_fraction, function_block_fraction, function_topic optional)
/// plus an optional include_ground_truth flag.
///
///   400  body is not valid JSON
///   422  missing/unknown/mistyped fields or violated constraints
///   413  more than kMaxServiceTokens tokens requested
///
/// Error bodies are {"code": <status>, "message": ..., "violations": [...]}.
HttpResponse handle_generate(std::string_view body, bool accept_gzip = false);

/// GET /v1/health -> {"status":"ok"}
HttpResponse handle_health();

struct ListenAddress {
  std::string host = "127.0.0.1";
  int port = 8080;
};

/// Parses "host:port". Throws ParameterError on malformed input.
ListenAddress parse_listen_address(std::string_view text);

/// HTTP front end for the generation endpoint. Stateless between requests.
class GenerateServer {
 public:
  GenerateServer();
  ~GenerateServer();
  GenerateServer(const GenerateServer&) = delete;
  GenerateServer& operator=(const GenerateServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port.
  /// Throws IoError on failure.
  int bind(const ListenAddress& address);
  /// Serves until stop() is called. bind() must have succeeded.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace simlda
