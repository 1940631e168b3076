#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "simlda/errors.hpp"
#include "simlda/io.hpp"
#include "simlda/service.hpp"
#include "simlda/simgen.hpp"
#include "support.hpp"

using namespace simlda;

namespace {

Json smaller_body(std::size_t M, std::uint64_t seed) {
  GeneratorConfig c = smaller_preset().generator;
  c.M = M;
  c.seed = seed;
  return to_json(c);
}

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("smaller preset request") {
    const HttpResponse r = handle_generate(smaller_body(2, 7).dump());
    REQUIRE(r.status == 200);
    CHECK(r.content_type == "application/json");
    const Json j = Json::parse(r.body);
    REQUIRE(j["documents"].size() == 2);
    for (const auto& d : j["documents"]) CHECK(d.size() == 100);
    CHECK(j["dictionary"].size() == 100);
    CHECK(j["seed"] == 7);
    CHECK_FALSE(j.contains("ground_truth"));
  }

  TEST_CASE("documents equal direct generation") {
    GeneratorConfig c = smaller_preset().generator;
    c.M = 4;
    c.seed = 31;
    const Json j = Json::parse(handle_generate(to_json(c).dump()).body);
    const auto docs = j["documents"].get<std::vector<Document>>();
    CHECK(docs == generate_corpus(c).corpus.docs);
  }

  TEST_CASE("ground truth on request") {
    Json body = smaller_body(3, 1);
    body["include_ground_truth"] = true;
    const Json j = Json::parse(handle_generate(body.dump()).body);
    REQUIRE(j.contains("ground_truth"));
    CHECK(j["ground_truth"]["phi"].size() == 7);
    CHECK(j["ground_truth"]["theta"].size() == 3);
  }

  TEST_CASE("identical bodies give identical bytes") {
    const std::string body = smaller_body(5, 3).dump();
    CHECK(handle_generate(body).body == handle_generate(body).body);
    CHECK(handle_generate(body, true).body == handle_generate(body, true).body);
  }

  TEST_CASE("gzip negotiation") {
    const std::string body = smaller_body(2, 3).dump();
    const HttpResponse plain = handle_generate(body);
    const HttpResponse zipped = handle_generate(body, true);
    CHECK(zipped.content_encoding == "gzip");
    CHECK(plain.content_encoding.empty());
    CHECK(gzip_decompress(zipped.body) == plain.body);
  }

  TEST_CASE("malformed JSON is 400") {
    const HttpResponse r = handle_generate("{\"M\": ");
    CHECK(r.status == 400);
    const Json j = Json::parse(r.body);
    CHECK(j["code"] == 400);
    CHECK(j.contains("message"));
  }

  TEST_CASE("empty object lists every missing field") {
    const HttpResponse r = handle_generate("{}");
    CHECK(r.status == 422);
    const Json j = Json::parse(r.body);
    const auto v = j["violations"].get<std::vector<std::string>>();
    for (const char* field : {"'M'", "'V'", "'N'", "'K'", "'K_m'", "'seed'"}) {
      CHECK(std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(field) != std::string::npos; }));
    }
  }

  TEST_CASE("invalid configs are 422 and name the constraint") {
    Json body = smaller_body(2, 1);
    body["K_m"] = 7;
    HttpResponse r = handle_generate(body.dump());
    CHECK(r.status == 422);
    CHECK(r.body.find("K_m") != std::string::npos);

    body = smaller_body(2, 1);
    body["unexpected"] = 1;
    CHECK(handle_generate(body.dump()).status == 422);

    body = smaller_body(2, 1);
    body["M"] = -3;
    CHECK(handle_generate(body.dump()).status == 422);

    CHECK(handle_generate("[1, 2]").status == 422);
    body = smaller_body(2, 1);
    body["include_ground_truth"] = "yes";
    CHECK(handle_generate(body.dump()).status == 422);
  }

  TEST_CASE("oversized requests are 413") {
    Json body = smaller_body(1'000'001, 1);
    CHECK(handle_generate(body.dump()).status == 413);
  }

  TEST_CASE("listen address parsing") {
    const ListenAddress a = parse_listen_address("0.0.0.0:9000");
    CHECK(a.host == "0.0.0.0");
    CHECK(a.port == 9000);
    CHECK_THROWS_AS(parse_listen_address("localhost"), ParameterError);
    CHECK_THROWS_AS(parse_listen_address("host:99999"), ParameterError);
    CHECK_THROWS_AS(parse_listen_address(":80"), ParameterError);
  }

  TEST_CASE("HTTP round trip") {
    GenerateServer server;
    const int port = server.bind({"127.0.0.1", 0});
    std::thread thread([&] { server.listen(); });

    httplib::Client client("127.0.0.1", port);
    client.set_read_timeout(30, 0);
    auto health = client.Get("/v1/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(Json::parse(health->body)["status"] == "ok");

    const std::string body = smaller_body(3, 11).dump();
    auto put = client.Put("/v1/generate", body, "application/json");
    REQUIRE(put);
    CHECK(put->status == 200);
    CHECK(put->body == handle_generate(body).body);

    auto bad = client.Put("/v1/generate", "nope", "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);

    server.stop();
    thread.join();
  }
}
