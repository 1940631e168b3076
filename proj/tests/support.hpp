#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>

#include "simlda/matrix.hpp"
#include "simlda/simgen.hpp"
#include "simlda/types.hpp"

namespace testing_support {

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("simlda_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Corpus built from explicit token lists; no generator involved.
inline simlda::Corpus make_corpus(std::vector<simlda::Document> docs, std::size_t V) {
  simlda::Corpus c;
  c.docs = std::move(docs);
  c.vocab.size = V;
  c.gen_params.V = V;
  c.gen_params.M = c.docs.size();
  c.gen_params.N = c.docs.empty() ? 0 : c.docs.front().size();
  c.gen_params.function_topic = false;
  return c;
}

/// Random row-stochastic matrix with strictly positive entries.
inline simlda::Matrix random_stochastic(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  simlda::Matrix m(rows, cols);
  for (double& x : m.data()) x = u(gen);
  simlda::normalize_rows(m);
  return m;
}

/// Small generator config used by fast unit tests.
inline simlda::GeneratorConfig tiny_config(std::uint64_t seed, std::size_t M = 12) {
  simlda::GeneratorConfig c = simlda::smaller_preset().generator;
  c.M = M;
  c.N = 40;
  c.seed = seed;
  return c;
}

}  // namespace testing_support
