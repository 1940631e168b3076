#include "simlda/io.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simlda/errors.hpp"

namespace simlda {

namespace fs = std::filesystem;

namespace {

void append_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  std::array<char, 32> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
  out.append(buf.data(), static_cast<std::size_t>(n));
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void emit(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      append_double(out, j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += "\n" + pad;
        emit(out, item, depth + 1);
      }
      if (!flat) out += "\n" + close_pad;
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += "\n" + pad;
        out += Json(it.key()).dump();
        out += ": ";
        emit(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

template <typename T>
void read_unsigned(const Json& j, const char* key, T& out, bool required,
                   std::vector<std::string>& problems) {
  if (!j.contains(key)) {
    if (required) problems.push_back(std::string("missing required field '") + key + "'");
    return;
  }
  const auto& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    problems.push_back(std::string("field '") + key + "' must be a nonnegative integer");
    return;
  }
  out = static_cast<T>(v.get<std::uint64_t>());
}

void read_real(const Json& j, const char* key, double& out, std::vector<std::string>& problems) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number()) {
    problems.push_back(std::string("field '") + key + "' must be a number");
    return;
  }
  out = v.get<double>();
}

const std::vector<std::string>& generator_fields() {
  static const std::vector<std::string> fields = {
      "M",       "V",
      "N",       "K",
      "K_m",     "shape",
      "overlap", "function_fraction",
      "function_block_fraction", "function_topic",
      "seed"};
  return fields;
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  emit(out, value, 0);
  out += '\n';
  return out;
}

void write_json_file(const fs::path& path, const Json& value) { write_file(path, dump_json(value)); }

Json read_json_file(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (double x : m.row(r)) row.push_back(x);
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError("matrix row must be an array");
    rows.push_back(row.get<std::vector<double>>());
  }
  return matrix_from_rows(rows);
}

Json to_json(const GeneratorConfig& c) {
  Json j;
  j["M"] = c.M;
  j["V"] = c.V;
  j["N"] = c.N;
  j["K"] = c.K;
  j["K_m"] = c.K_m;
  j["shape"] = std::string(to_string(c.shape));
  j["overlap"] = c.overlap;
  j["function_fraction"] = c.function_fraction;
  j["function_block_fraction"] = c.function_block_fraction;
  j["function_topic"] = c.function_topic;
  j["seed"] = c.seed;
  return j;
}

GeneratorConfig generator_config_from_json(const Json& j, std::vector<std::string>& problems,
                                           const std::vector<std::string>& allowed_extra) {
  GeneratorConfig c;
  if (!j.is_object()) {
    problems.emplace_back("generator config must be a JSON object");
    return c;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& known = generator_fields();
    if (std::find(known.begin(), known.end(), it.key()) == known.end() &&
        std::find(allowed_extra.begin(), allowed_extra.end(), it.key()) == allowed_extra.end()) {
      problems.push_back("unknown field '" + it.key() + "'");
    }
  }
  read_unsigned(j, "M", c.M, true, problems);
  read_unsigned(j, "V", c.V, true, problems);
  read_unsigned(j, "N", c.N, true, problems);
  read_unsigned(j, "K", c.K, true, problems);
  read_unsigned(j, "K_m", c.K_m, true, problems);
  read_unsigned(j, "seed", c.seed, true, problems);
  if (j.contains("shape")) {
    if (!j["shape"].is_string()) {
      problems.emplace_back("field 'shape' must be \"laplace\" or \"gaussian\"");
    } else {
      try {
        c.shape = topic_shape_from_string(j["shape"].get<std::string>());
      } catch (const ConfigError&) {
        problems.emplace_back("field 'shape' must be \"laplace\" or \"gaussian\"");
      }
    }
  }
  read_real(j, "overlap", c.overlap, problems);
  read_real(j, "function_fraction", c.function_fraction, problems);
  read_real(j, "function_block_fraction", c.function_block_fraction, problems);
  if (j.contains("function_topic")) {
    if (!j["function_topic"].is_boolean()) {
      problems.emplace_back("field 'function_topic' must be a boolean");
    } else {
      c.function_topic = j["function_topic"].get<bool>();
    }
  }
  if (problems.empty()) {
    for (auto& v : c.violations()) problems.push_back(std::move(v));
  }
  return c;
}

GeneratorConfig generator_config_from_json(const Json& j) {
  std::vector<std::string> problems;
  GeneratorConfig c = generator_config_from_json(j, problems);
  if (!problems.empty()) {
    std::string message = "invalid generator config:";
    for (const auto& p : problems) message += " " + p + ";";
    throw ConfigError(message);
  }
  return c;
}

Json to_json(const DirichletHyperparams& hyper) {
  Json j;
  j["alpha"] = hyper.alpha;
  j["beta"] = hyper.beta;
  return j;
}

Json to_json(const GibbsConfig& c) {
  Json j;
  j["iterations"] = c.iterations;
  j["burn_in_fraction"] = c.burn_in_fraction;
  j["thin"] = c.thin;
  j["alpha"] = c.hyper.alpha;
  j["beta"] = c.hyper.beta;
  j["K"] = c.K;
  j["seed"] = c.seed;
  j["estimator"] = c.estimator == GibbsEstimator::ThinnedMean ? "thinned_mean" : "final_state";
  return j;
}

Json to_json(const VbConfig& c) {
  Json j;
  j["epochs"] = c.epochs;
  j["inner_doc_iters"] = c.inner_doc_iters;
  j["doc_convergence_tol"] = c.doc_convergence_tol;
  j["elbo_rel_tol"] = c.elbo_rel_tol;
  j["init_scale"] = c.init_scale;
  j["alpha"] = c.hyper.alpha;
  j["beta"] = c.hyper.beta;
  j["K"] = c.K;
  j["seed"] = c.seed;
  return j;
}

GibbsConfig gibbs_config_from_json(const Json& j, const GibbsConfig& defaults) {
  GibbsConfig c = defaults;
  c.iterations = j.value("iterations", c.iterations);
  c.burn_in_fraction = j.value("burn_in_fraction", c.burn_in_fraction);
  c.thin = j.value("thin", c.thin);
  c.hyper.alpha = j.value("alpha", c.hyper.alpha);
  c.hyper.beta = j.value("beta", c.hyper.beta);
  c.K = j.value("K", c.K);
  c.seed = j.value("seed", c.seed);
  if (j.contains("estimator")) {
    const auto name = j["estimator"].get<std::string>();
    if (name == "thinned_mean") {
      c.estimator = GibbsEstimator::ThinnedMean;
    } else if (name == "final_state") {
      c.estimator = GibbsEstimator::FinalState;
    } else {
      throw ConfigError("unknown gibbs estimator '" + name + "'");
    }
  }
  return c;
}

VbConfig vb_config_from_json(const Json& j, const VbConfig& defaults) {
  VbConfig c = defaults;
  c.epochs = j.value("epochs", c.epochs);
  c.inner_doc_iters = j.value("inner_doc_iters", c.inner_doc_iters);
  c.doc_convergence_tol = j.value("doc_convergence_tol", c.doc_convergence_tol);
  c.elbo_rel_tol = j.value("elbo_rel_tol", c.elbo_rel_tol);
  c.init_scale = j.value("init_scale", c.init_scale);
  c.hyper.alpha = j.value("alpha", c.hyper.alpha);
  c.hyper.beta = j.value("beta", c.hyper.beta);
  c.K = j.value("K", c.K);
  c.seed = j.value("seed", c.seed);
  return c;
}

Json ground_truth_to_json(const GroundTruthModel& truth, const GeneratorConfig& config) {
  Json j;
  j["seed"] = config.seed;
  j["config"] = to_json(config);
  j["K"] = truth.K;
  j["includes_function_topic"] = truth.includes_function_topic;
  j["phi"] = matrix_to_json(truth.phi);
  j["theta"] = matrix_to_json(truth.theta);
  return j;
}

GroundTruthModel ground_truth_from_json(const Json& j) {
  try {
    GroundTruthModel t;
    t.phi = matrix_from_json(j.at("phi"));
    t.theta = matrix_from_json(j.at("theta"));
    t.K = j.at("K").get<std::size_t>();
    t.includes_function_topic = j.at("includes_function_topic").get<bool>();
    if (t.phi.rows() != t.K) throw InputError("ground truth: phi has wrong number of rows");
    return t;
  } catch (const Json::exception& e) {
    throw InputError(std::string("ground truth JSON: ") + e.what());
  }
}

Json fit_to_json(const FitResult& fit, const Json& config_echo, bool include_timing) {
  Json j;
  j["algorithm"] = std::string(to_string(fit.algorithm));
  j["seed"] = fit.seed;
  j["K"] = fit.phi_hat.rows();
  j["V"] = fit.phi_hat.cols();
  j["iterations"] = fit.iterations;
  j["config"] = config_echo;
  if (include_timing) j["wall_seconds"] = fit.wall_seconds;
  j["phi_hat"] = matrix_to_json(fit.phi_hat);
  j["theta_hat"] = matrix_to_json(fit.theta_hat);
  return j;
}

FitResult fit_from_json(const Json& j) {
  try {
    FitResult fit;
    fit.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    fit.seed = j.at("seed").get<std::uint64_t>();
    fit.iterations = j.at("iterations").get<std::size_t>();
    fit.wall_seconds = j.value("wall_seconds", 0.0);
    fit.phi_hat = matrix_from_json(j.at("phi_hat"));
    fit.theta_hat = matrix_from_json(j.at("theta_hat"));
    if (j.contains("config")) {
      fit.hyper.alpha = j["config"].value("alpha", fit.hyper.alpha);
      fit.hyper.beta = j["config"].value("beta", fit.hyper.beta);
    }
    return fit;
  } catch (const Json::exception& e) {
    throw InputError(std::string("fit JSON: ") + e.what());
  }
}

Json to_json(const EvalReport& report) {
  Json j;
  j["alignment"] = report.alignment;
  j["per_topic_kld"] = report.per_topic_kld;
  j["average_kld"] = report.average_kld;
  return j;
}

Json coherence_to_json(const CoherenceReport& report, const CoherenceConfig& config) {
  Json j;
  j["per_topic"] = report.per_topic;
  j["mean"] = report.mean;
  j["config"] = {{"top_n", config.top_n}, {"window", config.window}, {"epsilon", config.epsilon}};
  return j;
}

Json dictionary_json(std::size_t vocab_size) {
  Json j = Json::object();
  for (std::size_t v = 0; v < vocab_size; ++v) j[std::to_string(v)] = "w" + std::to_string(v);
  return j;
}

std::string documents_text(const std::vector<Document>& docs) {
  std::string out;
  for (const auto& doc : docs) {
    for (std::size_t n = 0; n < doc.size(); ++n) {
      if (n > 0) out += ' ';
      out += std::to_string(doc[n]);
    }
    out += '\n';
  }
  return out;
}

std::vector<Document> parse_documents_text(std::string_view text) {
  std::vector<Document> docs;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    Document doc;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\r')) ++p;
      if (p == end) break;
      Token value = 0;
      const auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc()) throw InputError("documents: malformed token in line " +
                                              std::to_string(docs.size() + 1));
      doc.push_back(value);
      p = next;
    }
    docs.push_back(std::move(doc));
    pos = eol + 1;
  }
  return docs;
}

void write_corpus_files(const fs::path& dir, const GeneratedCorpus& generated) {
  fs::create_directories(dir);
  write_gzip_file(dir / "docs.txt.gz", documents_text(generated.corpus.docs));
  write_json_file(dir / "dictionary.json", dictionary_json(generated.corpus.vocab.size));
  write_json_file(dir / "ground_truth.json",
                  ground_truth_to_json(generated.truth, generated.corpus.gen_params));
}

GeneratedCorpus read_corpus_files(const fs::path& dir) {
  const Json truth_json = read_json_file(dir / "ground_truth.json");
  GeneratedCorpus out;
  out.corpus.gen_params = generator_config_from_json(truth_json.at("config"));
  out.corpus.seed = out.corpus.gen_params.seed;
  out.corpus.vocab = out.corpus.gen_params.vocabulary();
  out.corpus.docs = parse_documents_text(read_gzip_file(dir / "docs.txt.gz"));
  out.corpus.validate();
  out.truth = ground_truth_from_json(truth_json);
  return out;
}

std::string gzip_compress(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw IoError("gzip: deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(data.size())) + 32, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw IoError("gzip: deflate failed");
  out.resize(zs.total_out);
  return out;
}

std::string gzip_decompress(std::string_view data) {
  z_stream zs{};
  if (inflateInit2(&zs, 15 + 32) != Z_OK) throw IoError("gzip: inflateInit2 failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  std::array<char, 1 << 16> buf{};
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw IoError("gzip: corrupt stream");
    }
    out.append(buf.data(), buf.size() - zs.avail_out);
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw IoError("gzip: truncated stream");
    }
  }
  inflateEnd(&zs);
  return out;
}

void write_gzip_file(const fs::path& path, std::string_view data) {
  write_file(path, gzip_compress(data));
}

std::string read_gzip_file(const fs::path& path) { return gzip_decompress(read_file(path)); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace simlda
