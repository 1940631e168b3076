#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "simlda/coherence.hpp"
#include "simlda/eval.hpp"
#include "simlda/gibbs.hpp"
#include "simlda/simgen.hpp"
#include "simlda/types.hpp"
#include "simlda/vb.hpp"

namespace simlda {

using Json = nlohmann::ordered_json;

/// Serializes `value` with floats written to 17 significant digits.
/// Arrays holding only scalars are written on one line.
std::string dump_json(const Json& value);
void write_json_file(const std::filesystem::path& path, const Json& value);
Json read_json_file(const std::filesystem::path& path);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Flat object with every GeneratorConfig field.
Json to_json(const GeneratorConfig& config);
/// Strict parse of a flat generator object. Missing required fields,
/// unknown fields and type errors are all collected into `problems`
/// instead of thrown; `allowed_extra` names fields the caller handles.
GeneratorConfig generator_config_from_json(const Json& j, std::vector<std::string>& problems,
                                           const std::vector<std::string>& allowed_extra = {});
/// Throwing variant: ConfigError listing every problem.
GeneratorConfig generator_config_from_json(const Json& j);

Json to_json(const DirichletHyperparams& hyper);
Json to_json(const GibbsConfig& config);
Json to_json(const VbConfig& config);
GibbsConfig gibbs_config_from_json(const Json& j, const GibbsConfig& defaults);
VbConfig vb_config_from_json(const Json& j, const VbConfig& defaults);

Json ground_truth_to_json(const GroundTruthModel& truth, const GeneratorConfig& config);
GroundTruthModel ground_truth_from_json(const Json& j);

/// `fit_*.json`. Wall-clock time is omitted when include_timing is false so
/// that the file is a pure function of its inputs.
Json fit_to_json(const FitResult& fit, const Json& config_echo, bool include_timing = true);
FitResult fit_from_json(const Json& j);

Json to_json(const EvalReport& report);
Json coherence_to_json(const CoherenceReport& report, const CoherenceConfig& config);

/// "w0" .. "w{V-1}" keyed by decimal index.
Json dictionary_json(std::size_t vocab_size);

/// One document per line, space-separated token indices.
std::string documents_text(const std::vector<Document>& docs);
std::vector<Document> parse_documents_text(std::string_view text);

/// Writes docs.txt.gz, dictionary.json and ground_truth.json into `dir`.
void write_corpus_files(const std::filesystem::path& dir, const GeneratedCorpus& generated);
/// Reads the files written by write_corpus_files.
GeneratedCorpus read_corpus_files(const std::filesystem::path& dir);

std::string gzip_compress(std::string_view data);
std::string gzip_decompress(std::string_view data);
void write_gzip_file(const std::filesystem::path& path, std::string_view data);
std::string read_gzip_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

}  // namespace simlda
