#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "simlda/coherence.hpp"
#include "simlda/gibbs.hpp"
#include "simlda/io.hpp"
#include "simlda/simgen.hpp"
#include "simlda/stats.hpp"
#include "simlda/vb.hpp"

namespace simlda {

struct TopicRange {
  std::size_t first = 4;
  std::size_t last = 10;  // inclusive
};

/// Everything needed to reproduce one experiment from scratch.
struct ExperimentSpec {
  std::string dataset = "smaller";
  GeneratorConfig generator;
  std::vector<std::size_t> M_values{50, 100, 200, 300, 400, 500};
  std::size_t group_size = 20;
  GibbsConfig gibbs;
  VbConfig vb;
  std::optional<TopicRange> k_range;
  CoherenceConfig coherence;
  std::filesystem::path output_dir = "out";
  std::uint64_t master_seed = 0;
  /// Worker threads for corpus-level jobs. Never affects results.
  std::size_t jobs = 1;
  /// Persist per-corpus artifacts, summaries and plots.
  bool write_artifacts = true;

  void validate() const;
  std::filesystem::path dataset_dir() const { return output_dir / dataset; }
};

/// Spec for a preset: preset generator and hyperparameters, K taken from
/// the generator. `fast` selects 2,500 Gibbs iterations and groups of 10.
ExperimentSpec experiment_spec_for(const Preset& preset, bool fast);

/// Serialized form written next to the outputs; excludes output_dir and jobs.
Json to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_spec_from_json(const Json& j);

/// Seeds used for one corpus of one group.
struct CorpusSeeds {
  std::uint64_t corpus = 0;
  std::uint64_t gibbs = 0;
  std::uint64_t vb = 0;
};
CorpusSeeds corpus_seeds(std::uint64_t master_seed, std::size_t M, std::size_t index);

struct CorpusOutcome {
  std::size_t M = 0;
  std::size_t index = 0;
  std::uint64_t corpus_seed = 0;
  EvalReport gibbs;
  EvalReport vb;
};

struct ExperimentResult {
  std::vector<GroupSummary> summaries;  // per M: gibbs then vb
  std::vector<CorpusOutcome> corpora;   // M-major, corpus-index minor
};

/// Generates, fits and evaluates every corpus of every group. With
/// write_artifacts, creates
///   <out>/<dataset>/<M>/<i>/{docs.txt.gz, dictionary.json, ground_truth.json,
///                           fit_gibbs.json, fit_vb.json, eval_gibbs.json, eval_vb.json}
///   <out>/<dataset>/{experiment.json, summary.json, boxplot_kld.svg}
/// Throws IoError before any computation if the output tree is unwritable.
ExperimentResult run_experiment(const ExperimentSpec& spec);

struct CoherenceSweepResult {
  std::vector<GroupSummary> summaries;  // per K: gibbs then vb; M = group M
};

/// C_v of both algorithms for every K in spec.k_range on every corpus of
/// the group with M = spec.M_values.front(). With write_artifacts, writes
///   <out>/<dataset>/{coherence_spec.json, coherence_summary.json, coherence_K.svg}
CoherenceSweepResult coherence_sweep(const ExperimentSpec& spec);

Json to_json(const GroupSummary& summary, bool include_k = false);
Json summaries_to_json(const std::vector<GroupSummary>& summaries, bool include_k = false);
std::string summaries_to_csv(const std::vector<GroupSummary>& summaries);

/// Recomputes the experiment(s) recorded under `dataset_dir` into a scratch
/// directory and compares SHA-256 digests file by file.
struct VerifyReport {
  std::size_t files_checked = 0;
  std::vector<std::string> mismatches;  // relative paths
  bool ok() const noexcept { return mismatches.empty() && files_checked > 0; }
};
VerifyReport verify_outputs(const std::filesystem::path& dataset_dir, std::size_t jobs = 1);

/// SHA-256 of every regular file under `root`, keyed by relative path.
std::vector<std::pair<std::string, std::string>> hash_tree(const std::filesystem::path& root);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace simlda
