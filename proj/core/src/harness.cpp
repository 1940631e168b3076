#include "simlda/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "simlda/errors.hpp"
#include "simlda/eval.hpp"
#include "simlda/svg.hpp"

namespace simlda {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kGibbsStream = 0x6769626273ULL;  // "gibbs"
constexpr std::uint64_t kVbStream = 0x7662ULL;           // "vb"

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".write_probe";
  try {
    write_file(probe, "");
  } catch (const IoError&) {
    throw IoError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

struct PreparedCorpus {
  GeneratedCorpus generated;
  CorpusSeeds seeds;
};

PreparedCorpus prepare_corpus(const ExperimentSpec& spec, std::size_t M, std::size_t index) {
  PreparedCorpus p;
  p.seeds = corpus_seeds(spec.master_seed, M, index);
  GeneratorConfig gen = spec.generator;
  gen.M = M;
  gen.seed = p.seeds.corpus;
  p.generated = generate_corpus(gen);
  return p;
}

}  // namespace

void ExperimentSpec::validate() const {
  generator.validate();
  if (M_values.empty()) throw ConfigError("experiment: M list is empty");
  for (std::size_t m : M_values) {
    if (m < 1) throw ConfigError("experiment: every M must be at least 1");
  }
  if (group_size < 1) throw ConfigError("experiment: group_size must be at least 1");
  gibbs.validate();
  vb.validate();
  coherence.validate();
  if (k_range && (k_range->first < 1 || k_range->last < k_range->first)) {
    throw ConfigError("experiment: K range must be nonempty with K >= 1");
  }
  if (dataset.empty() || dataset.find('/') != std::string::npos) {
    throw ConfigError("experiment: dataset name must be a plain directory name");
  }
}

ExperimentSpec experiment_spec_for(const Preset& preset, bool fast) {
  ExperimentSpec spec;
  spec.dataset = preset.name;
  spec.generator = preset.generator;
  spec.gibbs.hyper = preset.hyper;
  spec.vb.hyper = preset.hyper;
  spec.gibbs.K = preset.generator.K;
  spec.vb.K = preset.generator.K;
  if (fast) {
    spec.gibbs.iterations = 2500;
    spec.group_size = 10;
  }
  return spec;
}

Json to_json(const ExperimentSpec& spec) {
  Json j;
  j["dataset"] = spec.dataset;
  j["generator"] = to_json(spec.generator);
  j["M_values"] = spec.M_values;
  j["group_size"] = spec.group_size;
  j["gibbs"] = to_json(spec.gibbs);
  j["vb"] = to_json(spec.vb);
  if (spec.k_range) {
    j["k_range"] = {{"first", spec.k_range->first}, {"last", spec.k_range->last}};
  } else {
    j["k_range"] = nullptr;
  }
  j["coherence"] = {{"top_n", spec.coherence.top_n},
                    {"window", spec.coherence.window},
                    {"epsilon", spec.coherence.epsilon}};
  j["master_seed"] = spec.master_seed;
  return j;
}

ExperimentSpec experiment_spec_from_json(const Json& j) {
  try {
    ExperimentSpec spec;
    spec.dataset = j.at("dataset").get<std::string>();
    spec.generator = generator_config_from_json(j.at("generator"));
    spec.M_values = j.at("M_values").get<std::vector<std::size_t>>();
    spec.group_size = j.at("group_size").get<std::size_t>();
    spec.gibbs = gibbs_config_from_json(j.at("gibbs"), GibbsConfig{});
    spec.vb = vb_config_from_json(j.at("vb"), VbConfig{});
    if (j.contains("k_range") && !j["k_range"].is_null()) {
      spec.k_range = TopicRange{j["k_range"].at("first").get<std::size_t>(),
                                j["k_range"].at("last").get<std::size_t>()};
    }
    if (j.contains("coherence")) {
      spec.coherence.top_n = j["coherence"].value("top_n", spec.coherence.top_n);
      spec.coherence.window = j["coherence"].value("window", spec.coherence.window);
      spec.coherence.epsilon = j["coherence"].value("epsilon", spec.coherence.epsilon);
    }
    spec.master_seed = j.at("master_seed").get<std::uint64_t>();
    return spec;
  } catch (const Json::exception& e) {
    throw InputError(std::string("experiment spec JSON: ") + e.what());
  }
}

CorpusSeeds corpus_seeds(std::uint64_t master_seed, std::size_t M, std::size_t index) {
  CorpusSeeds s;
  s.corpus = derive_seed(derive_seed(master_seed, M), index);
  s.gibbs = derive_seed(s.corpus, kGibbsStream);
  s.vb = derive_seed(s.corpus, kVbStream);
  return s;
}

void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const fs::path root = spec.dataset_dir();
  if (spec.write_artifacts) ensure_writable(root);

  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t M : spec.M_values) {
    for (std::size_t i = 0; i < spec.group_size; ++i) tasks.emplace_back(M, i);
  }

  std::vector<CorpusOutcome> outcomes(tasks.size());
  parallel_for(tasks.size(), spec.jobs, [&](std::size_t t) {
    const auto [M, index] = tasks[t];
    const PreparedCorpus prepared = prepare_corpus(spec, M, index);
    const Corpus& corpus = prepared.generated.corpus;
    const Matrix& truth = prepared.generated.truth.phi;

    GibbsConfig gibbs = spec.gibbs;
    gibbs.seed = prepared.seeds.gibbs;
    VbConfig vb = spec.vb;
    vb.seed = prepared.seeds.vb;
    const FitResult gibbs_result = gibbs_fit(corpus, gibbs);
    const FitResult vb_result = vb_fit(corpus, vb);

    CorpusOutcome& out = outcomes[t];
    out.M = M;
    out.index = index;
    out.corpus_seed = prepared.seeds.corpus;
    out.gibbs = align_topics(truth, gibbs_result.phi_hat);
    out.vb = align_topics(truth, vb_result.phi_hat);

    if (spec.write_artifacts) {
      const fs::path dir = root / std::to_string(M) / std::to_string(index);
      write_corpus_files(dir, prepared.generated);
      write_json_file(dir / "fit_gibbs.json", fit_to_json(gibbs_result, to_json(gibbs), false));
      write_json_file(dir / "fit_vb.json", fit_to_json(vb_result, to_json(vb), false));
      write_json_file(dir / "eval_gibbs.json", to_json(out.gibbs));
      write_json_file(dir / "eval_vb.json", to_json(out.vb));
    }
  });

  // Single-writer reduction in corpus-index order.
  ExperimentResult result;
  result.corpora = std::move(outcomes);
  for (std::size_t M : spec.M_values) {
    std::vector<double> gibbs_values, vb_values;
    for (const auto& o : result.corpora) {
      if (o.M != M) continue;
      gibbs_values.push_back(o.gibbs.average_kld);
      vb_values.push_back(o.vb.average_kld);
    }
    result.summaries.push_back(summarize_group(M, "gibbs", std::move(gibbs_values)));
    result.summaries.push_back(summarize_group(M, "vb", std::move(vb_values)));
  }

  if (spec.write_artifacts) {
    write_json_file(root / "experiment.json", to_json(spec));
    write_json_file(root / "summary.json", summaries_to_json(result.summaries));
    BoxplotOptions options;
    options.title = "Average KLD per corpus (" + spec.dataset + ")";
    emit_boxplot(result.summaries, root / "boxplot_kld.svg", options);
  }
  return result;
}

CoherenceSweepResult coherence_sweep(const ExperimentSpec& spec) {
  spec.validate();
  if (!spec.k_range) throw ConfigError("coherence sweep needs a K range");
  const fs::path root = spec.dataset_dir();
  if (spec.write_artifacts) ensure_writable(root);

  const std::size_t M = spec.M_values.front();
  std::vector<PreparedCorpus> corpora(spec.group_size);
  parallel_for(spec.group_size, spec.jobs,
               [&](std::size_t i) { corpora[i] = prepare_corpus(spec, M, i); });

  std::vector<std::size_t> topic_counts;
  for (std::size_t K = spec.k_range->first; K <= spec.k_range->last; ++K) topic_counts.push_back(K);

  // scores[(i * nK + k) * 2 + algo]
  std::vector<double> scores(spec.group_size * topic_counts.size() * 2, 0.0);
  parallel_for(spec.group_size * topic_counts.size(), spec.jobs, [&](std::size_t task) {
    const std::size_t i = task / topic_counts.size();
    const std::size_t K = topic_counts[task % topic_counts.size()];
    const Corpus& corpus = corpora[i].generated.corpus;

    GibbsConfig gibbs = spec.gibbs;
    gibbs.K = K;
    gibbs.seed = derive_seed(corpora[i].seeds.gibbs, K);
    VbConfig vb = spec.vb;
    vb.K = K;
    vb.seed = derive_seed(corpora[i].seeds.vb, K);

    scores[task * 2] = cv_score(gibbs_fit(corpus, gibbs).phi_hat, corpus, spec.coherence).mean;
    scores[task * 2 + 1] = cv_score(vb_fit(corpus, vb).phi_hat, corpus, spec.coherence).mean;
  });

  CoherenceSweepResult result;
  for (std::size_t k = 0; k < topic_counts.size(); ++k) {
    std::vector<double> gibbs_values, vb_values;
    for (std::size_t i = 0; i < spec.group_size; ++i) {
      gibbs_values.push_back(scores[(i * topic_counts.size() + k) * 2]);
      vb_values.push_back(scores[(i * topic_counts.size() + k) * 2 + 1]);
    }
    result.summaries.push_back(summarize_group(M, "gibbs", std::move(gibbs_values), topic_counts[k]));
    result.summaries.push_back(summarize_group(M, "vb", std::move(vb_values), topic_counts[k]));
  }

  if (spec.write_artifacts) {
    write_json_file(root / "coherence_spec.json", to_json(spec));
    write_json_file(root / "coherence_summary.json", summaries_to_json(result.summaries, true));
    BoxplotOptions options;
    options.title = "C_v coherence, M = " + std::to_string(M) + " (" + spec.dataset + ")";
    options.x_label = "Number of topics (K)";
    options.y_label = "C_v";
    options.group_by_topics = true;
    emit_boxplot(result.summaries, root / "coherence_K.svg", options);
  }
  return result;
}

Json to_json(const GroupSummary& s, bool include_k) {
  Json j;
  j["M"] = s.M;
  j["algorithm"] = s.algorithm;
  if (include_k) j["K"] = s.K;
  j["values"] = s.values;
  j["median"] = s.median;
  j["q1"] = s.q1;
  j["q3"] = s.q3;
  j["whisker_low"] = s.whisker_low;
  j["whisker_high"] = s.whisker_high;
  j["outliers"] = s.outliers;
  return j;
}

Json summaries_to_json(const std::vector<GroupSummary>& summaries, bool include_k) {
  Json j = Json::array();
  for (const auto& s : summaries) j.push_back(to_json(s, include_k));
  return j;
}

std::string summaries_to_csv(const std::vector<GroupSummary>& summaries) {
  std::ostringstream out;
  out.precision(17);
  out << "M,algorithm,K,n,median,q1,q3,whisker_low,whisker_high,outliers\n";
  for (const auto& s : summaries) {
    out << s.M << ',' << s.algorithm << ',' << s.K << ',' << s.values.size() << ',' << s.median
        << ',' << s.q1 << ',' << s.q3 << ',' << s.whisker_low << ',' << s.whisker_high << ',';
    for (std::size_t i = 0; i < s.outliers.size(); ++i) out << (i ? ";" : "") << s.outliers[i];
    out << '\n';
  }
  return out.str();
}

std::vector<std::pair<std::string, std::string>> hash_tree(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    out.emplace_back(fs::relative(entry.path(), root).generic_string(),
                     sha256_hex(read_file(entry.path())));
  }
  std::sort(out.begin(), out.end());
  return out;
}

VerifyReport verify_outputs(const fs::path& dataset_dir, std::size_t jobs) {
  const bool has_experiment = fs::exists(dataset_dir / "experiment.json");
  const bool has_coherence = fs::exists(dataset_dir / "coherence_spec.json");
  if (!has_experiment && !has_coherence) {
    throw InputError("verify: no experiment.json or coherence_spec.json in " +
                     dataset_dir.string());
  }

  std::random_device rd;
  const fs::path scratch =
      fs::temp_directory_path() / ("simlda-verify-" + std::to_string(rd()) + std::to_string(rd()));
  VerifyReport report;
  try {
    std::string dataset;
    if (has_experiment) {
      ExperimentSpec spec = experiment_spec_from_json(read_json_file(dataset_dir / "experiment.json"));
      spec.output_dir = scratch;
      spec.jobs = jobs;
      dataset = spec.dataset;
      run_experiment(spec);
    }
    if (has_coherence) {
      ExperimentSpec spec =
          experiment_spec_from_json(read_json_file(dataset_dir / "coherence_spec.json"));
      spec.output_dir = scratch;
      spec.jobs = jobs;
      dataset = spec.dataset;
      coherence_sweep(spec);
    }
    const auto original = hash_tree(dataset_dir);
    const auto recomputed = hash_tree(scratch / dataset);

    std::size_t a = 0, b = 0;
    while (a < original.size() || b < recomputed.size()) {
      if (b == recomputed.size() || (a < original.size() && original[a].first < recomputed[b].first)) {
        report.mismatches.push_back(original[a].first + " (not reproduced)");
        ++a;
      } else if (a == original.size() || recomputed[b].first < original[a].first) {
        report.mismatches.push_back(recomputed[b].first + " (missing)");
        ++b;
      } else {
        ++report.files_checked;
        if (original[a].second != recomputed[b].second) report.mismatches.push_back(original[a].first);
        ++a;
        ++b;
      }
    }
  } catch (...) {
    std::error_code ec;
    fs::remove_all(scratch, ec);
    throw;
  }
  std::error_code ec;
  fs::remove_all(scratch, ec);
  return report;
}

}  // namespace simlda
