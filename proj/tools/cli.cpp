#include "cli.hpp"

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "simlda/errors.hpp"
#include "simlda/eval.hpp"
#include "simlda/harness.hpp"
#include "simlda/io.hpp"
#include "simlda/service.hpp"
#include "simlda/svg.hpp"

namespace simlda::cli {

namespace fs = std::filesystem;

namespace {

/// Usage problems found after CLI11 parsing (e.g. flags that do not apply
/// to the chosen algorithm).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<std::string> option_names(const CLI::App& app) {
  std::vector<std::string> names;
  for (const CLI::Option* opt : app.get_options()) {
    for (const auto& l : opt->get_lnames()) names.push_back("--" + l);
    for (const auto& s : opt->get_snames()) names.push_back("-" + s);
  }
  return names;
}

struct GeneratorFlags {
  std::string preset = "smaller";
  std::string config_file;
  std::optional<std::size_t> M, V, N, K, K_m;
  std::optional<std::string> shape;
  std::optional<double> overlap, function_fraction, function_block_fraction;
  bool no_function_topic = false;
  std::optional<std::uint64_t> seed;
};

void add_generator_flags(CLI::App* cmd, GeneratorFlags& f) {
  cmd->add_option("--preset", f.preset, "Base preset")
      ->check(CLI::IsMember({"smaller", "larger"}))
      ->capture_default_str();
  cmd->add_option("--config", f.config_file, "JSON file with generator fields")
      ->check(CLI::ExistingFile);
  cmd->add_option("-M", f.M, "Documents per corpus");
  cmd->add_option("-V", f.V, "Vocabulary size");
  cmd->add_option("-N", f.N, "Tokens per document");
  cmd->add_option("-K", f.K, "Topics including the function topic");
  cmd->add_option("--Km", f.K_m, "Content topics per document");
  cmd->add_option("--shape", f.shape, "Topic shape")->check(CLI::IsMember({"laplace", "gaussian"}));
  cmd->add_option("--overlap", f.overlap, "Topic width relative to centre spacing");
  cmd->add_option("--function-fraction", f.function_fraction,
                  "Expected share of function-topic tokens per document");
  cmd->add_option("--function-block-fraction", f.function_block_fraction,
                  "Share of the vocabulary reserved for function words");
  cmd->add_flag("--no-function-topic", f.no_function_topic, "Disable the function topic");
  cmd->add_option("--seed", f.seed, "Generation seed");
}

GeneratorConfig resolve_generator(const GeneratorFlags& f, const Preset& preset) {
  GeneratorConfig c = preset.generator;
  if (!f.config_file.empty()) {
    Json j = read_json_file(f.config_file);
    Json merged = to_json(c);
    for (auto it = j.begin(); it != j.end(); ++it) merged[it.key()] = it.value();
    c = generator_config_from_json(merged);
  }
  if (f.M) c.M = *f.M;
  if (f.V) c.V = *f.V;
  if (f.N) c.N = *f.N;
  if (f.K) c.K = *f.K;
  if (f.K_m) c.K_m = *f.K_m;
  if (f.shape) c.shape = topic_shape_from_string(*f.shape);
  if (f.overlap) c.overlap = *f.overlap;
  if (f.function_fraction) c.function_fraction = *f.function_fraction;
  if (f.function_block_fraction) c.function_block_fraction = *f.function_block_fraction;
  if (f.no_function_topic) c.function_topic = false;
  if (f.seed) c.seed = *f.seed;
  c.validate();
  return c;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  GeneratorFlags gen;
  std::string out_dir = "out";
};

int run_generate(const GenerateArgs& a, std::ostream& out) {
  const GeneratorConfig config = resolve_generator(a.gen, preset_by_name(a.gen.preset));
  const GeneratedCorpus generated = generate_corpus(config);
  write_corpus_files(a.out_dir, generated);
  out << "wrote " << generated.corpus.num_docs() << " documents to " << a.out_dir << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string algo;
  std::string corpus_dir;
  std::string output;
  std::string config_file;
  std::optional<std::string> preset;
  std::optional<double> alpha, beta, burn_in;
  std::optional<std::size_t> K, iters, thin, epochs;
  bool final_state = false;
  bool fast = false;
  std::uint64_t seed = 0;
  bool no_timing = false;
};

int run_fit(const FitArgs& a, std::ostream& out) {
  const Algorithm algo = algorithm_from_string(a.algo);
  if (algo == Algorithm::Vb && (a.iters || a.thin || a.burn_in || a.final_state || a.fast)) {
    throw UsageError("--iters, --thin, --burn-in, --final-state and --fast apply to --algo gibbs only");
  }
  if (algo == Algorithm::Gibbs && a.epochs) {
    throw UsageError("--epochs applies to --algo vb only");
  }

  const GeneratedCorpus data = read_corpus_files(a.corpus_dir);
  const Preset preset = a.preset ? preset_by_name(*a.preset) : Preset{};
  DirichletHyperparams hyper = a.preset ? preset.hyper : DirichletHyperparams{0.5, 0.5};
  if (!a.preset && data.corpus.gen_params.V == larger_preset().generator.V) hyper = larger_preset().hyper;
  if (a.alpha) hyper.alpha = *a.alpha;
  if (a.beta) hyper.beta = *a.beta;
  const std::size_t K = a.K.value_or(data.truth.K);
  const Json file_config = a.config_file.empty() ? Json::object() : read_json_file(a.config_file);

  FitResult fit;
  Json echo;
  if (algo == Algorithm::Gibbs) {
    GibbsConfig c;
    c.hyper = hyper;
    c.K = K;
    c.seed = a.seed;
    c = gibbs_config_from_json(file_config, c);
    if (a.fast) c.iterations = 2500;
    if (a.iters) c.iterations = *a.iters;
    if (a.thin) c.thin = *a.thin;
    if (a.burn_in) c.burn_in_fraction = *a.burn_in;
    if (a.final_state) c.estimator = GibbsEstimator::FinalState;
    c.validate();
    fit = gibbs_fit(data.corpus, c);
    echo = to_json(c);
  } else {
    VbConfig c;
    c.hyper = hyper;
    c.K = K;
    c.seed = a.seed;
    c = vb_config_from_json(file_config, c);
    if (a.epochs) c.epochs = *a.epochs;
    c.validate();
    fit = vb_fit(data.corpus, c);
    echo = to_json(c);
  }
  const fs::path path = a.output.empty()
                            ? fs::path(a.corpus_dir) / ("fit_" + std::string(to_string(algo)) + ".json")
                            : fs::path(a.output);
  write_json_file(path, fit_to_json(fit, echo, !a.no_timing));
  out << "wrote " << path.string() << " (" << fit.iterations << " iterations, "
      << std::fixed << std::setprecision(2) << fit.wall_seconds << " s)\n";
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string fit_file;
  std::string truth_file;
  std::string output;
  std::string plot;
  std::string corpus_dir;
  CoherenceConfig coherence;
};

int run_eval(const EvalArgs& a, std::ostream& out) {
  const FitResult fit = fit_from_json(read_json_file(a.fit_file));
  const GroundTruthModel truth = ground_truth_from_json(read_json_file(a.truth_file));
  const EvalReport report = align_topics(truth.phi, fit.phi_hat);

  const fs::path path =
      a.output.empty() ? fs::path(a.fit_file).parent_path() / "eval.json" : fs::path(a.output);
  write_json_file(path, to_json(report));
  if (!a.plot.empty()) {
    emit_wordtopic_plot(truth.phi, fit.phi_hat, report.alignment, report.average_kld, a.plot);
  }
  out << std::fixed << std::setprecision(6) << report.average_kld << "\n";

  if (!a.corpus_dir.empty()) {
    const GeneratedCorpus data = read_corpus_files(a.corpus_dir);
    const CoherenceReport coherence = cv_score(fit.phi_hat, data.corpus, a.coherence);
    write_json_file(path.parent_path() / "coherence.json", coherence_to_json(coherence, a.coherence));
    out << "C_v " << std::fixed << std::setprecision(6) << coherence.mean << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- experiment / coherence

struct ExperimentArgs {
  std::string preset = "smaller";
  std::string config_file;
  std::vector<std::size_t> M_values;
  std::optional<std::size_t> single_M;
  std::optional<std::size_t> group_size, iters, epochs, k_min, k_max;
  bool fast = false;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::string format = "json";
};

ExperimentSpec resolve_spec(const ExperimentArgs& a) {
  ExperimentSpec spec = experiment_spec_for(preset_by_name(a.preset), a.fast);
  if (!a.config_file.empty()) spec = experiment_spec_from_json(read_json_file(a.config_file));
  if (!a.M_values.empty()) spec.M_values = a.M_values;
  if (a.single_M) spec.M_values = {*a.single_M};
  if (a.group_size) spec.group_size = *a.group_size;
  if (a.iters) spec.gibbs.iterations = *a.iters;
  if (a.epochs) spec.vb.epochs = *a.epochs;
  spec.master_seed = a.seed;
  spec.jobs = a.jobs;
  spec.output_dir = a.out_dir;
  return spec;
}

void print_summaries(const std::vector<GroupSummary>& summaries, const std::string& format,
                     bool include_k, std::ostream& out) {
  if (format == "csv") {
    out << summaries_to_csv(summaries);
  } else {
    out << dump_json(summaries_to_json(summaries, include_k));
  }
}

int run_experiment_cmd(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec = resolve_spec(a);
  err << "experiment '" << spec.dataset << "': " << spec.M_values.size() << " groups x "
      << spec.group_size << " corpora, " << spec.jobs << " worker(s)\n";
  const ExperimentResult result = run_experiment(spec);
  print_summaries(result.summaries, a.format, false, out);
  return kExitOk;
}

int run_coherence_cmd(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec = resolve_spec(a);
  if (!a.single_M && a.M_values.empty() && a.config_file.empty()) {
    spec.M_values = {a.preset == "larger" ? std::size_t{200} : std::size_t{100}};
  }
  TopicRange range = a.preset == "larger" ? TopicRange{6, 14} : TopicRange{4, 10};
  if (spec.k_range) range = *spec.k_range;
  if (a.k_min) range.first = *a.k_min;
  if (a.k_max) range.last = *a.k_max;
  spec.k_range = range;
  err << "coherence sweep '" << spec.dataset << "': M = " << spec.M_values.front() << ", K = "
      << range.first << ".." << range.last << ", " << spec.group_size << " corpora\n";
  const CoherenceSweepResult result = coherence_sweep(spec);
  print_summaries(result.summaries, a.format, true, out);
  return kExitOk;
}

// ---------------------------------------------------------------- serve / verify

GenerateServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int run_serve(const std::string& listen, std::ostream& err) {
  const ListenAddress address = parse_listen_address(listen);
  GenerateServer server;
  const int port = server.bind(address);
  err << "listening on " << address.host << ":" << port << "\n";
  g_server = &server;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  server.listen();
  g_server = nullptr;
  return kExitOk;
}

int run_verify(const std::string& dir, std::size_t jobs, std::ostream& out, std::ostream& err) {
  const VerifyReport report = verify_outputs(dir, jobs);
  for (const auto& m : report.mismatches) err << "mismatch: " << m << "\n";
  out << (report.ok() ? "verified " : "FAILED ") << report.files_checked << " files\n";
  return report.ok() ? kExitOk : kExitRuntime;
}

}  // namespace

std::string nearest(const std::string& word, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_distance = std::max<std::size_t>(3, word.size() / 2) + 1;
  for (const auto& c : candidates) {
    const std::size_t d = edit_distance(word, c);
    if (d < best_distance) {
      best_distance = d;
      best = c;
    }
  }
  return best;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"simlda: synthetic LDA corpora, inference and topic evaluation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic corpus");
  add_generator_flags(generate, gen.gen);
  generate->add_option("-o,--out", gen.out_dir, "Output directory")->capture_default_str();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit LDA to a generated corpus");
  fit_cmd->add_option("--algo", fit.algo, "Inference algorithm")
      ->required()
      ->check(CLI::IsMember({"gibbs", "vb"}));
  fit_cmd->add_option("--corpus", fit.corpus_dir, "Corpus directory")->required()->check(CLI::ExistingDirectory);
  fit_cmd->add_option("-o,--out", fit.output, "Output file (default <corpus>/fit_<algo>.json)");
  fit_cmd->add_option("--config", fit.config_file, "JSON file with algorithm settings")
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--preset", fit.preset, "Take alpha/beta from a preset")
      ->check(CLI::IsMember({"smaller", "larger"}));
  fit_cmd->add_option("--alpha", fit.alpha, "Document-topic concentration");
  fit_cmd->add_option("--beta", fit.beta, "Word-topic concentration");
  fit_cmd->add_option("-K", fit.K, "Number of topics (default: ground-truth K)");
  auto* iters_opt = fit_cmd->add_option("--iters", fit.iters, "Gibbs sweeps");
  fit_cmd->add_option("--burn-in", fit.burn_in, "Gibbs burn-in fraction");
  fit_cmd->add_option("--thin", fit.thin, "Gibbs thinning interval");
  fit_cmd->add_flag("--final-state", fit.final_state, "Gibbs: estimate from the last state only");
  fit_cmd->add_flag("--fast", fit.fast, "Gibbs: 2,500 sweeps")->excludes(iters_opt);
  fit_cmd->add_option("--epochs", fit.epochs, "VB epochs");
  fit_cmd->add_option("--seed", fit.seed, "Chain seed")->capture_default_str();
  fit_cmd->add_flag("--no-timing", fit.no_timing, "Omit wall-clock time from the output");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score a fit against its ground truth");
  eval_cmd->add_option("--fit", ev.fit_file, "fit_*.json")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--truth", ev.truth_file, "ground_truth.json")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("-o,--out", ev.output, "Report file (default eval.json next to the fit)");
  eval_cmd->add_option("--plot", ev.plot, "Write a word-topic SVG plot");
  eval_cmd->add_option("--corpus", ev.corpus_dir, "Also score C_v coherence on this corpus")
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--top-n", ev.coherence.top_n, "C_v top words")->capture_default_str();
  eval_cmd->add_option("--window", ev.coherence.window, "C_v sliding window")->capture_default_str();

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "KLD box plots over corpus groups");
  ExperimentArgs co;
  auto* coherence = app.add_subcommand("coherence", "C_v coherence over a range of K");
  for (auto [cmd, args] : {std::pair{experiment, &ex}, std::pair{coherence, &co}}) {
    cmd->add_option("--preset", args->preset, "Data set preset")
        ->check(CLI::IsMember({"smaller", "larger"}))
        ->capture_default_str();
    cmd->add_option("--config", args->config_file, "JSON experiment spec")->check(CLI::ExistingFile);
    auto* group = cmd->add_option("--group-size", args->group_size, "Corpora per group");
    auto* iters = cmd->add_option("--iters", args->iters, "Gibbs sweeps");
    cmd->add_flag("--fast", args->fast, "Desk-scale profile: 2,500 sweeps, groups of 10")
        ->excludes(iters)
        ->excludes(group);
    cmd->add_option("--epochs", args->epochs, "VB epochs");
    cmd->add_option("--jobs", args->jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args->seed, "Master seed")->capture_default_str();
    cmd->add_option("-o,--out", args->out_dir, "Output root")->capture_default_str();
    cmd->add_option("--format", args->format, "Summary format on stdout")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  }
  experiment->add_option("--M", ex.M_values, "Documents per corpus, one group each")->delimiter(',');
  coherence->add_option("-M", co.single_M, "Documents per corpus");
  coherence->add_option("--k-min", co.k_min, "Smallest K");
  coherence->add_option("--k-max", co.k_max, "Largest K");

  std::string listen = "127.0.0.1:8080";
  auto* serve = app.add_subcommand("serve", "Serve PUT /v1/generate over HTTP");
  serve->add_option("--listen", listen, "addr:port")->capture_default_str();

  std::string verify_dir;
  std::size_t verify_jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* verify = app.add_subcommand("verify", "Recompute an output tree and compare hashes");
  verify->add_option("dir", verify_dir, "out/<dataset> directory")->required()->check(CLI::ExistingDirectory);
  verify->add_option("--jobs", verify_jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ExtrasError& e) {
    err << "error: " << e.what() << "\n";
    std::vector<std::string> candidates = option_names(app);
    for (const CLI::App* sub : app.get_subcommands()) {
      const auto names = option_names(*sub);
      candidates.insert(candidates.end(), names.begin(), names.end());
    }
    if (app.get_subcommands().empty()) {
      for (const CLI::App* sub : app.get_subcommands({})) {
        const auto names = option_names(*sub);
        candidates.insert(candidates.end(), names.begin(), names.end());
      }
    }
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i].size() < 2 || args[i][0] != '-') continue;
      const std::string flag = args[i].substr(0, args[i].find('='));
      if (std::find(candidates.begin(), candidates.end(), flag) != candidates.end()) continue;
      const std::string suggestion = nearest(flag, candidates);
      if (!suggestion.empty()) err << "did you mean '" << suggestion << "' instead of '" << flag << "'?\n";
    }
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen, out);
    if (fit_cmd->parsed()) return run_fit(fit, out);
    if (eval_cmd->parsed()) return run_eval(ev, out);
    if (experiment->parsed()) return run_experiment_cmd(ex, out, err);
    if (coherence->parsed()) return run_coherence_cmd(co, out, err);
    if (serve->parsed()) return run_serve(listen, err);
    if (verify->parsed()) return run_verify(verify_dir, verify_jobs, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace simlda::cli
