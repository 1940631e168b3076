#include <atomic>

#include "doctest.h"
#include "simlda/errors.hpp"
#include "simlda/harness.hpp"
#include "simlda/io.hpp"
#include "support.hpp"

using namespace simlda;
using testing_support::TempDir;

namespace {

ExperimentSpec small_spec(const std::filesystem::path& out) {
  ExperimentSpec spec = experiment_spec_for(smaller_preset(), true);
  spec.M_values = {6, 9};
  spec.group_size = 3;
  spec.generator.N = 30;
  spec.gibbs.iterations = 40;
  spec.gibbs.thin = 2;
  spec.vb.epochs = 8;
  spec.output_dir = out;
  spec.master_seed = 77;
  return spec;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("fast profile halves the workload") {
    const ExperimentSpec full = experiment_spec_for(smaller_preset(), false);
    const ExperimentSpec fast = experiment_spec_for(smaller_preset(), true);
    CHECK(full.gibbs.iterations == 5000);
    CHECK(full.group_size == 20);
    CHECK(fast.gibbs.iterations == 2500);
    CHECK(fast.group_size == 10);
    CHECK(full.M_values == std::vector<std::size_t>{50, 100, 200, 300, 400, 500});
    CHECK(fast.gibbs.hyper == smaller_preset().hyper);
    CHECK(experiment_spec_for(larger_preset(), true).vb.K == 10);
  }

  TEST_CASE("spec validation") {
    ExperimentSpec s = small_spec("x");
    CHECK_NOTHROW(s.validate());
    s.M_values.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = small_spec("x");
    s.group_size = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = small_spec("x");
    s.k_range = TopicRange{5, 4};
    CHECK_THROWS_AS(s.validate(), ConfigError);
  }

  TEST_CASE("spec JSON round trip") {
    ExperimentSpec s = small_spec("x");
    s.k_range = TopicRange{3, 6};
    const ExperimentSpec back = experiment_spec_from_json(Json::parse(dump_json(to_json(s))));
    CHECK(dump_json(to_json(back)) == dump_json(to_json(s)));
    CHECK_THROWS_AS(experiment_spec_from_json(Json::object()), InputError);
  }

  TEST_CASE("seeds are distinct per corpus and per algorithm") {
    const CorpusSeeds a = corpus_seeds(1, 50, 0), b = corpus_seeds(1, 50, 1), c = corpus_seeds(1, 100, 0);
    CHECK(a.corpus != b.corpus);
    CHECK(a.corpus != c.corpus);
    CHECK(a.gibbs != a.vb);
    CHECK(a.corpus == corpus_seeds(1, 50, 0).corpus);
  }

  TEST_CASE("parallel_for visits every index once and rethrows") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                      if (i == 5) throw InputError("boom");
                    }),
                    InputError);
  }

  TEST_CASE("experiment writes the artifact tree and orders summaries") {
    TempDir dir("harness_tree");
    const ExperimentSpec spec = small_spec(dir.path());
    const ExperimentResult r = run_experiment(spec);
    REQUIRE(r.summaries.size() == 4);
    CHECK(r.summaries[0].M == 6);
    CHECK(r.summaries[0].algorithm == "gibbs");
    CHECK(r.summaries[1].algorithm == "vb");
    CHECK(r.summaries[2].M == 9);
    CHECK(r.summaries[0].values.size() == 3);
    CHECK(r.corpora.size() == 6);

    const auto root = dir.path() / "smaller";
    for (const char* f : {"experiment.json", "summary.json", "boxplot_kld.svg"}) {
      CHECK(std::filesystem::exists(root / f));
    }
    for (const char* f : {"docs.txt.gz", "dictionary.json", "ground_truth.json", "fit_gibbs.json",
                          "fit_vb.json", "eval_gibbs.json", "eval_vb.json"}) {
      CHECK(std::filesystem::exists(root / "9" / "2" / f));
    }
    const Json eval = read_json_file(root / "6" / "1" / "eval_vb.json");
    CHECK(eval["average_kld"].get<double>() == r.summaries[1].values[1]);
  }

  TEST_CASE("worker count does not change any output byte") {
    TempDir a("harness_j1"), b("harness_j3");
    ExperimentSpec s1 = small_spec(a.path());
    ExperimentSpec s3 = small_spec(b.path());
    s3.jobs = 3;
    run_experiment(s1);
    run_experiment(s3);
    CHECK(hash_tree(a.path()) == hash_tree(b.path()));
  }

  TEST_CASE("singleton group") {
    TempDir dir("harness_single");
    ExperimentSpec spec = small_spec(dir.path());
    spec.M_values = {6};
    spec.group_size = 1;
    spec.write_artifacts = false;
    const ExperimentResult r = run_experiment(spec);
    REQUIRE(r.summaries.size() == 2);
    for (const auto& s : r.summaries) {
      REQUIRE(s.values.size() == 1);
      CHECK(s.median == s.values[0]);
    }
    CHECK(std::filesystem::is_empty(dir.path()));
  }

  TEST_CASE("unwritable output fails before any compute") {
    TempDir dir("harness_unwritable");
    write_file(dir.path() / "blocker", "x");
    ExperimentSpec spec = small_spec(dir.path() / "blocker" / "nested");
    spec.gibbs.iterations = 1'000'000'000;  // would never finish if started
    CHECK_THROWS_AS(run_experiment(spec), IoError);
  }

  TEST_CASE("verify reproduces a run and catches tampering") {
    TempDir dir("harness_verify");
    const ExperimentSpec spec = small_spec(dir.path());
    run_experiment(spec);
    const auto root = spec.dataset_dir();
    const VerifyReport ok = verify_outputs(root, 2);
    CHECK(ok.ok());
    CHECK(ok.files_checked == 3 + 6 * 7);

    write_file(root / "6" / "0" / "eval_vb.json", "{}\n");
    const VerifyReport bad = verify_outputs(root);
    CHECK_FALSE(bad.ok());
    REQUIRE(bad.mismatches.size() == 1);
    CHECK(bad.mismatches[0] == "6/0/eval_vb.json");
    CHECK_THROWS_AS(verify_outputs(dir.path()), InputError);
  }

  TEST_CASE("degenerate coherence sweep") {
    TempDir dir("harness_cv");
    ExperimentSpec spec = small_spec(dir.path());
    spec.M_values = {8};
    spec.group_size = 1;
    spec.k_range = TopicRange{7, 7};
    const CoherenceSweepResult r = coherence_sweep(spec);
    REQUIRE(r.summaries.size() == 2);
    for (const auto& s : r.summaries) {
      CHECK(s.K == 7);
      REQUIRE(s.values.size() == 1);
      CHECK(s.values[0] >= -1.0);
      CHECK(s.values[0] <= 1.0);
    }
    CHECK(std::filesystem::exists(spec.dataset_dir() / "coherence_K.svg"));
    const Json summary = read_json_file(spec.dataset_dir() / "coherence_summary.json");
    CHECK(summary[0]["K"] == 7);
    spec.k_range.reset();
    CHECK_THROWS_AS(coherence_sweep(spec), ConfigError);
  }

  TEST_CASE("summary exports") {
    const std::vector<GroupSummary> s{summarize_group(50, "gibbs", {0.1, 0.2}, 0)};
    const std::string csv = summaries_to_csv(s);
    CHECK(csv.rfind("M,algorithm,K,n,median", 0) == 0);
    CHECK(csv.find("50,gibbs,0,2,") != std::string::npos);
    const Json j = summaries_to_json(s, false);
    CHECK_FALSE(j[0].contains("K"));
    CHECK(j[0]["median"].get<double>() == doctest::Approx(0.15));
  }
}
