#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypolink/elements.hpp"
#include "hypolink/eval.hpp"
#include "hypolink/graph.hpp"
#include "hypolink/io.hpp"
#include "hypolink/keywords.hpp"
#include "hypolink/predict.hpp"
#include "hypolink/record.hpp"
#include "hypolink/synth.hpp"

namespace hypolink {

inline constexpr const char* kToolName = "hypolink";
inline constexpr const char* kToolVersion = "0.1.0";

/// Full configuration of one pipeline run. Everything that can influence an
/// output lives here and is echoed into the manifest.
struct RunConfig {
  // corpus source: a user corpus split by period, or the synthetic generator
  std::string corpus_path;  // empty selects synthesis
  YearRange train_range{2004, 2012};
  YearRange test_range{2013, 2016};
  SynthConfig synth;

  // extraction
  std::string elements_path;
  std::string materials_path;
  std::size_t top_k_keywords = 20;

  // graph
  std::size_t min_keyword_count = 100;

  // prediction and evaluation
  Method method = Method::kUserBasedMp;
  ModelConfig model;
  std::size_t top_n = 100;  // ranked links written to predictions.csv
  std::size_t max_n = 300;  // GROC / precision depth
  std::string keyword;      // optional per-keyword ROC/AUROC report
  double ci_level = 0.98;
  std::size_t bootstrap_reps = 1000;

  std::uint64_t seed = 0;  // root seed; every stage derives its own stream
  std::string out_dir;
};

struct PipelineResult {
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t n_dropped = 0;
  std::size_t n_matter = 0;
  std::size_t n_keywords = 0;
  std::size_t nnz = 0;
  std::size_t n_candidates = 0;
  std::size_t n_new_links = 0;
  std::vector<std::string> outputs;  // file names inside out_dir
  std::filesystem::path manifest_path;
};

namespace detail {

inline nlohmann::json run_config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["corpus"] = cfg.corpus_path;
  j["train_range"] = {cfg.train_range.first, cfg.train_range.last};
  j["test_range"] = {cfg.test_range.first, cfg.test_range.last};
  j["synth"] = {{"n_matter", cfg.synth.n_matter},
                {"n_keywords", cfg.synth.n_keywords},
                {"n_docs_train", cfg.synth.n_docs_train},
                {"n_docs_test", cfg.synth.n_docs_test},
                {"zipf_exponent", cfg.synth.zipf_exponent},
                {"n_latent_groups", cfg.synth.n_latent_groups},
                {"within_group_affinity", cfg.synth.within_group_affinity}};
  j["elements"] = cfg.elements_path;
  j["materials"] = cfg.materials_path;
  j["top_k_keywords"] = cfg.top_k_keywords;
  j["min_keyword_count"] = cfg.min_keyword_count;
  j["method"] = method_name(cfg.method);
  j["model"] = {{"m", cfg.model.m},
                {"alpha", cfg.model.alpha},
                {"sigma", cfg.model.sigma},
                {"k_latent", cfg.model.k_latent},
                {"mf_learning_rate", cfg.model.mf_learning_rate},
                {"mf_regularization", cfg.model.mf_regularization},
                {"mf_epochs", cfg.model.mf_epochs},
                {"auto_shift", cfg.model.auto_shift}};
  j["top_n"] = cfg.top_n;
  j["max_n"] = cfg.max_n;
  j["keyword"] = cfg.keyword;
  j["ci_level"] = cfg.ci_level;
  j["bootstrap_reps"] = cfg.bootstrap_reps;
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace detail

/// Runs the whole chain: corpus -> terms -> graph -> predictions ->
/// evaluation -> distribution stats, writing every artifact plus a manifest
/// that pins seeds, config, and input digests. Byte-identical reruns from
/// the same config and seed are the contract the manifest documents.
inline PipelineResult run_pipeline(const RunConfig& cfg) {
  if (cfg.out_dir.empty()) throw UsageError("output directory is required");
  std::filesystem::path out_dir(cfg.out_dir);
  std::filesystem::create_directories(out_dir);

  PipelineResult result;
  nlohmann::json inputs = nlohmann::json::object();

  ElementTable table = make_element_table(std::filesystem::path(cfg.elements_path),
                                          std::filesystem::path(cfg.materials_path));
  if (!cfg.elements_path.empty()) inputs[cfg.elements_path] = file_digest(cfg.elements_path);
  if (!cfg.materials_path.empty())
    inputs[cfg.materials_path] = file_digest(cfg.materials_path);

  auto emit = [&](const std::string& name) { result.outputs.push_back(name); };

  // stage 1: corpus
  std::vector<PublicationRecord> train_records, test_records;
  if (cfg.corpus_path.empty()) {
    SynthConfig synth_cfg = cfg.synth;
    synth_cfg.seed = derive_seed(cfg.seed, "synth");
    SynthCorpus corpus = generate(synth_cfg);
    train_records = std::move(corpus.train);
    test_records = std::move(corpus.test);
    write_corpus(out_dir / "train.jsonl", train_records);
    write_corpus(out_dir / "test.jsonl", test_records);
    write_truth_csv(out_dir / "truth.csv", corpus.truth);
    emit("train.jsonl");
    emit("test.jsonl");
    emit("truth.csv");
  } else {
    auto records = load_corpus(cfg.corpus_path);
    inputs[cfg.corpus_path] = file_digest(cfg.corpus_path);
    CorpusSplit split = split_by_period(records, cfg.train_range, cfg.test_range);
    result.n_dropped = records.size() - split.train.size() - split.test.size();
    train_records = std::move(split.train);
    test_records = std::move(split.test);
  }
  result.n_train = train_records.size();
  result.n_test = test_records.size();

  // stage 2: extraction
  CorpusStats stats = compute_corpus_stats(train_records, table);
  write_stats(out_dir / "stats.txt", stats);
  emit("stats.txt");
  auto train_terms =
      extract_all_document_terms(train_records, table, stats, cfg.top_k_keywords);
  auto test_terms = extract_all_document_terms(test_records, table, stats,
                                               cfg.top_k_keywords, true);
  write_terms(out_dir / "train_terms.jsonl", train_terms);
  write_terms(out_dir / "test_terms.jsonl", test_terms);
  emit("train_terms.jsonl");
  emit("test_terms.jsonl");

  // stage 3: graph
  BipartiteGraph graph =
      filter_graph(build_graph(train_terms), train_terms, cfg.min_keyword_count);
  write_graph(out_dir / "graph.txt", graph);
  emit("graph.txt");
  result.n_matter = graph.n_matter();
  result.n_keywords = graph.n_keywords();
  result.nnz = graph.nnz();
  result.n_candidates = graph.n_matter() * graph.n_keywords() - graph.nnz();

  LinkSet truth = new_links(graph, test_terms);
  result.n_new_links = truth.size();

  // stage 4: prediction
  ModelConfig model = cfg.model;
  model.seed = derive_seed(cfg.seed, "model");
  RankedList ranked = rank_candidates(graph, cfg.method, model);
  write_ranked_csv(out_dir / "predictions.csv", graph, ranked, cfg.top_n);
  emit("predictions.csv");

  // stage 5: evaluation
  write_groc_csv(out_dir / "groc.csv", groc_curve(ranked, truth, cfg.max_n));
  write_precision_csv(out_dir / "precision.csv", precision_curve(ranked, truth, cfg.max_n));
  emit("groc.csv");
  emit("precision.csv");
  if (!cfg.keyword.empty()) {
    auto wit = graph.keyword_index.find(cfg.keyword);
    if (wit == graph.keyword_index.end())
      throw DataError("keyword not in vocabulary: \"" + cfg.keyword + "\"");
    AurocReport report = keyword_subgraph_eval(graph, truth, cfg.keyword, cfg.method,
                                               model, cfg.ci_level, cfg.bootstrap_reps);
    write_auroc_txt(out_dir / "auroc.txt", report);
    emit("auroc.txt");
    LinkScorer scorer(graph, model);
    SplitRng rng(derive_seed(model.seed, "random-scorer"));
    std::vector<double> scores;
    std::vector<int> labels;
    keyword_column_scores(scorer, truth, wit->second, cfg.method, rng, scores, labels);
    write_roc_csv(out_dir / "roc.csv", roc_curve(scores, labels));
    emit("roc.csv");
  }

  // stage 6: distribution stats
  AppearanceDistribution dist = appearance_distribution(train_terms);
  write_histogram_csv(out_dir / "appearance_hist.csv", dist);
  write_loglog_csv(out_dir / "cumulative_loglog.csv", dist);
  emit("appearance_hist.csv");
  emit("cumulative_loglog.csv");

  // manifest: enough to reproduce the run byte for byte
  nlohmann::json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["seed"] = cfg.seed;
  manifest["config"] = detail::run_config_json(cfg);
  manifest["inputs"] = inputs;
  nlohmann::json outputs = nlohmann::json::object();
  std::sort(result.outputs.begin(), result.outputs.end());
  for (const auto& name : result.outputs)
    outputs[name] = file_digest(out_dir / name);
  manifest["outputs"] = outputs;
  result.manifest_path = out_dir / "manifest.json";
  {
    auto out = detail::open_out(result.manifest_path);
    out << manifest.dump(2) << '\n';
  }
  return result;
}

}  // namespace hypolink
