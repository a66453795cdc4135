// Command-line front end for the hypothesis-link pipeline. Subcommands mirror
// the pipeline stages so each intermediate artifact can be produced and
// inspected on its own:
//
//   synth     write a seeded synthetic corpus (train/test/truth)
//   extract   corpus -> document terms (+ corpus stats)
//   build     document terms -> filtered co-occurrence graph
//   predict   graph -> ranked candidate links (CSV)
//   evaluate  graph + test terms -> GROC/precision (+ per-keyword ROC/AUROC)
//   stats     appearance distribution and graph dimension report
//   pipeline  all of the above in one deterministic run with a manifest
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypolink/hypolink.hpp"

namespace {

using namespace hypolink;

std::uint64_t env_default_seed() {
  if (const char* env = std::getenv("HYPOLINK_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw UsageError("HYPOLINK_SEED is not a valid integer");
    }
  }
  return 0;
}

// Flat key=value config: one assignment per line, '#' comments. Values fill
// in options the command line left unset, so flags always win.
void apply_config_file(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string entry = line.substr(first, last - first + 1);
    auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + " line " + std::to_string(line_no) +
                       ": expected key=value");
    auto strip = [](std::string s) {
      auto a = s.find_first_not_of(" \t");
      auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = strip(entry.substr(0, eq));
    std::string value = strip(entry.substr(eq + 1));
    if (key.empty())
      throw UsageError(path + " line " + std::to_string(line_no) + ": empty key");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config")
      throw UsageError(path + " line " + std::to_string(line_no) +
                       ": unknown config key \"" + key + "\"");
    if (opt->count() > 0) continue;  // explicit flag wins
    opt->add_result(value);
    opt->run_callback();
  }
}

struct CommonExtraction {
  std::string elements_path;
  std::string materials_path;
  std::size_t top_k = 20;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--elements", elements_path,
                    "element symbol list (one per line, # comments)");
    cmd->add_option("--materials", materials_path,
                    "special material names (one per line, # comments)");
    cmd->add_option("--top-k-keywords", top_k, "keywords kept per document")
        ->default_val(20);
  }

  ElementTable table() const {
    return make_element_table(std::filesystem::path(elements_path),
                              std::filesystem::path(materials_path));
  }
};

void add_model_flags(CLI::App* cmd, ModelConfig& model) {
  cmd->add_option("--m", model.m, "neighborhood size")->default_val(10);
  cmd->add_option("--alpha", model.alpha, "user-based MP shift")->default_val(2.4);
  cmd->add_option("--sigma", model.sigma, "item-based MP shift")->default_val(0.01);
  cmd->add_option("--k", model.k_latent, "MF latent dimension")->default_val(97);
  cmd->add_option("--mf-learning-rate", model.mf_learning_rate)->default_val(0.01);
  cmd->add_option("--mf-regularization", model.mf_regularization)->default_val(0.02);
  cmd->add_option("--mf-epochs", model.mf_epochs)->default_val(200);
  cmd->add_flag("--auto-shift", model.auto_shift,
                "derive the MP shift from -min(s)+0.01 over the candidates");
}

int run(int argc, char** argv) {
  CLI::App app{"bipartite matter-keyword link prediction"};
  app.require_subcommand(1);

  std::uint64_t seed = env_default_seed();

  // ---- synth ----
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus");
  SynthConfig synth_cfg;
  std::string synth_out;
  synth_cmd->add_option("--out", synth_out, "output directory")->required();
  synth_cmd->add_option("--seed", seed, "root seed");
  synth_cmd->add_option("--n-matter", synth_cfg.n_matter)->default_val(300);
  synth_cmd->add_option("--n-keywords", synth_cfg.n_keywords)->default_val(150);
  synth_cmd->add_option("--n-docs-train", synth_cfg.n_docs_train)->default_val(4000);
  synth_cmd->add_option("--n-docs-test", synth_cfg.n_docs_test)->default_val(1200);
  synth_cmd->add_option("--zipf-exponent", synth_cfg.zipf_exponent)->default_val(2.0);
  synth_cmd->add_option("--n-groups", synth_cfg.n_latent_groups)->default_val(6);
  synth_cmd->add_option("--affinity", synth_cfg.within_group_affinity)->default_val(0.8);

  // ---- extract ----
  auto* extract_cmd = app.add_subcommand("extract", "corpus -> document terms");
  std::string ex_corpus, ex_out, ex_stats_out, ex_stats_in;
  CommonExtraction ex_common;
  extract_cmd->add_option("--corpus", ex_corpus, "corpus file (JSON lines)")->required();
  extract_cmd->add_option("--out", ex_out, "terms output file")->required();
  extract_cmd->add_option("--stats-out", ex_stats_out, "write corpus stats here");
  extract_cmd->add_option("--stats-in", ex_stats_in,
                          "frozen training stats (test-period extraction)");
  ex_common.add_flags(extract_cmd);

  // ---- build ----
  auto* build_cmd = app.add_subcommand("build", "document terms -> graph");
  std::string b_terms, b_graph_out;
  std::size_t b_min_kw = 100;
  build_cmd->add_option("--terms", b_terms, "training terms file")->required();
  build_cmd->add_option("--graph-out", b_graph_out, "graph snapshot path")->required();
  build_cmd->add_option("--min-keyword-count", b_min_kw,
                        "keep keywords appearing in more than this many documents")
      ->default_val(100);

  // ---- predict ----
  auto* predict_cmd = app.add_subcommand("predict", "graph -> ranked links");
  std::string p_graph_in, p_out = "predictions.csv", p_method = "user-mp";
  std::size_t p_top = 100;
  ModelConfig p_model;
  predict_cmd->add_option("--graph-in", p_graph_in, "graph snapshot")->required();
  predict_cmd->add_option("--method", p_method, "scoring method")
      ->check(CLI::IsMember(method_names()));
  predict_cmd->add_option("--top", p_top, "ranked links to write")->default_val(100);
  predict_cmd->add_option("--out", p_out, "output CSV")->capture_default_str();
  predict_cmd->add_option("--seed", seed, "root seed");
  add_model_flags(predict_cmd, p_model);

  // ---- evaluate ----
  auto* eval_cmd = app.add_subcommand("evaluate", "temporal evaluation");
  std::string e_graph_in, e_test_terms, e_method = "user-mp", e_keyword, e_out_dir = ".";
  std::size_t e_max_n = 300, e_bootstrap = 1000;
  double e_ci_level = 0.98;
  ModelConfig e_model;
  eval_cmd->add_option("--graph-in", e_graph_in, "graph snapshot")->required();
  eval_cmd->add_option("--test-terms", e_test_terms, "test-period terms file")->required();
  eval_cmd->add_option("--method", e_method, "scoring method")
      ->check(CLI::IsMember(method_names()));
  eval_cmd->add_option("--keyword", e_keyword, "per-keyword ROC/AUROC for this stem");
  eval_cmd->add_option("--max-n", e_max_n, "GROC/precision depth")->default_val(300);
  eval_cmd->add_option("--ci-level", e_ci_level)->default_val(0.98);
  eval_cmd->add_option("--bootstrap", e_bootstrap)->default_val(1000);
  eval_cmd->add_option("--out-dir", e_out_dir, "directory for output CSVs")
      ->capture_default_str();
  eval_cmd->add_option("--seed", seed, "root seed");
  add_model_flags(eval_cmd, e_model);

  // ---- stats ----
  auto* stats_cmd = app.add_subcommand("stats", "distribution and graph reports");
  std::string s_terms, s_graph_in, s_test_terms, s_out_dir = ".";
  std::vector<std::string> s_keywords;
  stats_cmd->add_option("--terms", s_terms, "terms file for the appearance histogram")
      ->required();
  stats_cmd->add_option("--graph-in", s_graph_in, "graph snapshot to report on");
  stats_cmd->add_option("--test-terms", s_test_terms,
                        "test terms for per-keyword candidate/positive counts");
  stats_cmd->add_option("--keyword", s_keywords, "keyword(s) to report counts for");
  stats_cmd->add_option("--out-dir", s_out_dir)->capture_default_str();

  // ---- pipeline ----
  auto* pipe_cmd = app.add_subcommand("pipeline", "full deterministic run");
  RunConfig run_cfg;
  CommonExtraction pipe_common;
  std::string pipe_method = "user-mp";
  int tr_first = 2004, tr_last = 2012, te_first = 2013, te_last = 2016;
  pipe_cmd->add_option("--out", run_cfg.out_dir, "output directory")->required();
  pipe_cmd->add_option("--corpus", run_cfg.corpus_path,
                       "existing corpus (omit to synthesize)");
  pipe_cmd->add_option("--train-from", tr_first)->default_val(2004);
  pipe_cmd->add_option("--train-to", tr_last)->default_val(2012);
  pipe_cmd->add_option("--test-from", te_first)->default_val(2013);
  pipe_cmd->add_option("--test-to", te_last)->default_val(2016);
  pipe_cmd->add_option("--n-matter", run_cfg.synth.n_matter)->default_val(300);
  pipe_cmd->add_option("--n-keywords", run_cfg.synth.n_keywords)->default_val(150);
  pipe_cmd->add_option("--n-docs-train", run_cfg.synth.n_docs_train)->default_val(4000);
  pipe_cmd->add_option("--n-docs-test", run_cfg.synth.n_docs_test)->default_val(1200);
  pipe_cmd->add_option("--zipf-exponent", run_cfg.synth.zipf_exponent)->default_val(2.0);
  pipe_cmd->add_option("--n-groups", run_cfg.synth.n_latent_groups)->default_val(6);
  pipe_cmd->add_option("--affinity", run_cfg.synth.within_group_affinity)->default_val(0.8);
  pipe_cmd->add_option("--min-keyword-count", run_cfg.min_keyword_count)->default_val(100);
  pipe_cmd->add_option("--method", pipe_method, "scoring method")
      ->check(CLI::IsMember(method_names()));
  pipe_cmd->add_option("--keyword", run_cfg.keyword, "per-keyword report for this stem");
  pipe_cmd->add_option("--top", run_cfg.top_n)->default_val(100);
  pipe_cmd->add_option("--max-n", run_cfg.max_n)->default_val(300);
  pipe_cmd->add_option("--ci-level", run_cfg.ci_level)->default_val(0.98);
  pipe_cmd->add_option("--bootstrap", run_cfg.bootstrap_reps)->default_val(1000);
  pipe_cmd->add_option("--seed", seed, "root seed");
  add_model_flags(pipe_cmd, run_cfg.model);
  pipe_common.add_flags(pipe_cmd);

  // every subcommand accepts a flat key=value config file; command-line
  // flags override file values and unknown keys are rejected
  std::string config_path;
  for (CLI::App* sub : app.get_subcommands(nullptr))
    sub->add_option("--config", config_path, "flat key=value config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (!config_path.empty())
    for (CLI::App* sub : app.get_subcommands())
      apply_config_file(sub, config_path);

  if (synth_cmd->parsed()) {
    SynthConfig cfg = synth_cfg;
    cfg.seed = derive_seed(seed, "synth");
    SynthCorpus corpus = generate(cfg);
    std::filesystem::create_directories(synth_out);
    std::filesystem::path dir(synth_out);
    write_corpus(dir / "train.jsonl", corpus.train);
    write_corpus(dir / "test.jsonl", corpus.test);
    write_truth_csv(dir / "truth.csv", corpus.truth);
    std::cout << "wrote " << corpus.train.size() << " train and " << corpus.test.size()
              << " test records, " << corpus.truth.size() << " planted links to "
              << synth_out << "\n";
    return 0;
  }

  if (extract_cmd->parsed()) {
    ElementTable table = ex_common.table();
    auto records = load_corpus(ex_corpus);
    CorpusStats stats;
    bool frozen = !ex_stats_in.empty();
    if (frozen)
      stats = load_stats(ex_stats_in);
    else
      stats = compute_corpus_stats(records, table);
    auto terms = extract_all_document_terms(records, table, stats, ex_common.top_k, frozen);
    write_terms(ex_out, terms);
    if (!ex_stats_out.empty()) write_stats(ex_stats_out, stats);
    std::cout << "extracted terms for " << terms.size() << " documents\n";
    return 0;
  }

  if (build_cmd->parsed()) {
    auto terms = load_terms(b_terms);
    BipartiteGraph g = filter_graph(build_graph(terms), terms, b_min_kw);
    write_graph(b_graph_out, g);
    std::cout << "graph: " << g.n_matter() << " x " << g.n_keywords() << ", " << g.nnz()
              << " links\n";
    return 0;
  }

  if (predict_cmd->parsed()) {
    BipartiteGraph g = load_graph(p_graph_in);
    p_model.seed = derive_seed(seed, "model");
    RankedList ranked = rank_candidates(g, parse_method(p_method), p_model);
    write_ranked_csv(p_out, g, ranked, p_top);
    std::cout << "ranked " << ranked.links.size() << " candidate links, wrote top "
              << std::min<std::size_t>(p_top, ranked.links.size()) << " to " << p_out
              << "\n";
    return 0;
  }

  if (eval_cmd->parsed()) {
    BipartiteGraph g = load_graph(e_graph_in);
    auto test_terms = load_terms(e_test_terms);
    LinkSet truth = new_links(g, test_terms);
    e_model.seed = derive_seed(seed, "model");
    Method method = parse_method(e_method);
    std::filesystem::create_directories(e_out_dir);
    std::filesystem::path dir(e_out_dir);

    RankedList ranked = rank_candidates(g, method, e_model);
    write_groc_csv(dir / "groc.csv", groc_curve(ranked, truth, e_max_n));
    write_precision_csv(dir / "precision.csv", precision_curve(ranked, truth, e_max_n));
    std::cout << "new links in test period: " << truth.size() << "\n";
    if (!e_keyword.empty()) {
      AurocReport report = keyword_subgraph_eval(g, truth, e_keyword, method, e_model,
                                                 e_ci_level, e_bootstrap);
      write_auroc_txt(dir / "auroc.txt", report);
      LinkScorer scorer(g, e_model);
      SplitRng rng(derive_seed(e_model.seed, "random-scorer"));
      std::vector<double> scores;
      std::vector<int> labels;
      keyword_column_scores(scorer, truth, g.keyword_index.at(e_keyword), method, rng,
                            scores, labels);
      write_roc_csv(dir / "roc.csv", roc_curve(scores, labels));
      std::cout << "keyword \"" << e_keyword << "\": AUROC "
                << format_double(report.value) << " [" << format_double(report.ci_low)
                << ", " << format_double(report.ci_high) << "], " << report.n_pos
                << " positives / " << report.n_neg << " negatives\n";
    }
    return 0;
  }

  if (stats_cmd->parsed()) {
    auto terms = load_terms(s_terms);
    AppearanceDistribution dist = appearance_distribution(terms);
    std::filesystem::create_directories(s_out_dir);
    std::filesystem::path dir(s_out_dir);
    write_histogram_csv(dir / "appearance_hist.csv", dist);
    write_loglog_csv(dir / "cumulative_loglog.csv", dist);
    std::cout << "log-log cumulative slope: " << format_double(dist.slope) << "\n";
    if (!s_graph_in.empty()) {
      BipartiteGraph g = load_graph(s_graph_in);
      std::cout << "R: " << g.n_matter() << " x " << g.n_keywords() << " (" << g.nnz()
                << " non-zeros, " << (g.n_matter() * g.n_keywords() - g.nnz())
                << " candidates)\n";
      LinkSet truth;
      if (!s_test_terms.empty()) truth = new_links(g, load_terms(s_test_terms));
      for (const auto& kw : s_keywords) {
        auto it = g.keyword_index.find(kw);
        if (it == g.keyword_index.end())
          throw DataError("keyword not in vocabulary: \"" + kw + "\"");
        NodeId w = it->second;
        std::size_t zeros = g.n_matter() - keyword_degree(g, w);
        std::size_t positives = 0;
        for (const auto& [v, tw] : truth.pairs) positives += (tw == w) ? 1 : 0;
        std::cout << "keyword \"" << kw << "\": " << zeros << " candidate links";
        if (!s_test_terms.empty()) std::cout << ", " << positives << " new in test";
        std::cout << "\n";
      }
    }
    return 0;
  }

  if (pipe_cmd->parsed()) {
    run_cfg.train_range = {tr_first, tr_last};
    run_cfg.test_range = {te_first, te_last};
    run_cfg.method = parse_method(pipe_method);
    run_cfg.seed = seed;
    run_cfg.elements_path = pipe_common.elements_path;
    run_cfg.materials_path = pipe_common.materials_path;
    run_cfg.top_k_keywords = pipe_common.top_k;
    run_cfg.synth.seed = seed;
    PipelineResult result = run_pipeline(run_cfg);
    std::cout << "train/test/dropped: " << result.n_train << "/" << result.n_test << "/"
              << result.n_dropped << "\n"
              << "R: " << result.n_matter << " x " << result.n_keywords << " ("
              << result.nnz << " non-zeros, " << result.n_candidates << " candidates)\n"
              << "new links in test period: " << result.n_new_links << "\n"
              << "manifest: " << result.manifest_path.string() << "\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hypolink::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const hypolink::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
