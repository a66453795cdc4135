#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "hypolink/error.hpp"
#include "hypolink/graph.hpp"
#include "hypolink/predict.hpp"
#include "hypolink/rng.hpp"

namespace hypolink {

enum class CurveKind { kGroc, kPrecision, kRoc };

struct EvalCurve {
  CurveKind kind = CurveKind::kGroc;
  std::vector<std::pair<double, double>> points;
};

/// Revised GROC: cumulative hit count against the number of globally ranked
/// recommendations, y(n) = |top-n ranked ∩ truth| for n = 1..max_n.
inline EvalCurve groc_curve(const RankedList& ranked, const LinkSet& truth,
                            std::size_t max_n) {
  if (ranked.links.empty()) throw DataError("GROC of an empty ranking");
  if (max_n < 1) throw UsageError("max_n must be at least 1");
  EvalCurve curve;
  curve.kind = CurveKind::kGroc;
  std::size_t n = std::min(max_n, ranked.links.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const ScoredLink& link = ranked.links[i];
    if (truth.contains(link.matter, link.keyword)) ++hits;
    curve.points.emplace_back(static_cast<double>(i + 1), static_cast<double>(hits));
  }
  return curve;
}

/// Precision at n: hits(n) / n.
inline EvalCurve precision_curve(const RankedList& ranked, const LinkSet& truth,
                                 std::size_t max_n) {
  EvalCurve groc = groc_curve(ranked, truth, max_n);
  EvalCurve curve;
  curve.kind = CurveKind::kPrecision;
  for (const auto& [n, hits] : groc.points)
    curve.points.emplace_back(n, hits / n);
  return curve;
}

namespace detail {

inline void check_labels(const std::vector<double>& scores,
                         const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("scores and labels differ in length");
  std::size_t pos = 0;
  for (int l : labels) pos += static_cast<std::size_t>(l != 0);
  if (pos == 0) throw DataError("no positive labels");
  if (pos == labels.size()) throw DataError("no negative labels");
}

}  // namespace detail

/// Standard ROC by descending-score sweep. Equal scores advance as one
/// block, which draws the tie region as a diagonal segment and keeps the
/// curve independent of input order.
inline EvalCurve roc_curve(const std::vector<double>& scores,
                           const std::vector<int>& labels) {
  detail::check_labels(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::size_t n_pos = 0;
  for (int l : labels) n_pos += static_cast<std::size_t>(l != 0);
  std::size_t n_neg = labels.size() - n_pos;

  EvalCurve curve;
  curve.kind = CurveKind::kRoc;
  curve.points.emplace_back(0.0, 0.0);
  std::size_t tp = 0, fp = 0, i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]] != 0)
        ++tp;
      else
        ++fp;
      ++j;
    }
    curve.points.emplace_back(static_cast<double>(fp) / static_cast<double>(n_neg),
                              static_cast<double>(tp) / static_cast<double>(n_pos));
    i = j;
  }
  return curve;
}

/// AUROC as the Mann-Whitney statistic: the probability that a random
/// positive outranks a random negative, ties credited one half. Computed
/// through tie-averaged ranks; equals the trapezoidal area under roc_curve.
inline double auroc(const std::vector<double>& scores, const std::vector<int>& labels) {
  detail::check_labels(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double rank_sum_pos = 0.0;
  std::size_t n_pos = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0) {
        rank_sum_pos += avg_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  std::size_t n_neg = labels.size() - n_pos;
  double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

/// Trapezoidal area under an ROC curve.
inline double trapezoid_area(const EvalCurve& roc) {
  double area = 0.0;
  for (std::size_t i = 1; i < roc.points.size(); ++i) {
    const auto& [x0, y0] = roc.points[i - 1];
    const auto& [x1, y1] = roc.points[i];
    area += (x1 - x0) * 0.5 * (y0 + y1);
  }
  return area;
}

struct AurocReport {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

/// Percentile bootstrap for the AUROC, resampling positives and negatives
/// separately so every replicate keeps the original class sizes.
inline AurocReport auroc_ci(const std::vector<double>& scores,
                            const std::vector<int>& labels, double level = 0.98,
                            std::size_t reps = 1000, std::uint64_t seed = 0) {
  detail::check_labels(scores, labels);
  if (level <= 0.0 || level >= 1.0) throw UsageError("confidence level must be in (0,1)");
  if (reps < 100) throw UsageError("bootstrap needs at least 100 replicates");

  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < scores.size(); ++i)
    (labels[i] != 0 ? pos : neg).push_back(scores[i]);

  AurocReport report;
  report.value = auroc(scores, labels);
  report.n_pos = pos.size();
  report.n_neg = neg.size();

  SplitRng rng(derive_seed(seed, "auroc-bootstrap"));
  std::vector<double> boot(reps);
  std::vector<double> sample_scores(scores.size());
  std::vector<int> sample_labels(scores.size());
  for (std::size_t i = 0; i < pos.size(); ++i) sample_labels[i] = 1;
  for (std::size_t i = pos.size(); i < scores.size(); ++i) sample_labels[i] = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t i = 0; i < pos.size(); ++i)
      sample_scores[i] = pos[rng.uniform_index(pos.size())];
    for (std::size_t i = 0; i < neg.size(); ++i)
      sample_scores[pos.size() + i] = neg[rng.uniform_index(neg.size())];
    boot[r] = auroc(sample_scores, sample_labels);
  }
  std::sort(boot.begin(), boot.end());
  auto quantile = [&](double q) {
    double pos_idx = q * static_cast<double>(reps - 1);
    std::size_t lo = static_cast<std::size_t>(pos_idx);
    std::size_t hi = std::min(lo + 1, reps - 1);
    double frac = pos_idx - static_cast<double>(lo);
    return boot[lo] * (1.0 - frac) + boot[hi] * frac;
  };
  report.ci_low = quantile((1.0 - level) / 2.0);
  report.ci_high = quantile(1.0 - (1.0 - level) / 2.0);
  return report;
}

/// Scores the zero entries of one keyword column with the given method and
/// labels each by membership in the truth set. The scorer is shared so a
/// caller sweeping many keywords pays for similarities and MF training once.
inline void keyword_column_scores(LinkScorer& scorer, const LinkSet& truth, NodeId w,
                                  Method method, SplitRng& random_stream,
                                  std::vector<double>& scores, std::vector<int>& labels) {
  const BipartiteGraph& g = scorer.graph();
  g.check_keyword(w);
  scores.clear();
  labels.clear();
  for (NodeId v = 0; v < g.n_matter(); ++v) {
    if (g.at(v, w) != 0) continue;
    scores.push_back(score_link(scorer, random_stream, method, v, w));
    labels.push_back(truth.contains(v, w) ? 1 : 0);
  }
}

/// Per-keyword evaluation: candidates are the matter with no training link
/// to the keyword, positives the candidates that form a link in the test
/// period, scores from the chosen method.
inline AurocReport keyword_subgraph_eval(const BipartiteGraph& g, const LinkSet& truth,
                                         std::string_view keyword, Method method,
                                         const ModelConfig& config, double level = 0.98,
                                         std::size_t reps = 1000) {
  auto it = g.keyword_index.find(std::string(keyword));
  if (it == g.keyword_index.end())
    throw DataError("keyword not in vocabulary: \"" + std::string(keyword) + "\"");

  LinkScorer scorer(g, config);
  SplitRng rng(derive_seed(config.seed, "random-scorer"));
  std::vector<double> scores;
  std::vector<int> labels;
  keyword_column_scores(scorer, truth, it->second, method, rng, scores, labels);
  if (scores.empty())
    throw DataError("keyword \"" + std::string(keyword) + "\" has no candidate links");
  return auroc_ci(scores, labels, level, reps, config.seed);
}

}  // namespace hypolink
