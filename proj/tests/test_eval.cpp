#include <catch2/catch_amalgamated.hpp>

#include "hypolink/eval.hpp"

#include <cmath>

#include "hypolink/rng.hpp"
#include "support/oracle.hpp"

using namespace hypolink;
using Catch::Matchers::WithinAbs;

namespace {

RankedList ranked_of(std::vector<std::pair<NodeId, NodeId>> order) {
  RankedList out;
  double score = static_cast<double>(order.size());
  for (auto [v, w] : order) out.links.push_back({v, w, score--});
  return out;
}

LinkSet links_of(std::vector<std::pair<NodeId, NodeId>> pairs) {
  LinkSet out;
  std::sort(pairs.begin(), pairs.end());
  out.pairs = std::move(pairs);
  return out;
}

BipartiteGraph make_graph(const oracle::Matrix& r) {
  BipartiteGraph g;
  for (std::size_t v = 0; v < r.size(); ++v) {
    g.matter_names.push_back("m" + std::to_string(v + 1));
    g.matter_index.emplace(g.matter_names.back(), static_cast<NodeId>(v));
  }
  for (std::size_t w = 0; w < r[0].size(); ++w) {
    g.keyword_names.push_back("k" + std::to_string(w + 1));
    g.keyword_index.emplace(g.keyword_names.back(), static_cast<NodeId>(w));
  }
  g.rows.assign(r.size(), {});
  for (std::size_t v = 0; v < r.size(); ++v)
    for (std::size_t w = 0; w < r[0].size(); ++w)
      if (r[v][w] != 0)
        g.rows[v].emplace_back(static_cast<NodeId>(w),
                               static_cast<std::uint32_t>(r[v][w]));
  detail::finalize_columns(g);
  return g;
}

}  // namespace

TEST_CASE("groc counts hits along the ranking") {
  auto ranked = ranked_of({{0, 0}, {0, 1}, {1, 0}});
  auto truth = links_of({{0, 0}, {1, 0}});
  auto curve = groc_curve(ranked, truth, 10);
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0].second == 1.0);
  CHECK(curve.points[1].second == 1.0);
  CHECK(curve.points[2].second == 2.0);

  // empty truth: flat zero
  auto zero = groc_curve(ranked, links_of({}), 10);
  for (const auto& [n, y] : zero.points) CHECK(y == 0.0);

  // truth covering everything: the diagonal
  auto diag = groc_curve(ranked, links_of({{0, 0}, {0, 1}, {1, 0}}), 10);
  for (const auto& [n, y] : diag.points) CHECK(y == n);

  CHECK_THROWS_AS(groc_curve(RankedList{}, truth, 10), DataError);
}

TEST_CASE("groc increments are zero or one and the curve respects max_n") {
  SplitRng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<NodeId, NodeId>> order;
    for (NodeId i = 0; i < 40; ++i) order.push_back({i, i});
    std::vector<std::pair<NodeId, NodeId>> truth_pairs;
    for (NodeId i = 0; i < 40; ++i)
      if (rng.bernoulli(0.3)) truth_pairs.push_back({i, i});
    auto curve = groc_curve(ranked_of(order), links_of(truth_pairs), 25);
    CHECK(curve.points.size() == 25);
    double prev = 0;
    for (const auto& [n, y] : curve.points) {
      double inc = y - prev;
      CHECK((inc == 0.0 || inc == 1.0));
      CHECK(y <= n);
      prev = y;
    }
  }
}

TEST_CASE("precision is hits over n") {
  // 10 hits inside the first 100 recommendations -> precision(100) = 0.10
  std::vector<std::pair<NodeId, NodeId>> order;
  std::vector<std::pair<NodeId, NodeId>> truth_pairs;
  for (NodeId i = 0; i < 100; ++i) {
    order.push_back({i, 0});
    if (i % 10 == 0) truth_pairs.push_back({i, 0});
  }
  auto curve = precision_curve(ranked_of(order), links_of(truth_pairs), 100);
  CHECK_THAT(curve.points.back().second, WithinAbs(0.10, 1e-12));
  CHECK_THAT(curve.points.front().second, WithinAbs(1.0, 1e-12));  // first is a hit

  // identity: precision(n) * n = groc(n) for all n
  auto groc = groc_curve(ranked_of(order), links_of(truth_pairs), 100);
  for (std::size_t i = 0; i < curve.points.size(); ++i)
    CHECK_THAT(curve.points[i].second * curve.points[i].first,
               WithinAbs(groc.points[i].second, 1e-9));
}

TEST_CASE("roc hand sweep") {
  std::vector<double> scores = {0.9, 0.8, 0.7, 0.6};
  std::vector<int> labels = {1, 0, 1, 0};
  auto curve = roc_curve(scores, labels);
  std::vector<std::pair<double, double>> expect = {
      {0, 0}, {0, 0.5}, {0.5, 0.5}, {0.5, 1.0}, {1.0, 1.0}};
  REQUIRE(curve.points.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK_THAT(curve.points[i].first, WithinAbs(expect[i].first, 1e-12));
    CHECK_THAT(curve.points[i].second, WithinAbs(expect[i].second, 1e-12));
  }

  // perfect separation passes through (0, 1)
  auto perfect = roc_curve({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0});
  bool through_corner = false;
  for (const auto& [x, y] : perfect.points) through_corner |= (x == 0.0 && y == 1.0);
  CHECK(through_corner);

  // constant scores: one diagonal block
  auto flat = roc_curve({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0});
  REQUIRE(flat.points.size() == 2);
  CHECK(flat.points.back() == std::make_pair(1.0, 1.0));

  CHECK_THROWS_AS(roc_curve({0.5, 0.4}, {1, 1}), DataError);
  CHECK_THROWS_AS(roc_curve({0.5, 0.4}, {0, 0}), DataError);
}

TEST_CASE("auroc hand value and degenerate cases") {
  CHECK_THAT(auroc({0.9, 0.8, 0.7, 0.6}, {1, 0, 1, 0}), WithinAbs(0.75, 1e-15));
  CHECK_THAT(auroc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}), WithinAbs(1.0, 1e-15));
  CHECK_THAT(auroc({0.5, 0.5}, {1, 0}), WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(auroc({0.5, 0.4}, {1, 1}), DataError);
}

TEST_CASE("auroc equals the trapezoidal area under the roc curve") {
  SplitRng rng(999);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 10 + rng.uniform_index(200);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (auto& s : scores) s = rng.bernoulli(0.2) ? 0.5 : rng.uniform();  // some ties
    bool has_pos = false, has_neg = false;
    for (auto& l : labels) {
      l = rng.bernoulli(0.4) ? 1 : 0;
      (l ? has_pos : has_neg) = true;
    }
    if (!has_pos) labels[0] = 1;
    if (!has_neg) labels[1] = 0;
    double mw = auroc(scores, labels);
    double trap = trapezoid_area(roc_curve(scores, labels));
    CHECK_THAT(mw, WithinAbs(trap, 1e-12));
  }
}

TEST_CASE("auroc symmetry and rank invariance") {
  SplitRng rng(1001);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 8 + rng.uniform_index(60);
    std::vector<double> scores(n);
    std::vector<int> labels(n), flipped(n);
    for (auto& s : scores) s = rng.uniform();
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = rng.bernoulli(0.5) ? 1 : 0;
      (labels[i] ? has_pos : has_neg) = true;
    }
    if (!has_pos) labels[0] = 1;
    if (!has_neg) labels[1] = 0;
    for (std::size_t i = 0; i < n; ++i) flipped[i] = 1 - labels[i];
    CHECK_THAT(auroc(scores, labels) + auroc(scores, flipped), WithinAbs(1.0, 1e-12));

    // strictly increasing transforms leave the ranking untouched
    std::vector<double> transformed(n);
    for (std::size_t i = 0; i < n; ++i) transformed[i] = std::exp(3.0 * scores[i]) + 7.0;
    CHECK_THAT(auroc(transformed, labels), WithinAbs(auroc(scores, labels), 1e-12));
  }
}

TEST_CASE("random scores hover at one half") {
  SplitRng rng(2024);
  double sum = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> scores(60);
    std::vector<int> labels(60);
    for (auto& s : scores) s = rng.uniform();
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i < 20 ? 1 : 0;
    sum += auroc(scores, labels);
  }
  double mean = sum / trials;
  CHECK(mean > 0.45);
  CHECK(mean < 0.55);
}

TEST_CASE("bootstrap interval basics") {
  // perfect separation leaves no resampling variance
  std::vector<double> scores = {0.9, 0.8, 0.2, 0.1};
  std::vector<int> labels = {1, 1, 0, 0};
  auto report = auroc_ci(scores, labels, 0.98, 200, 1);
  CHECK(report.value == 1.0);
  CHECK(report.ci_low == 1.0);
  CHECK(report.ci_high == 1.0);
  CHECK(report.n_pos == 2);
  CHECK(report.n_neg == 2);

  // same seed, same interval
  SplitRng rng(50);
  std::vector<double> s2(80);
  std::vector<int> l2(80);
  for (std::size_t i = 0; i < s2.size(); ++i) {
    l2[i] = i < 30 ? 1 : 0;
    s2[i] = rng.uniform() + (l2[i] ? 0.3 : 0.0);
  }
  auto a = auroc_ci(s2, l2, 0.98, 500, 7);
  auto b = auroc_ci(s2, l2, 0.98, 500, 7);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_high == b.ci_high);
  CHECK(a.ci_low <= a.value);
  CHECK(a.value <= a.ci_high);

  CHECK_THROWS_AS(auroc_ci(s2, l2, 1.5, 500, 7), UsageError);
  CHECK_THROWS_AS(auroc_ci(s2, l2, 0.98, 10, 7), UsageError);
}

TEST_CASE("bootstrap interval covers a constructed true auroc") {
  // negatives U[0,1], positives U[c, 1+c] with c = 1 - 1/sqrt(2) gives
  // P(pos > neg) = 1 - (1-c)^2/2 = 0.75 exactly
  const double c = 1.0 - 1.0 / std::sqrt(2.0);
  int covered = 0;
  const int runs = 100;
  for (int run = 0; run < runs; ++run) {
    SplitRng rng(3000 + run);
    std::vector<double> scores;
    std::vector<int> labels;
    for (int i = 0; i < 1000; ++i) {
      scores.push_back(rng.uniform());
      labels.push_back(0);
      scores.push_back(c + rng.uniform());
      labels.push_back(1);
    }
    auto report = auroc_ci(scores, labels, 0.98, 400, 42 + run);
    if (report.ci_low <= 0.75 && 0.75 <= report.ci_high) ++covered;
  }
  CHECK(covered >= 90);  // 98% nominal coverage, generous margin
}

TEST_CASE("keyword subgraph evaluation") {
  // column k3 of the fixture has two zero entries (m1 and m3... m3 has k3)
  auto g = make_graph({{2, 1, 0}, {1, 0, 1}, {0, 2, 1}, {1, 1, 0}});
  ModelConfig cfg;
  cfg.m = 2;
  cfg.seed = 4;

  // truth: the m1-k3 link forms later, m4-k3 does not
  auto truth = links_of({{0, 2}});
  auto report = keyword_subgraph_eval(g, truth, "k3", Method::kUserBased, cfg, 0.98, 200);
  CHECK(report.n_pos == 1);
  CHECK(report.n_neg == 1);

  CHECK_THROWS_AS(
      keyword_subgraph_eval(g, truth, "absent", Method::kUserBased, cfg, 0.98, 200),
      DataError);

  // no positives among the candidates
  auto empty_truth = links_of({});
  CHECK_THROWS_AS(
      keyword_subgraph_eval(g, empty_truth, "k3", Method::kUserBased, cfg, 0.98, 200),
      DataError);

  // truth covering every candidate leaves no negatives
  auto all_truth = links_of({{0, 2}, {3, 2}});
  CHECK_THROWS_AS(
      keyword_subgraph_eval(g, all_truth, "k3", Method::kUserBased, cfg, 0.98, 200),
      DataError);

  // the random method has no discrimination: repeated seeds stay near 0.5
  auto big = make_graph([] {
    oracle::Matrix r(30, std::vector<double>(8, 0));
    SplitRng rng(8);
    for (auto& row : r)
      for (auto& x : row) x = rng.bernoulli(0.5) ? 0.0 : 1.0 + static_cast<double>(rng.uniform_index(3));
    for (std::size_t v = 0; v < r.size(); ++v) r[v][v % 8] = std::max(r[v][v % 8], 1.0);
    for (std::size_t w = 0; w < 8; ++w) r[w][w] = std::max(r[w][w], 1.0);
    return r;
  }());
  std::vector<NodeId> candidates;
  for (NodeId v = 0; v < big.n_matter(); ++v)
    if (big.at(v, 3) == 0) candidates.push_back(v);
  REQUIRE(candidates.size() >= 4);
  std::vector<std::pair<NodeId, NodeId>> truth_pairs;
  for (std::size_t i = 0; i < candidates.size(); i += 3)
    truth_pairs.push_back({candidates[i], 3});
  REQUIRE(truth_pairs.size() < candidates.size());
  auto big_truth = links_of(truth_pairs);
  double sum = 0;
  const int seeds = 40;
  for (int s = 0; s < seeds; ++s) {
    ModelConfig rc;
    rc.seed = 100 + s;
    sum += keyword_subgraph_eval(big, big_truth, "k4", Method::kRandom, rc, 0.98, 100).value;
  }
  double mean = sum / seeds;
  CHECK(mean > 0.35);
  CHECK(mean < 0.65);
}
