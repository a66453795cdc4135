#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hypolink/error.hpp"
#include "hypolink/graph.hpp"
#include "hypolink/mf.hpp"
#include "hypolink/rng.hpp"

namespace hypolink {

enum class Method {
  kUserBased,
  kUserBasedMp,
  kItemBased,
  kItemBasedMp,
  kMatrixFactorization,
  kMfMp,
  kPreferentialAttachment,
  kRandom
};

inline const std::vector<std::pair<std::string, Method>>& method_table() {
  static const std::vector<std::pair<std::string, Method>> kTable = {
      {"user", Method::kUserBased},        {"user-mp", Method::kUserBasedMp},
      {"item", Method::kItemBased},        {"item-mp", Method::kItemBasedMp},
      {"mf", Method::kMatrixFactorization}, {"mfmp", Method::kMfMp},
      {"pa", Method::kPreferentialAttachment}, {"random", Method::kRandom}};
  return kTable;
}

inline std::vector<std::string> method_names() {
  std::vector<std::string> out;
  for (const auto& [name, m] : method_table()) out.push_back(name);
  return out;
}

inline std::string method_name(Method m) {
  for (const auto& [name, method] : method_table())
    if (method == m) return name;
  return "?";
}

inline Method parse_method(std::string_view name) {
  for (const auto& [n, m] : method_table())
    if (n == name) return m;
  std::string valid;
  for (const auto& [n, m] : method_table()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw UsageError("unknown method \"" + std::string(name) + "\" (valid: " + valid + ")");
}

/// Parameters shared by all prediction methods. Defaults follow the
/// benchmark settings: m=10, alpha=2.4, sigma=0.01, K=97.
struct ModelConfig {
  std::size_t m = 10;           // neighborhood size
  double alpha = 2.4;           // user-based MP shift
  double sigma = 0.01;          // item-based MP shift
  std::size_t k_latent = 97;    // MF latent dimension
  double mf_learning_rate = 0.01;
  double mf_regularization = 0.02;
  std::size_t mf_epochs = 200;
  std::uint64_t seed = 0;
  bool auto_shift = false;      // derive the MP shift from -min(s)+0.01

  void validate() const {
    if (m < 1) throw UsageError("neighborhood size m must be at least 1");
    if (k_latent < 1) throw UsageError("latent dimension K must be at least 1");
    if (mf_learning_rate <= 0.0) throw UsageError("learning rate must be positive");
    if (mf_regularization < 0.0) throw UsageError("regularization must be non-negative");
    if (mf_epochs < 1) throw UsageError("epoch count must be at least 1");
  }

  MfTrainConfig mf_config() const {
    return MfTrainConfig{k_latent, mf_learning_rate, mf_regularization, mf_epochs, seed};
  }
};

enum class Axis { kMatterRows, kKeywordColumns };

namespace detail {

inline double sparse_dot(const SparseVec& a, const SparseVec& b) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first)
      ++i;
    else if (b[j].first < a[i].first)
      ++j;
    else {
      s += static_cast<double>(a[i].second) * static_cast<double>(b[j].second);
      ++i;
      ++j;
    }
  }
  return s;
}

inline double sparse_norm(const SparseVec& a) {
  double s = 0.0;
  for (const auto& [idx, c] : a) s += static_cast<double>(c) * static_cast<double>(c);
  return std::sqrt(s);
}

}  // namespace detail

/// Cosine of two non-negative count vectors; lands in [0, 1].
inline double cosine_similarity(const SparseVec& a, const SparseVec& b) {
  double na = detail::sparse_norm(a);
  double nb = detail::sparse_norm(b);
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("cosine similarity of a zero vector");
  return detail::sparse_dot(a, b) / (na * nb);
}

/// Mean of the strictly positive entries of row v.
inline double row_mean_nonzero(const BipartiteGraph& g, NodeId v) {
  g.check_matter(v);
  const SparseVec& row = g.rows[v];
  if (row.empty()) throw std::invalid_argument("row mean of an all-zero row");
  double s = 0.0;
  for (const auto& [w, c] : row) s += static_cast<double>(c);
  return s / static_cast<double>(row.size());
}

/// Shared scoring engine. Similarities, neighbor lists, and MF factors are
/// cached against the (immutable) graph, so ranking the full candidate set
/// costs one similarity pass per distinct target instead of one per pair.
class LinkScorer {
 public:
  LinkScorer(const BipartiteGraph& g, ModelConfig cfg) : g_(g), cfg_(cfg) {
    cfg_.validate();
    row_means_.resize(g.n_matter());
    log_pops_.resize(g.n_matter());
    for (NodeId v = 0; v < g.n_matter(); ++v) {
      row_means_[v] = g.rows[v].empty() ? 0.0 : row_mean_nonzero(g, v);
      log_pops_[v] = std::log(static_cast<double>(matter_popularity(g, v)));
    }
    row_norms_.resize(g.n_matter());
    for (NodeId v = 0; v < g.n_matter(); ++v) row_norms_[v] = detail::sparse_norm(g.rows[v]);
    col_norms_.resize(g.n_keywords());
    for (NodeId w = 0; w < g.n_keywords(); ++w) col_norms_[w] = detail::sparse_norm(g.cols[w]);
  }

  const BipartiteGraph& graph() const { return g_; }
  const ModelConfig& config() const { return cfg_; }

  double row_mean(NodeId v) const { return row_means_[v]; }
  double log_popularity(NodeId v) const { return log_pops_[v]; }

  /// Top-m peers of the target along the given axis, ties broken by
  /// ascending id; fewer than m peers means all of them.
  const std::vector<std::pair<NodeId, double>>& neighbors(NodeId target, Axis axis) {
    auto& cache = axis == Axis::kMatterRows ? row_neighbors_ : col_neighbors_;
    auto it = cache.find(target);
    if (it != cache.end()) return it->second;
    return cache.emplace(target, compute_neighbors(target, axis)).first->second;
  }

  /// User-based collaborative filtering over the top-m similar matter rows.
  double user_based(NodeId v, NodeId w) { return user_core(v, w, false); }

  /// The user-based prediction with the target itself added to the
  /// neighborhood; the self term carries the negative popularity effect.
  double user_based_self(NodeId v, NodeId w) { return user_core(v, w, true); }

  /// User-based MP: the self-term prediction scaled by log popularity.
  double user_based_mp(NodeId v, NodeId w) {
    return log_pops_[v] * (user_based_self(v, w) + cfg_.alpha);
  }

  /// Item-based collaborative filtering over keyword columns.
  double item_based(NodeId v, NodeId w) { return item_core(v, w, false); }

  /// The item-based prediction with the keyword itself in the neighborhood.
  double item_based_self(NodeId v, NodeId w) { return item_core(v, w, true); }

  /// Item-based MP: the self-term prediction scaled by log popularity.
  double item_based_mp(NodeId v, NodeId w) {
    return log_pops_[v] * (item_based_self(v, w) + cfg_.sigma);
  }

  std::uint64_t preferential_attachment(NodeId v, NodeId w) const {
    return static_cast<std::uint64_t>(matter_degree(g_, v)) *
           static_cast<std::uint64_t>(keyword_degree(g_, w));
  }

  double mf(NodeId v, NodeId w) { return score_mf(factors(), v, w); }

  double mfmp(NodeId v, NodeId w) { return log_pops_[v] * score_mf(factors(), v, w); }

  const FactorPair& factors() {
    if (!factors_) factors_ = train_mf(g_, cfg_.mf_config());
    return *factors_;
  }

 private:
  void check_candidate(NodeId v, NodeId w) const {
    g_.check_matter(v);
    g_.check_keyword(w);
    if (g_.at(v, w) != 0)
      throw std::invalid_argument("memory-based scorers only apply to zero entries");
  }

  std::vector<std::pair<NodeId, double>> compute_neighbors(NodeId target, Axis axis) {
    const bool rows = axis == Axis::kMatterRows;
    const auto& vecs = rows ? g_.rows : g_.cols;
    const auto& norms = rows ? row_norms_ : col_norms_;
    if (target >= vecs.size()) throw std::out_of_range("similarity target out of range");
    if (norms[target] == 0.0)
      throw std::invalid_argument("cosine similarity of a zero vector");
    std::vector<std::pair<NodeId, double>> sims;
    sims.reserve(vecs.size() > 0 ? vecs.size() - 1 : 0);
    for (NodeId other = 0; other < vecs.size(); ++other) {
      if (other == target) continue;
      if (norms[other] == 0.0)
        throw std::invalid_argument("cosine similarity of a zero vector");
      double sim =
          detail::sparse_dot(vecs[target], vecs[other]) / (norms[target] * norms[other]);
      sims.emplace_back(other, sim);
    }
    std::size_t m = std::min<std::size_t>(cfg_.m, sims.size());
    std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(m),
                      sims.end(), [](const auto& a, const auto& b) {
                        if (a.second != b.second) return a.second > b.second;
                        return a.first < b.first;
                      });
    sims.resize(m);
    return sims;
  }

  double user_core(NodeId v, NodeId w, bool include_self) {
    check_candidate(v, w);
    double num = 0.0, den = 0.0;
    for (const auto& [u, sim] : neighbors(v, Axis::kMatterRows)) {
      num += (static_cast<double>(g_.at(u, w)) - row_means_[u]) * sim;
      den += std::abs(sim);
    }
    if (include_self) {
      num += (0.0 - row_means_[v]);  // r_vw is zero for a candidate
      den += 1.0;
    }
    if (den == 0.0) return row_means_[v];
    return row_means_[v] + num / den;
  }

  double item_core(NodeId v, NodeId w, bool include_self) {
    check_candidate(v, w);
    double num = 0.0, den = 0.0;
    for (const auto& [x, sim] : neighbors(w, Axis::kKeywordColumns)) {
      num += (static_cast<double>(g_.at(v, x)) - row_means_[v]) * sim;
      den += std::abs(sim);
    }
    if (include_self) {
      num += (0.0 - row_means_[v]);
      den += 1.0;
    }
    if (den == 0.0) return row_means_[v];
    return row_means_[v] + num / den;
  }

  const BipartiteGraph& g_;
  ModelConfig cfg_;
  std::vector<double> row_means_;
  std::vector<double> log_pops_;
  std::vector<double> row_norms_;
  std::vector<double> col_norms_;
  std::unordered_map<NodeId, std::vector<std::pair<NodeId, double>>> row_neighbors_;
  std::unordered_map<NodeId, std::vector<std::pair<NodeId, double>>> col_neighbors_;
  std::optional<FactorPair> factors_;
};

/// Top-m most similar peers of a node, excluding the node itself.
inline std::vector<NodeId> top_m_similar(const BipartiteGraph& g, NodeId target,
                                         std::size_t m, Axis axis) {
  ModelConfig cfg;
  cfg.m = std::max<std::size_t>(m, 1);
  LinkScorer scorer(g, cfg);
  std::vector<NodeId> out;
  for (const auto& [id, sim] : scorer.neighbors(target, axis)) out.push_back(id);
  return out;
}

inline double score_user_based(const BipartiteGraph& g, NodeId v, NodeId w,
                               std::size_t m) {
  ModelConfig cfg;
  cfg.m = m;
  return LinkScorer(g, cfg).user_based(v, w);
}

inline double score_user_based_mp(const BipartiteGraph& g, NodeId v, NodeId w,
                                  std::size_t m, double alpha) {
  ModelConfig cfg;
  cfg.m = m;
  cfg.alpha = alpha;
  return LinkScorer(g, cfg).user_based_mp(v, w);
}

inline double score_item_based(const BipartiteGraph& g, NodeId v, NodeId w,
                               std::size_t m) {
  ModelConfig cfg;
  cfg.m = m;
  return LinkScorer(g, cfg).item_based(v, w);
}

inline double score_item_based_mp(const BipartiteGraph& g, NodeId v, NodeId w,
                                  std::size_t m, double sigma) {
  ModelConfig cfg;
  cfg.m = m;
  cfg.sigma = sigma;
  return LinkScorer(g, cfg).item_based_mp(v, w);
}

/// Degree product |Gamma(v)| x |Gamma(w)|.
inline std::uint64_t score_preferential_attachment(const BipartiteGraph& g, NodeId v,
                                                   NodeId w) {
  return static_cast<std::uint64_t>(matter_degree(g, v)) *
         static_cast<std::uint64_t>(keyword_degree(g, w));
}

/// Uniform deviate in [0, 1) from the shared stream; the caller owns the
/// draw ordering.
inline double score_random(SplitRng& rng, NodeId v, NodeId w) {
  (void)v;
  (void)w;
  return rng.uniform();
}

/// One method-dispatched score. The random method consumes the supplied
/// stream, so the caller fixes the draw order by its iteration order.
inline double score_link(LinkScorer& scorer, SplitRng& random_stream, Method method,
                         NodeId v, NodeId w) {
  switch (method) {
    case Method::kUserBased: return scorer.user_based(v, w);
    case Method::kUserBasedMp: return scorer.user_based_mp(v, w);
    case Method::kItemBased: return scorer.item_based(v, w);
    case Method::kItemBasedMp: return scorer.item_based_mp(v, w);
    case Method::kMatrixFactorization: return scorer.mf(v, w);
    case Method::kMfMp: return scorer.mfmp(v, w);
    case Method::kPreferentialAttachment:
      return static_cast<double>(scorer.preferential_attachment(v, w));
    case Method::kRandom: return score_random(random_stream, v, w);
  }
  throw UsageError("unknown method");
}

struct ScoredLink {
  NodeId matter = 0;
  NodeId keyword = 0;
  double score = 0.0;
};

/// Candidate links in descending score order. Ties fall back to ascending
/// (matter, keyword) so a ranking is a pure function of graph and config.
struct RankedList {
  std::vector<ScoredLink> links;
};

/// Scores every candidate link with the chosen method and sorts. The MP
/// methods honor config.auto_shift by translating scores with the observed
/// minimum instead of the fixed alpha/sigma.
inline RankedList rank_candidates(const BipartiteGraph& g, Method method,
                                  const ModelConfig& config) {
  config.validate();
  LinkSet candidates = candidate_links(g);
  RankedList out;
  out.links.reserve(candidates.size());

  LinkScorer scorer(g, config);
  const bool mp_auto = config.auto_shift && (method == Method::kUserBasedMp ||
                                             method == Method::kItemBasedMp);
  if (mp_auto) {
    std::vector<double> s_values;
    s_values.reserve(candidates.size());
    for (const auto& [v, w] : candidates.pairs) {
      double s = method == Method::kUserBasedMp ? scorer.user_based_self(v, w)
                                                : scorer.item_based_self(v, w);
      s_values.push_back(s);
    }
    double shift = 0.01 - *std::min_element(s_values.begin(), s_values.end());
    for (std::size_t i = 0; i < candidates.pairs.size(); ++i) {
      const auto& [v, w] = candidates.pairs[i];
      out.links.push_back({v, w, scorer.log_popularity(v) * (s_values[i] + shift)});
    }
  } else {
    SplitRng rng(derive_seed(config.seed, "random-scorer"));
    for (const auto& [v, w] : candidates.pairs)
      out.links.push_back({v, w, score_link(scorer, rng, method, v, w)});
  }

  std::sort(out.links.begin(), out.links.end(), [](const ScoredLink& a, const ScoredLink& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.matter != b.matter) return a.matter < b.matter;
    return a.keyword < b.keyword;
  });
  return out;
}

}  // namespace hypolink
