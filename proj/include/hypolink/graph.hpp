#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypolink/error.hpp"
#include "hypolink/keywords.hpp"

namespace hypolink {

using NodeId = std::uint32_t;

/// Sparse entry list, sorted by the partner index.
using SparseVec = std::vector<std::pair<NodeId, std::uint32_t>>;

/// Matter-keyword co-occurrence graph. r(v, w) counts the distinct
/// publications in which matter v and keyword w appear together. Stored
/// entries are strictly positive; zeros are implicit. Both row and column
/// views are kept since user-based prediction walks rows and item-based
/// walks columns.
struct BipartiteGraph {
  std::vector<std::string> matter_names;   // row id -> canonical form
  std::vector<std::string> keyword_names;  // column id -> stem
  std::unordered_map<std::string, NodeId> matter_index;
  std::unordered_map<std::string, NodeId> keyword_index;
  std::vector<SparseVec> rows;  // per matter: (keyword, count)
  std::vector<SparseVec> cols;  // per keyword: (matter, count)

  std::size_t n_matter() const { return matter_names.size(); }
  std::size_t n_keywords() const { return keyword_names.size(); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.size();
    return n;
  }

  void check_matter(NodeId v) const {
    if (v >= rows.size()) throw std::out_of_range("matter index out of range");
  }
  void check_keyword(NodeId w) const {
    if (w >= cols.size()) throw std::out_of_range("keyword index out of range");
  }

  /// Count for (v, w); zero when the link is absent.
  std::uint32_t at(NodeId v, NodeId w) const {
    check_matter(v);
    check_keyword(w);
    const SparseVec& row = rows[v];
    auto it = std::lower_bound(row.begin(), row.end(), w,
                               [](const auto& e, NodeId key) { return e.first < key; });
    return (it != row.end() && it->first == w) ? it->second : 0;
  }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.matter_names == b.matter_names && a.keyword_names == b.keyword_names &&
           a.rows == b.rows;
  }
};

namespace detail {

inline void finalize_columns(BipartiteGraph& g) {
  g.cols.assign(g.keyword_names.size(), {});
  for (NodeId v = 0; v < g.rows.size(); ++v)
    for (const auto& [w, c] : g.rows[v]) g.cols[w].emplace_back(v, c);
}

}  // namespace detail

/// Builds the co-occurrence graph from training-partition document terms.
/// Node ids follow first appearance across the document sequence, so the
/// same input always yields the same graph.
inline BipartiteGraph build_graph(const std::vector<DocumentTerms>& docs) {
  BipartiteGraph g;
  std::map<std::pair<NodeId, NodeId>, std::uint32_t> counts;
  for (const auto& d : docs) {
    for (const auto& m : d.matter) {
      auto [it, inserted] = g.matter_index.emplace(m, static_cast<NodeId>(g.matter_names.size()));
      if (inserted) g.matter_names.push_back(m);
    }
    for (const auto& k : d.keywords) {
      auto [it, inserted] =
          g.keyword_index.emplace(k, static_cast<NodeId>(g.keyword_names.size()));
      if (inserted) g.keyword_names.push_back(k);
    }
    for (const auto& m : d.matter) {
      NodeId v = g.matter_index.at(m);
      for (const auto& k : d.keywords) {
        NodeId w = g.keyword_index.at(k);
        ++counts[{v, w}];
      }
    }
  }
  g.rows.assign(g.matter_names.size(), {});
  for (const auto& [vw, c] : counts) g.rows[vw.first].emplace_back(vw.second, c);
  detail::finalize_columns(g);
  return g;
}

/// Document-appearance count per matter canonical form.
inline std::map<std::string, std::size_t> matter_appearance_counts(
    const std::vector<DocumentTerms>& docs) {
  std::map<std::string, std::size_t> counts;
  for (const auto& d : docs)
    for (const auto& m : d.matter) ++counts[m];
  return counts;
}

/// Document-appearance count per keyword stem.
inline std::map<std::string, std::size_t> keyword_appearance_counts(
    const std::vector<DocumentTerms>& docs) {
  std::map<std::string, std::size_t> counts;
  for (const auto& d : docs)
    for (const auto& k : d.keywords) ++counts[k];
  return counts;
}

/// Cold-start and noise filtering:
///   * matter appearing in fewer than two publications is dropped,
///   * keywords must appear in strictly more than min_keyword_count
///     publications and must not be purely numeric,
///   * matter rows whose remaining popularity falls below 2 are dropped so
///     the log popularity weight stays strictly positive.
/// Indices are re-packed preserving relative order, which makes the
/// operation idempotent for fixed thresholds.
inline BipartiteGraph filter_graph(const BipartiteGraph& g,
                                   const std::vector<DocumentTerms>& docs,
                                   std::size_t min_keyword_count = 100) {
  auto matter_counts = matter_appearance_counts(docs);
  auto keyword_counts = keyword_appearance_counts(docs);

  std::vector<bool> keep_col(g.n_keywords(), false);
  for (NodeId w = 0; w < g.n_keywords(); ++w) {
    const std::string& name = g.keyword_names[w];
    if (detail::all_digits(name)) continue;
    auto it = keyword_counts.find(name);
    if (it != keyword_counts.end() && it->second > min_keyword_count) keep_col[w] = true;
  }

  std::vector<bool> keep_row(g.n_matter(), false);
  for (NodeId v = 0; v < g.n_matter(); ++v) {
    auto it = matter_counts.find(g.matter_names[v]);
    if (it != matter_counts.end() && it->second >= 2) keep_row[v] = true;
  }
  // popularity over the surviving columns must support the log weight
  for (NodeId v = 0; v < g.n_matter(); ++v) {
    if (!keep_row[v]) continue;
    std::uint64_t pop = 0;
    for (const auto& [w, c] : g.rows[v])
      if (keep_col[w]) pop += c;
    if (pop < 2) keep_row[v] = false;
  }

  BipartiteGraph out;
  std::vector<NodeId> col_map(g.n_keywords(), 0);
  for (NodeId w = 0; w < g.n_keywords(); ++w) {
    if (!keep_col[w]) continue;
    col_map[w] = static_cast<NodeId>(out.keyword_names.size());
    out.keyword_index.emplace(g.keyword_names[w], col_map[w]);
    out.keyword_names.push_back(g.keyword_names[w]);
  }
  for (NodeId v = 0; v < g.n_matter(); ++v) {
    if (!keep_row[v]) continue;
    NodeId nv = static_cast<NodeId>(out.matter_names.size());
    out.matter_index.emplace(g.matter_names[v], nv);
    out.matter_names.push_back(g.matter_names[v]);
    SparseVec row;
    for (const auto& [w, c] : g.rows[v])
      if (keep_col[w]) row.emplace_back(col_map[w], c);
    out.rows.push_back(std::move(row));
  }
  detail::finalize_columns(out);
  return out;
}

/// Popularity of a matter row: the sum of its co-occurrence counts.
inline std::uint64_t matter_popularity(const BipartiteGraph& g, NodeId v) {
  g.check_matter(v);
  std::uint64_t pop = 0;
  for (const auto& [w, c] : g.rows[v]) pop += c;
  return pop;
}

/// Number of distinct keywords linked to matter v.
inline std::size_t matter_degree(const BipartiteGraph& g, NodeId v) {
  g.check_matter(v);
  return g.rows[v].size();
}

/// Number of distinct matter linked to keyword w.
inline std::size_t keyword_degree(const BipartiteGraph& g, NodeId w) {
  g.check_keyword(w);
  return g.cols[w].size();
}

/// Set of (matter, keyword) pairs, kept sorted for binary-search membership.
struct LinkSet {
  std::vector<std::pair<NodeId, NodeId>> pairs;

  bool contains(NodeId v, NodeId w) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(v, w));
  }
  std::size_t size() const { return pairs.size(); }
};

/// All zero entries of R: the links a model may recommend.
inline LinkSet candidate_links(const BipartiteGraph& g) {
  LinkSet out;
  out.pairs.reserve(g.n_matter() * g.n_keywords() - g.nnz());
  for (NodeId v = 0; v < g.n_matter(); ++v) {
    const SparseVec& row = g.rows[v];
    std::size_t i = 0;
    for (NodeId w = 0; w < g.n_keywords(); ++w) {
      if (i < row.size() && row[i].first == w) {
        ++i;
        continue;
      }
      out.pairs.emplace_back(v, w);
    }
  }
  return out;
}

/// Links that first form in the test period: pairs co-occurring in at least
/// one test document while zero in the training graph. Test documents are
/// mapped through the frozen training vocabulary; out-of-vocabulary tokens
/// contribute nothing.
inline LinkSet new_links(const BipartiteGraph& train,
                         const std::vector<DocumentTerms>& test_docs) {
  std::set<std::pair<NodeId, NodeId>> found;
  for (const auto& d : test_docs) {
    for (const auto& m : d.matter) {
      auto vit = train.matter_index.find(m);
      if (vit == train.matter_index.end()) continue;
      for (const auto& k : d.keywords) {
        auto wit = train.keyword_index.find(k);
        if (wit == train.keyword_index.end()) continue;
        if (train.at(vit->second, wit->second) == 0)
          found.emplace(vit->second, wit->second);
      }
    }
  }
  LinkSet out;
  out.pairs.assign(found.begin(), found.end());
  return out;
}

/// Histogram of matter appearance counts with the log-log cumulative curve
/// and its least-squares slope. The counts of popular research matter follow
/// a power law, so the cumulative curve is close to a straight line.
struct AppearanceDistribution {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;  // (count, n matter)
  std::vector<std::pair<double, double>> loglog_ccdf;  // (ln c, ln P(count >= c))
  double slope = 0.0;
};

inline AppearanceDistribution appearance_distribution(
    const std::vector<DocumentTerms>& docs) {
  auto counts = matter_appearance_counts(docs);
  if (counts.empty()) throw DataError("appearance distribution of an empty corpus");

  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& [name, c] : counts) ++hist[c];

  AppearanceDistribution dist;
  dist.histogram.assign(hist.begin(), hist.end());

  const double total = static_cast<double>(counts.size());
  std::uint64_t at_least = counts.size();
  for (const auto& [c, n] : dist.histogram) {
    dist.loglog_ccdf.emplace_back(std::log(static_cast<double>(c)),
                                  std::log(static_cast<double>(at_least) / total));
    at_least -= n;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n_pts = static_cast<double>(dist.loglog_ccdf.size());
  for (const auto& [x, y] : dist.loglog_ccdf) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n_pts * sxx - sx * sx;
  dist.slope = denom == 0.0 ? 0.0 : (n_pts * sxy - sx * sy) / denom;
  return dist;
}

}  // namespace hypolink
