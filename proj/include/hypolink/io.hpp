#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypolink/error.hpp"
#include "hypolink/eval.hpp"
#include "hypolink/graph.hpp"
#include "hypolink/keywords.hpp"
#include "hypolink/predict.hpp"
#include "hypolink/rng.hpp"

namespace hypolink {

/// Stable shortest-ish decimal rendering used for every numeric output, so
/// repeated runs produce byte-identical files.
inline std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

/// RFC-4180 style quoting for the odd token containing a comma or quote.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  return out;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());
  return in;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// document terms

inline void write_terms(const std::filesystem::path& path,
                        const std::vector<DocumentTerms>& docs) {
  auto out = detail::open_out(path);
  for (const auto& d : docs) {
    nlohmann::json j{{"id", d.id}, {"matter", d.matter}, {"keywords", d.keywords}};
    out << j.dump() << '\n';
  }
}

inline std::vector<DocumentTerms> load_terms(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  std::vector<DocumentTerms> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw DataError(path.string() + " line " + std::to_string(line_no) +
                      ": malformed terms record");
    DocumentTerms d;
    try {
      d.id = j.at("id").get<std::string>();
      d.matter = j.at("matter").get<std::vector<std::string>>();
      d.keywords = j.at("keywords").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

// ---------------------------------------------------------------------------
// corpus statistics

inline void write_stats(const std::filesystem::path& path, const CorpusStats& stats) {
  auto out = detail::open_out(path);
  out << "docs " << stats.n_docs << '\n';
  std::map<std::string, std::size_t> sorted(stats.doc_frequency.begin(),
                                            stats.doc_frequency.end());
  for (const auto& [s, df] : sorted) out << s << ' ' << df << '\n';
}

inline CorpusStats load_stats(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  CorpusStats stats;
  std::string tag;
  if (!(in >> tag >> stats.n_docs) || tag != "docs")
    throw DataError(path.string() + ": expected \"docs <n>\" header");
  std::string s;
  std::size_t df;
  while (in >> s >> df) stats.doc_frequency.emplace(s, df);
  return stats;
}

// ---------------------------------------------------------------------------
// graph snapshot

inline void write_graph(const std::filesystem::path& path, const BipartiteGraph& g) {
  auto out = detail::open_out(path);
  out << "hypolink-graph 1\n";
  out << "matter " << g.n_matter() << '\n';
  for (const auto& name : g.matter_names) out << name << '\n';
  out << "keywords " << g.n_keywords() << '\n';
  for (const auto& name : g.keyword_names) out << name << '\n';
  out << "triplets " << g.nnz() << '\n';
  for (NodeId v = 0; v < g.rows.size(); ++v)
    for (const auto& [w, c] : g.rows[v]) out << v << ' ' << w << ' ' << c << '\n';
}

inline BipartiteGraph load_graph(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  auto fail = [&](const std::string& what) {
    throw DataError(path.string() + ": " + what);
  };
  std::string line;
  if (!std::getline(in, line) || line != "hypolink-graph 1")
    fail("not a graph snapshot (bad magic line)");

  auto read_section = [&](const std::string& expect) -> std::size_t {
    std::string tag;
    std::size_t n = 0;
    if (!(in >> tag >> n) || tag != expect) fail("expected \"" + expect + " <n>\"");
    std::getline(in, line);  // consume end of line
    return n;
  };

  BipartiteGraph g;
  std::size_t n_matter = read_section("matter");
  for (std::size_t i = 0; i < n_matter; ++i) {
    if (!std::getline(in, line)) fail("truncated matter vocabulary");
    g.matter_index.emplace(line, static_cast<NodeId>(i));
    g.matter_names.push_back(line);
  }
  std::size_t n_keywords = read_section("keywords");
  for (std::size_t i = 0; i < n_keywords; ++i) {
    if (!std::getline(in, line)) fail("truncated keyword vocabulary");
    g.keyword_index.emplace(line, static_cast<NodeId>(i));
    g.keyword_names.push_back(line);
  }
  std::size_t nnz = read_section("triplets");
  g.rows.assign(n_matter, {});
  for (std::size_t i = 0; i < nnz; ++i) {
    std::size_t v, w;
    std::uint32_t c;
    if (!(in >> v >> w >> c)) fail("truncated triplet list");
    if (v >= n_matter || w >= n_keywords) fail("triplet index out of range");
    if (c == 0) fail("stored zero count");
    g.rows[v].emplace_back(static_cast<NodeId>(w), c);
  }
  for (auto& row : g.rows) std::sort(row.begin(), row.end());
  detail::finalize_columns(g);
  return g;
}

// ---------------------------------------------------------------------------
// evaluation outputs

inline void write_ranked_csv(const std::filesystem::path& path, const BipartiteGraph& g,
                             const RankedList& ranked, std::size_t top_n) {
  auto out = detail::open_out(path);
  out << "rank,matter,keyword,score\n";
  std::size_t n = std::min(top_n, ranked.links.size());
  for (std::size_t i = 0; i < n; ++i) {
    const ScoredLink& link = ranked.links[i];
    out << (i + 1) << ',' << csv_field(g.matter_names[link.matter]) << ','
        << csv_field(g.keyword_names[link.keyword]) << ',' << format_double(link.score)
        << '\n';
  }
}

inline void write_groc_csv(const std::filesystem::path& path, const EvalCurve& curve) {
  auto out = detail::open_out(path);
  out << "n,hits\n";
  for (const auto& [n, hits] : curve.points)
    out << static_cast<std::size_t>(n) << ',' << static_cast<std::size_t>(hits) << '\n';
}

inline void write_precision_csv(const std::filesystem::path& path,
                                const EvalCurve& curve) {
  auto out = detail::open_out(path);
  out << "n,precision\n";
  for (const auto& [n, p] : curve.points)
    out << static_cast<std::size_t>(n) << ',' << format_double(p) << '\n';
}

inline void write_roc_csv(const std::filesystem::path& path, const EvalCurve& curve) {
  auto out = detail::open_out(path);
  out << "fpr,tpr\n";
  for (const auto& [x, y] : curve.points)
    out << format_double(x) << ',' << format_double(y) << '\n';
}

inline void write_auroc_txt(const std::filesystem::path& path, const AurocReport& r) {
  auto out = detail::open_out(path);
  out << "value " << format_double(r.value) << '\n'
      << "ci_low " << format_double(r.ci_low) << '\n'
      << "ci_high " << format_double(r.ci_high) << '\n'
      << "n_pos " << r.n_pos << '\n'
      << "n_neg " << r.n_neg << '\n';
}

inline void write_histogram_csv(const std::filesystem::path& path,
                                const AppearanceDistribution& dist) {
  auto out = detail::open_out(path);
  out << "count,n_matter\n";
  for (const auto& [c, n] : dist.histogram) out << c << ',' << n << '\n';
}

inline void write_loglog_csv(const std::filesystem::path& path,
                             const AppearanceDistribution& dist) {
  auto out = detail::open_out(path);
  out << "ln_count,ln_ccdf\n";
  for (const auto& [x, y] : dist.loglog_ccdf)
    out << format_double(x) << ',' << format_double(y) << '\n';
}

// ---------------------------------------------------------------------------
// truth links

inline void write_truth_csv(const std::filesystem::path& path,
                            const std::vector<std::pair<std::string, std::string>>& truth) {
  auto out = detail::open_out(path);
  out << "matter,keyword\n";
  for (const auto& [m, k] : truth) out << csv_field(m) << ',' << csv_field(k) << '\n';
}

/// Maps named truth pairs onto graph indices; pairs naming out-of-vocabulary
/// tokens are skipped (the frozen-vocabulary rule).
inline LinkSet truth_to_links(const BipartiteGraph& g,
                              const std::vector<std::pair<std::string, std::string>>& truth) {
  std::set<std::pair<NodeId, NodeId>> found;
  for (const auto& [m, k] : truth) {
    auto vit = g.matter_index.find(m);
    auto wit = g.keyword_index.find(k);
    if (vit == g.matter_index.end() || wit == g.keyword_index.end()) continue;
    found.emplace(vit->second, wit->second);
  }
  LinkSet out;
  out.pairs.assign(found.begin(), found.end());
  return out;
}

// ---------------------------------------------------------------------------
// manifest

inline std::string file_digest(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(ss.str())));
  return buf;
}

}  // namespace hypolink
