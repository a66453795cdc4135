#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hypolink/elements.hpp"
#include "hypolink/matter.hpp"
#include "hypolink/record.hpp"
#include "hypolink/stemmer.hpp"

namespace hypolink {

/// Document frequencies over a training corpus; fixed once computed, then
/// shared read-only by every per-document extraction.
struct CorpusStats {
  std::size_t n_docs = 0;
  std::unordered_map<std::string, std::size_t> doc_frequency;

  std::size_t df(const std::string& s) const {
    auto it = doc_frequency.find(s);
    return it == doc_frequency.end() ? 0 : it->second;
  }
};

/// tf * ln(N/df), the textbook form without smoothing. A term the corpus has
/// never seen has no defined idf and signals a pipeline bug upstream.
inline double tf_idf(std::size_t tf, std::size_t n_docs, std::size_t df) {
  if (df == 0)
    throw std::invalid_argument("tf_idf: term has zero document frequency");
  return static_cast<double>(tf) *
         std::log(static_cast<double>(n_docs) / static_cast<double>(df));
}

/// Everything graph construction needs from one publication.
struct DocumentTerms {
  std::string id;
  std::vector<std::string> matter;    // canonical forms, sorted, unique
  std::vector<std::string> keywords;  // stems, sorted, unique, capped

  friend bool operator==(const DocumentTerms& a, const DocumentTerms& b) {
    return a.id == b.id && a.matter == b.matter && a.keywords == b.keywords;
  }
};

namespace detail {

// Per-document keyword candidates: stem -> raw term frequency over
// title+abstract. Matter tokens never produce keyword stems, and neither do
// purely numeric pieces.
inline std::map<std::string, std::size_t> keyword_stem_counts(
    const PublicationRecord& record, const ElementTable& table) {
  std::map<std::string, std::size_t> counts;
  std::string text = record.title;
  text.push_back(' ');
  text += record.abstract;

  std::set<std::string> matter_lower;
  for (const auto& m : extract_matter(record.title, table)) {
    matter_lower.insert(ascii_lower(m.canonical));
    matter_lower.insert(stem(m.canonical));
  }

  for (const std::string& token : normalize_title(text)) {
    if (parse_matter_token(token, table)) continue;
    // split into alphanumeric runs so hyphenated and slashed words
    // contribute their parts
    std::size_t i = 0;
    while (i < token.size()) {
      while (i < token.size() && !std::isalnum(static_cast<unsigned char>(token[i])))
        ++i;
      std::size_t start = i;
      while (i < token.size() && std::isalnum(static_cast<unsigned char>(token[i])))
        ++i;
      if (i == start) continue;
      std::string_view piece(token.data() + start, i - start);
      if (all_digits(piece)) continue;
      if (parse_matter_token(piece, table)) continue;
      std::string s = stem(piece);
      if (s.empty() || all_digits(s)) continue;
      if (matter_lower.count(s)) continue;
      ++counts[s];
    }
  }
  return counts;
}

}  // namespace detail

/// Aggregates document frequencies over the (training) corpus.
inline CorpusStats compute_corpus_stats(const std::vector<PublicationRecord>& records,
                                        const ElementTable& table) {
  CorpusStats stats;
  stats.n_docs = records.size();
  for (const auto& r : records) {
    for (const auto& [s, tf] : detail::keyword_stem_counts(r, table))
      ++stats.doc_frequency[s];
  }
  return stats;
}

/// Top-k keyword stems of one document by TF-IDF, ties at the cutoff broken
/// lexicographically. With frozen_vocabulary set, stems the stats have never
/// seen are dropped instead of treated as an error (test-period documents).
inline std::vector<std::string> extract_keywords(const PublicationRecord& record,
                                                 const ElementTable& table,
                                                 const CorpusStats& stats,
                                                 std::size_t top_k = 20,
                                                 bool frozen_vocabulary = false) {
  std::vector<std::pair<double, std::string>> scored;
  for (const auto& [s, tf] : detail::keyword_stem_counts(record, table)) {
    std::size_t df = stats.df(s);
    if (df == 0 && frozen_vocabulary) continue;
    scored.emplace_back(tf_idf(tf, stats.n_docs, df), s);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (scored.size() > top_k) scored.resize(top_k);
  std::vector<std::string> out;
  out.reserve(scored.size());
  for (auto& [score, s] : scored) out.push_back(std::move(s));
  std::sort(out.begin(), out.end());
  return out;
}

/// Runs matter and keyword extraction for one record.
inline DocumentTerms extract_document_terms(const PublicationRecord& record,
                                            const ElementTable& table,
                                            const CorpusStats& stats,
                                            std::size_t top_k = 20,
                                            bool frozen_vocabulary = false) {
  DocumentTerms terms;
  terms.id = record.id;
  for (const auto& m : extract_matter(record.title, table))
    terms.matter.push_back(m.canonical);
  terms.keywords = extract_keywords(record, table, stats, top_k, frozen_vocabulary);
  return terms;
}

/// Convenience for a whole partition sharing one stats object.
inline std::vector<DocumentTerms> extract_all_document_terms(
    const std::vector<PublicationRecord>& records, const ElementTable& table,
    const CorpusStats& stats, std::size_t top_k = 20, bool frozen_vocabulary = false) {
  std::vector<DocumentTerms> out;
  out.reserve(records.size());
  for (const auto& r : records)
    out.push_back(extract_document_terms(r, table, stats, top_k, frozen_vocabulary));
  return out;
}

}  // namespace hypolink
