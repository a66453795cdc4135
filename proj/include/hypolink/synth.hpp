#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hypolink/elements.hpp"
#include "hypolink/error.hpp"
#include "hypolink/matter.hpp"
#include "hypolink/record.hpp"
#include "hypolink/rng.hpp"
#include "hypolink/stemmer.hpp"

namespace hypolink {

/// Knobs for the synthetic corpus. zipf_exponent is the power-law exponent
/// of the matter appearance-count distribution, so the log-log cumulative
/// curve of the generated counts has slope close to -(zipf_exponent - 1).
struct SynthConfig {
  std::size_t n_matter = 300;
  std::size_t n_keywords = 150;
  std::size_t n_docs_train = 4000;
  std::size_t n_docs_test = 1200;
  double zipf_exponent = 2.0;
  std::size_t n_latent_groups = 6;
  double within_group_affinity = 0.8;
  std::uint64_t seed = 1;

  void validate() const {
    if (n_matter < 1 || n_keywords < 1 || n_docs_train < 1 || n_docs_test < 1)
      throw UsageError("all synthetic corpus counts must be at least 1");
    if (zipf_exponent <= 1.0)
      throw UsageError("zipf exponent must exceed 1");
    if (n_latent_groups < 1 || n_latent_groups > n_keywords ||
        n_latent_groups > n_matter)
      throw UsageError("latent group count must be in [1, min(n_matter, n_keywords)]");
    if (within_group_affinity <= 0.0 || within_group_affinity > 1.0)
      throw UsageError("within-group affinity must be in (0, 1]");
    if (within_group_affinity <= 1.0 / static_cast<double>(n_latent_groups))
      throw UsageError("within-group affinity must exceed the cross-group base rate");
  }
};

struct SynthCorpus {
  std::vector<PublicationRecord> train;
  std::vector<PublicationRecord> test;
  std::vector<std::pair<std::string, std::string>> truth;  // (matter, keyword stem)
};

namespace detail {

inline const std::vector<std::string>& synth_symbol_pool() {
  static const std::vector<std::string> kPool = {
      "Fe", "Se", "Ba", "Cu", "La", "Sr", "Ti", "Ni", "Co", "Mn",
      "Cr", "Zn", "Ga", "As", "Te", "Sb", "Bi", "Pb", "Sn", "In",
      "Cd", "Mo", "Nb", "Ta", "Zr", "Hf", "Ru", "Rh", "Pd", "Ag",
      "Pt", "Au", "Ir", "Re", "Gd", "Eu", "Sm", "Nd", "Ce", "Ca"};
  return kPool;
}

inline std::string random_formula(SplitRng& rng) {
  const auto& pool = synth_symbol_pool();
  std::size_t parts = 2 + rng.uniform_index(2);  // 2 or 3 element symbols
  std::string name;
  for (std::size_t i = 0; i < parts; ++i) {
    name += pool[rng.uniform_index(pool.size())];
    if (rng.bernoulli(0.5)) name += static_cast<char>('2' + rng.uniform_index(8));
  }
  return name;
}

inline std::string random_word(SplitRng& rng) {
  static constexpr char kConsonants[] = "bcdfghjklmnpqrstvwz";
  static constexpr char kVowels[] = "aeiou";
  std::size_t syllables = 2 + rng.uniform_index(3);  // 2..4
  std::string word;
  for (std::size_t i = 0; i < syllables; ++i) {
    word += kConsonants[rng.uniform_index(sizeof(kConsonants) - 1)];
    word += kVowels[rng.uniform_index(sizeof(kVowels) - 1)];
  }
  return word;
}

}  // namespace detail

/// Seeded corpus with power-law matter popularity and planted latent group
/// structure. Matter tokens are valid element formulas so they flow through
/// the real title parser; keyword words are pre-stemmed so the extraction
/// pipeline reproduces them exactly. Train documents carry years 2004-2012
/// and test documents 2013-2016, matching the retrospective split the rest
/// of the pipeline expects.
inline SynthCorpus generate(const SynthConfig& cfg) {
  cfg.validate();
  const ElementTable& table = ElementTable::standard();
  SplitRng rng(derive_seed(cfg.seed, "synth"));

  // unique matter vocabulary; every name must round-trip through the parser
  std::vector<std::string> matter;
  {
    std::set<std::string> seen;
    while (matter.size() < cfg.n_matter) {
      std::string name = detail::random_formula(rng);
      if (!seen.insert(name).second) continue;
      auto parsed = parse_matter_token(name, table);
      if (!parsed || parsed->canonical != name)
        throw Error("synthetic matter name failed to round-trip: " + name);
      matter.push_back(name);
    }
  }

  // unique keyword stems, never parseable as matter
  std::vector<std::string> keywords;
  {
    std::set<std::string> seen;
    while (keywords.size() < cfg.n_keywords) {
      std::string s = stem(detail::random_word(rng));
      if (s.size() < 3) continue;
      if (!seen.insert(s).second) continue;
      if (parse_matter_token(s, table)) continue;
      keywords.push_back(s);
    }
  }

  // latent groups and the popularity law; matter index doubles as the rank
  std::vector<std::size_t> matter_group(cfg.n_matter);
  for (auto& gidx : matter_group) gidx = rng.uniform_index(cfg.n_latent_groups);
  std::vector<std::vector<std::size_t>> group_keywords(cfg.n_latent_groups);
  for (std::size_t j = 0; j < cfg.n_keywords; ++j)
    group_keywords[j % cfg.n_latent_groups].push_back(j);

  const double rank_exponent = 1.0 / (cfg.zipf_exponent - 1.0);
  std::vector<double> cumulative(cfg.n_matter);
  double acc = 0.0;
  for (std::size_t i = 0; i < cfg.n_matter; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -rank_exponent);
    cumulative[i] = acc;
  }
  // Research keeps concentrating on matter that is already popular, which is
  // what makes popularity a predictor of future links. Test-period documents
  // sample matter from a sharpened version of the same law.
  const double kTestConcentration = 1.6;
  std::vector<double> test_cumulative(cfg.n_matter);
  acc = 0.0;
  for (std::size_t i = 0; i < cfg.n_matter; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -rank_exponent * kTestConcentration);
    test_cumulative[i] = acc;
  }

  auto make_doc = [&](const std::string& id, int year, bool test_period) {
    std::size_t mi = rng.sample_cumulative(test_period ? test_cumulative : cumulative);
    std::size_t n_kw = 6 + rng.uniform_index(5);  // 6..10 distinct keywords
    std::set<std::size_t> kws;
    const auto& own = group_keywords[matter_group[mi]];
    for (std::size_t attempt = 0; attempt < 8 * n_kw && kws.size() < n_kw; ++attempt) {
      std::size_t kj = rng.bernoulli(cfg.within_group_affinity)
                           ? own[rng.uniform_index(own.size())]
                           : rng.uniform_index(cfg.n_keywords);
      kws.insert(kj);
    }
    PublicationRecord r;
    r.id = id;
    r.year = year;
    r.venue = "synth";
    r.title = matter[mi];
    for (std::size_t kj : kws) {
      if (!r.abstract.empty()) r.abstract += ' ';
      r.abstract += keywords[kj];
      if (rng.bernoulli(0.3)) {
        r.abstract += ' ';
        r.abstract += keywords[kj];  // occasional repeat for tf variation
      }
    }
    return std::make_pair(r, std::make_pair(mi, std::move(kws)));
  };

  SynthCorpus corpus;
  std::set<std::pair<std::size_t, std::size_t>> train_pairs;
  for (std::size_t d = 0; d < cfg.n_docs_train; ++d) {
    auto [r, picked] = make_doc("train-" + std::to_string(d),
                                2004 + static_cast<int>(rng.uniform_index(9)), false);
    for (std::size_t kj : picked.second) train_pairs.emplace(picked.first, kj);
    corpus.train.push_back(std::move(r));
  }

  std::set<std::pair<std::size_t, std::size_t>> planted;
  for (std::size_t d = 0; d < cfg.n_docs_test; ++d) {
    auto [r, picked] = make_doc("test-" + std::to_string(d),
                                2013 + static_cast<int>(rng.uniform_index(4)), true);
    for (std::size_t kj : picked.second) {
      if (!train_pairs.count({picked.first, kj})) planted.emplace(picked.first, kj);
    }
    corpus.test.push_back(std::move(r));
  }

  for (const auto& [mi, kj] : planted)
    corpus.truth.emplace_back(matter[mi], keywords[kj]);
  std::sort(corpus.truth.begin(), corpus.truth.end());
  return corpus;
}

}  // namespace hypolink
