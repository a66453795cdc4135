#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypolink/elements.hpp"

namespace hypolink {

/// Which of the five title patterns a matter token matched.
enum class MatterClass {
  kElements,         // element symbols and digits: TiSe2, Si(111), FeSe
  kStoichiometry,    // with x/y variables: FeTe1-xSex, BaFe2(As1-xPx)(2)
  kAffixed,          // delta/beta/alpha/doped/based joined by '-': BiS2-based
  kHeterostructure,  // formulas joined by '/': Co/Cu, FeSe/SrTiO3
  kSpecialMaterial   // named materials: graphene, silicone, diamond
};

struct MatterToken {
  std::string canonical;    // normalized matter word (vocabulary key)
  std::string source_form;  // token as it appeared in the title
  MatterClass pattern;

  friend bool operator==(const MatterToken& a, const MatterToken& b) {
    return a.canonical == b.canonical;
  }
  friend bool operator<(const MatterToken& a, const MatterToken& b) {
    return a.canonical < b.canonical;
  }
};

namespace detail {

inline bool edge_punct(char c) {
  return c == ',' || c == '.' || c == ':' || c == ';' || c == '!' || c == '?' ||
         c == '"' || c == '\'' || c == '-';
}

inline int paren_balance(std::string_view s) {
  int open = 0, close = 0;
  for (char c : s) {
    if (c == '(') ++open;
    if (c == ')') ++close;
  }
  return open - close;
}

// True when the token is wrapped in one matching pair of parentheses,
// "(FeSe)" but not "(As)(2)".
inline bool fully_enclosed(std::string_view t) {
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    if (t[i] == ')') --depth;
    if (depth == 0 && i + 1 < t.size()) return false;
  }
  return depth == 0;
}

// Strips sentence punctuation from the token edges. Parentheses are
// stripped while unbalanced or while they wrap the whole token, so
// "(FeSe)," becomes "FeSe" but "Si(111)" is left intact.
inline std::string_view trim_token(std::string_view t) {
  bool changed = true;
  while (changed && !t.empty()) {
    changed = false;
    if (fully_enclosed(t)) {
      t.remove_prefix(1);
      t.remove_suffix(1);
      changed = true;
      continue;
    }
    char last = t.back();
    if (edge_punct(last) || (last == ')' && paren_balance(t) < 0)) {
      t.remove_suffix(1);
      changed = true;
      continue;
    }
    char first = t.front();
    if (edge_punct(first) || (first == '(' && paren_balance(t) > 0)) {
      t.remove_prefix(1);
      changed = true;
    }
  }
  return t;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

struct SegmentStats {
  int n_units = 0;
  int n_symbols = 0;
  int n_one_char_symbols = 0;
  bool has_digits = false;
  bool has_vars = false;
};

// Depth-first segmentation of a cleaned token into element symbols, digit
// runs, and the stoichiometry variables x/y. At each position a 2-character
// symbol is tried before a 1-character one; full backtracking covers the
// cases where the greedy choice strands the tail.
inline bool segment(std::string_view s, std::size_t pos, const ElementTable& table,
                    SegmentStats& stats) {
  if (pos == s.size()) return true;
  unsigned char c = static_cast<unsigned char>(s[pos]);
  if (std::isdigit(c)) {
    std::size_t end = pos;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    stats.n_units += 1;
    stats.has_digits = true;
    if (segment(s, end, table, stats)) return true;
    stats.n_units -= 1;
    return false;  // digit run length is forced; no alternative split helps
  }
  if (pos + 1 < s.size() && table.has_symbol(s.substr(pos, 2))) {
    stats.n_units += 1;
    stats.n_symbols += 1;
    if (segment(s, pos + 2, table, stats)) return true;
    stats.n_units -= 1;
    stats.n_symbols -= 1;
  }
  if (table.has_symbol(s.substr(pos, 1))) {
    stats.n_units += 1;
    stats.n_symbols += 1;
    stats.n_one_char_symbols += 1;
    if (segment(s, pos + 1, table, stats)) return true;
    stats.n_units -= 1;
    stats.n_symbols -= 1;
    stats.n_one_char_symbols -= 1;
  }
  if (s[pos] == 'x' || s[pos] == 'y') {
    stats.n_units += 1;
    stats.has_vars = true;
    if (segment(s, pos + 1, table, stats)) return true;
    stats.n_units -= 1;
  }
  return false;
}

inline const std::vector<std::string>& affix_words() {
  static const std::vector<std::string> kWords = {"delta", "beta", "alpha", "doped",
                                                  "based"};
  return kWords;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace detail

/// Removes the characters ( ) . - , : ; from a token, yielding the form used
/// for element-composition checking ("Si(111)" -> "Si111").
inline std::string composition_form(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (char c : token) {
    if (c == '(' || c == ')' || c == '.' || c == '-' || c == ',' || c == ':' ||
        c == ';')
      continue;
    out.push_back(c);
  }
  return out;
}

/// Splits a title into whitespace tokens with sentence punctuation trimmed
/// from the edges. The tokens keep their internal characters so the pattern
/// classes that need '/', '-', or parentheses still see them.
inline std::vector<std::string> normalize_title(std::string_view title) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < title.size()) {
    while (i < title.size() && std::isspace(static_cast<unsigned char>(title[i]))) ++i;
    std::size_t start = i;
    while (i < title.size() && !std::isspace(static_cast<unsigned char>(title[i]))) ++i;
    if (i > start) {
      std::string_view tok = detail::trim_token(title.substr(start, i - start));
      if (!tok.empty()) out.emplace_back(tok);
    }
  }
  return out;
}

namespace detail {

// Plain formula: element symbols + digits, optionally with x/y variables.
// A token that is exactly one single-character symbol carries too little
// information and is rejected ("O"), while "H2" and "Fe" pass.
inline std::optional<MatterClass> parse_plain_formula(std::string_view part,
                                                      const ElementTable& table) {
  std::string comp = composition_form(part);
  if (comp.empty()) return std::nullopt;
  SegmentStats stats;
  if (!segment(comp, 0, table, stats)) return std::nullopt;
  if (stats.n_symbols < 1) return std::nullopt;
  if (stats.n_units == 1 && stats.n_symbols == 1 && stats.n_one_char_symbols == 1 &&
      !stats.has_digits)
    return std::nullopt;
  return stats.has_vars ? MatterClass::kStoichiometry : MatterClass::kElements;
}

// delta/beta/alpha/doped/based joined by '-' to a plain formula.
inline std::optional<MatterClass> parse_affixed(std::string_view token,
                                                const ElementTable& table) {
  auto first_dash = token.find('-');
  auto last_dash = token.rfind('-');
  if (first_dash == std::string_view::npos) return std::nullopt;
  const auto& words = affix_words();
  std::string head = ascii_lower(token.substr(0, first_dash));
  if (std::find(words.begin(), words.end(), head) != words.end()) {
    if (parse_plain_formula(token.substr(first_dash + 1), table))
      return MatterClass::kAffixed;
  }
  std::string tail = ascii_lower(token.substr(last_dash + 1));
  if (std::find(words.begin(), words.end(), tail) != words.end()) {
    if (parse_plain_formula(token.substr(0, last_dash), table))
      return MatterClass::kAffixed;
  }
  return std::nullopt;
}

}  // namespace detail

/// Decides whether a single title token names physical matter. Returns the
/// token with its normalized form, or nullopt for ordinary words.
inline std::optional<MatterToken> parse_matter_token(std::string_view token,
                                                     const ElementTable& table) {
  std::string_view t = detail::trim_token(token);
  if (t.empty()) return std::nullopt;

  std::string lower = detail::ascii_lower(t);
  if (table.is_special(lower))
    return MatterToken{lower, std::string(token), MatterClass::kSpecialMaterial};

  if (detail::paren_balance(t) != 0) return std::nullopt;

  if (t.find('/') != std::string_view::npos) {
    std::size_t begin = 0;
    int parts = 0;
    while (begin <= t.size()) {
      std::size_t slash = t.find('/', begin);
      std::string_view part =
          slash == std::string_view::npos ? t.substr(begin) : t.substr(begin, slash - begin);
      if (part.empty() || !detail::parse_plain_formula(part, table)) return std::nullopt;
      ++parts;
      if (slash == std::string_view::npos) break;
      begin = slash + 1;
    }
    if (parts < 2) return std::nullopt;
    return MatterToken{std::string(t), std::string(token), MatterClass::kHeterostructure};
  }

  if (auto affixed = detail::parse_affixed(t, table))
    return MatterToken{std::string(t), std::string(token), *affixed};

  if (auto plain = detail::parse_plain_formula(t, table))
    return MatterToken{std::string(t), std::string(token), *plain};

  return std::nullopt;
}

/// Extracts the set of matter tokens from a title (titles only; abstracts
/// are never scanned for matter). Result is sorted by canonical form with
/// duplicates collapsed.
inline std::vector<MatterToken> extract_matter(std::string_view title,
                                               const ElementTable& table) {
  std::vector<MatterToken> out;
  for (const std::string& tok : normalize_title(title)) {
    if (auto m = parse_matter_token(tok, table)) out.push_back(std::move(*m));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hypolink
