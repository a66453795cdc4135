#pragma once

#include <cctype>
#include <string>
#include <string_view>

namespace hypolink {

namespace detail {

// One pass of the Porter suffix-stripping algorithm (M. Porter, 1980),
// ported from the reference porter.c. Two deliberate differences:
//   * step 4 also strips "-or" under the same m>1 condition as "-er",
//     so conductor/semiconductor/superconductor collapse onto their verb
//     roots the way the rest of the -conduct family does;
//   * the public stem() below iterates this pass to a fixed point, which
//     makes stemming idempotent (plain Porter is not: agreed -> agre -> agr).
class PorterPass {
 public:
  std::string run(std::string word) {
    b_ = std::move(word);
    k_ = static_cast<int>(b_.size()) - 1;
    j_ = 0;
    if (k_ <= 1) return b_;
    step1ab();
    step1c();
    step2();
    step3();
    step4();
    step5();
    b_.resize(static_cast<std::size_t>(k_ + 1));
    return b_;
  }

 private:
  std::string b_;
  int k_ = 0;  // index of last char
  int j_ = 0;  // index of last char of the stem under test

  bool cons(int i) const {
    char c = b_[static_cast<std::size_t>(i)];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !cons(i - 1);
    return true;
  }

  // number of consonant sequences in b[0..j]
  int m() const {
    int n = 0, i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool doublec(int j) const {
    if (j < 1) return false;
    if (b_[static_cast<std::size_t>(j)] != b_[static_cast<std::size_t>(j - 1)]) return false;
    return cons(j);
  }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    char c = b_[static_cast<std::size_t>(i)];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view s) {
    int l = static_cast<int>(s.size());
    if (l > k_ + 1) return false;
    if (b_.compare(static_cast<std::size_t>(k_ - l + 1), static_cast<std::size_t>(l),
                   s) != 0)
      return false;
    j_ = k_ - l;
    return true;
  }

  void setto(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), b_.size(), s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void r(std::string_view s) {
    if (m() > 0) setto(s);
  }

  void step1ab() {
    if (b_[static_cast<std::size_t>(k_)] == 's') {
      if (ends("sses"))
        k_ -= 2;
      else if (ends("ies"))
        setto("i");
      else if (b_[static_cast<std::size_t>(k_ - 1)] != 's')
        --k_;
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at"))
        setto("ate");
      else if (ends("bl"))
        setto("ble");
      else if (ends("iz"))
        setto("ize");
      else if (doublec(k_)) {
        --k_;
        char c = b_[static_cast<std::size_t>(k_)];
        if (c == 'l' || c == 's' || c == 'z') ++k_;
      } else if (m() == 1 && cvc(k_)) {
        setto("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
  }

  void step2() {
    static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"bli", "ble"},     {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
        {"logi", "log"}};
    for (const auto& [s, t] : kRules) {
      if (ends(s)) {
        r(t);
        return;
      }
    }
  }

  void step3() {
    static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
    for (const auto& [s, t] : kRules) {
      if (ends(s)) {
        r(t);
        return;
      }
    }
  }

  void step4() {
    static constexpr std::string_view kPlain[] = {
        "al",  "ance", "ence", "er",   "or",  "ic",  "able", "ible", "ant",
        "ement", "ment", "ent"};
    for (std::string_view s : kPlain) {
      if (ends(s)) {
        if (m() > 1) k_ = j_;
        return;
      }
    }
    if (ends("ion") && j_ >= 0) {
      char c = b_[static_cast<std::size_t>(j_)];
      if (c == 's' || c == 't') {
        if (m() > 1) k_ = j_;
        return;
      }
    }
    static constexpr std::string_view kTail[] = {"ou",  "ism", "ate", "iti",
                                                 "ous", "ive", "ize"};
    for (std::string_view s : kTail) {
      if (ends(s)) {
        if (m() > 1) k_ = j_;
        return;
      }
    }
  }

  void step5() {
    j_ = k_;
    if (b_[static_cast<std::size_t>(k_)] == 'e') {
      int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (b_[static_cast<std::size_t>(k_)] == 'l' && doublec(k_) && m() > 1) --k_;
  }
};

}  // namespace detail

/// Reduces a word to its lowercase stem. Iterated to a fixed point so that
/// stem(stem(w)) == stem(w) holds for every input.
inline std::string stem(std::string_view word) {
  std::string w;
  w.reserve(word.size());
  for (char c : word)
    w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  detail::PorterPass pass;
  for (int iter = 0; iter < 16; ++iter) {
    std::string next = pass.run(w);
    if (next == w) break;
    w = std::move(next);
  }
  return w;
}

}  // namespace hypolink
