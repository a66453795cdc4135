#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hypolink/error.hpp"

namespace hypolink {

/// Periodic-table symbols plus named special materials. Symbols are matched
/// case-sensitively in their canonical form ("H", "Fe"); special materials
/// are matched case-insensitively.
struct ElementTable {
  std::unordered_set<std::string> symbols;
  std::unordered_set<std::string> special_materials;  // stored lowercase

  bool has_symbol(std::string_view s) const {
    return symbols.count(std::string(s)) != 0;
  }

  bool is_special(std::string_view lower) const {
    return special_materials.count(std::string(lower)) != 0;
  }

  /// Full periodic table (118 elements) and the stock special materials.
  static const ElementTable& standard() {
    static const ElementTable table = [] {
      ElementTable t;
      static constexpr const char* kSymbols[] = {
          "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
          "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti",
          "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
          "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru",
          "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs",
          "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy",
          "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re", "Os", "Ir",
          "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra",
          "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es",
          "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds",
          "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};
      for (const char* s : kSymbols) t.symbols.insert(s);
      t.special_materials = {"graphene", "silicone", "diamond"};
      return t;
    }();
    return table;
  }
};

namespace detail {

inline bool valid_symbol(std::string_view s) {
  if (s.empty() || s.size() > 2) return false;
  if (!std::isupper(static_cast<unsigned char>(s[0]))) return false;
  if (s.size() == 2 && !std::islower(static_cast<unsigned char>(s[1]))) return false;
  return true;
}

inline bool lowercase_alpha(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::islower(static_cast<unsigned char>(c))) return false;
  return true;
}

// One entry per line, '#' starts a comment, blank lines ignored.
inline std::vector<std::string> read_config_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace detail

/// Loads a symbol list from a config file (one symbol per line).
inline std::unordered_set<std::string> load_symbols(const std::filesystem::path& path) {
  std::unordered_set<std::string> out;
  for (const auto& s : detail::read_config_lines(path)) {
    if (!detail::valid_symbol(s))
      throw DataError("invalid element symbol \"" + s + "\" in " + path.string());
    out.insert(s);
  }
  return out;
}

/// Loads a special-materials list (one lowercase name per line).
inline std::unordered_set<std::string> load_special_materials(
    const std::filesystem::path& path) {
  std::unordered_set<std::string> out;
  for (const auto& s : detail::read_config_lines(path)) {
    if (!detail::lowercase_alpha(s))
      throw DataError("invalid special material \"" + s + "\" in " + path.string());
    out.insert(s);
  }
  return out;
}

/// Builds a table from optional config files; empty paths fall back to the
/// built-in lists.
inline ElementTable make_element_table(const std::filesystem::path& symbols_file = {},
                                       const std::filesystem::path& materials_file = {}) {
  ElementTable t = ElementTable::standard();
  if (!symbols_file.empty()) t.symbols = load_symbols(symbols_file);
  if (!materials_file.empty()) t.special_materials = load_special_materials(materials_file);
  return t;
}

}  // namespace hypolink
