#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypolink/error.hpp"

namespace hypolink {

struct PublicationRecord {
  std::string id;
  int year = 0;
  std::string title;
  std::string abstract;  // may be empty; titles alone still yield matter
  std::string venue;

  friend bool operator==(const PublicationRecord& a, const PublicationRecord& b) {
    return a.id == b.id && a.year == b.year && a.title == b.title &&
           a.abstract == b.abstract && a.venue == b.venue;
  }
};

/// Inclusive calendar-year range.
struct YearRange {
  int first = 0;
  int last = 0;

  bool contains(int year) const { return year >= first && year <= last; }
  bool valid() const { return first <= last; }
};

struct CorpusSplit {
  std::vector<PublicationRecord> train;
  std::vector<PublicationRecord> test;
  YearRange train_range;
  YearRange test_range;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

namespace detail {

inline void validate_record(const PublicationRecord& r, std::size_t line_no) {
  auto fail = [&](const std::string& what) {
    throw DataError("line " + std::to_string(line_no) + ": " + what);
  };
  if (r.id.empty()) fail("record id is empty");
  if (r.year < kMinYear || r.year > kMaxYear)
    fail("year " + std::to_string(r.year) + " outside [" + std::to_string(kMinYear) +
         ", " + std::to_string(kMaxYear) + "]");
  if (r.title.empty()) fail("title is empty");
}

}  // namespace detail

inline PublicationRecord record_from_json(const nlohmann::json& j, std::size_t line_no) {
  PublicationRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.year = j.at("year").get<int>();
    r.title = j.at("title").get<std::string>();
    r.abstract = j.value("abstract", std::string());
    r.venue = j.value("venue", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw DataError("line " + std::to_string(line_no) + ": " + e.what());
  }
  detail::validate_record(r, line_no);
  return r;
}

inline nlohmann::json record_to_json(const PublicationRecord& r) {
  return nlohmann::json{{"id", r.id},
                        {"year", r.year},
                        {"title", r.title},
                        {"abstract", r.abstract},
                        {"venue", r.venue}};
}

/// Reads a line-delimited corpus file (one JSON object per line). Records
/// come back in file order; duplicate ids are a hard error naming both lines.
inline std::vector<PublicationRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  std::vector<PublicationRecord> out;
  std::unordered_map<std::string, std::size_t> first_line_of_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw DataError("line " + std::to_string(line_no) + ": malformed record");
    PublicationRecord r = record_from_json(j, line_no);
    auto [it, inserted] = first_line_of_id.emplace(r.id, line_no);
    if (!inserted)
      throw DataError("duplicate id \"" + r.id + "\": lines " +
                      std::to_string(it->second) + " and " + std::to_string(line_no));
    out.push_back(std::move(r));
  }
  return out;
}

inline void write_corpus(const std::filesystem::path& path,
                         const std::vector<PublicationRecord>& records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file: " + path.string());
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

/// Partitions records into train/test by year. Records outside both ranges
/// are dropped; the dropped count is |records| - |train| - |test|.
inline CorpusSplit split_by_period(const std::vector<PublicationRecord>& records,
                                   YearRange train_range, YearRange test_range) {
  if (!train_range.valid() || !test_range.valid())
    throw UsageError("year ranges must satisfy first <= last");
  if (train_range.last >= test_range.first)
    throw UsageError("test range must start strictly after the training range (train " +
                     std::to_string(train_range.first) + "-" +
                     std::to_string(train_range.last) + ", test " +
                     std::to_string(test_range.first) + "-" +
                     std::to_string(test_range.last) + ")");
  CorpusSplit split;
  split.train_range = train_range;
  split.test_range = test_range;
  for (const auto& r : records) {
    if (train_range.contains(r.year))
      split.train.push_back(r);
    else if (test_range.contains(r.year))
      split.test.push_back(r);
  }
  return split;
}

}  // namespace hypolink
