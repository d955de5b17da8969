#pragma once

// Check-in history ingestion for the Foursquare NYC/TKY tab-separated layout:
//
//   user_id  venue_id  venue_category_id  venue_category_name
//   latitude  longitude  tz_offset_minutes  utc_time
//
// Files are Windows-1252; text fields are decoded to UTF-8 on the way in.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mobpat/timestamp.hpp"

namespace mobpat {

struct CheckinRecord {
  std::string user_id;
  std::string venue_id;
  std::string venue_category_id;
  std::string venue_category_name;
  double latitude = 0.0;
  double longitude = 0.0;
  int tz_offset_minutes = 0;
  Timestamp utc_time{};

  bool operator==(const CheckinRecord&) const = default;
};

/// Records of one user, ascending by utc_time; equal times keep input order.
struct UserHistory {
  std::string user_id;
  std::vector<CheckinRecord> records;
};

using HistoryMap = std::map<std::string, UserHistory, std::less<>>;

enum class RejectKind { field_count, numeric, timestamp };

std::string_view to_string(RejectKind kind);

/// Base of the per-line parse failures. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(RejectKind kind, std::size_t line, const std::string& what);

  RejectKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  RejectKind kind_;
  std::size_t line_;
};

/// Wrong number of fields, or a required identifier/name field is empty.
class FieldCountError : public ParseError {
 public:
  FieldCountError(std::size_t line, const std::string& what)
      : ParseError(RejectKind::field_count, line, what) {}
};

class NumericRangeError : public ParseError {
 public:
  NumericRangeError(std::size_t line, const std::string& what)
      : ParseError(RejectKind::numeric, line, what) {}
};

class TimestampError : public ParseError {
 public:
  TimestampError(std::size_t line, const std::string& what)
      : ParseError(RejectKind::timestamp, line, what) {}
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rejection {
  std::size_t line = 0;
  RejectKind kind = RejectKind::field_count;
  std::string message;
};

/// Blank lines are not counted in total_lines.
struct IngestReport {
  std::size_t total_lines = 0;
  std::size_t parsed = 0;
  std::size_t rejected_field_count = 0;
  std::size_t rejected_numeric = 0;
  std::size_t rejected_timestamp = 0;
  /// First few rejections, for diagnostics. Not part of the JSON form.
  std::vector<Rejection> samples;

  std::size_t rejected() const noexcept {
    return rejected_field_count + rejected_numeric + rejected_timestamp;
  }
};

inline constexpr std::size_t kMaxRejectionSamples = 32;

struct IngestResult {
  HistoryMap users;
  IngestReport report;
};

/// `line` is raw file bytes without the terminator (a trailing CR is tolerated).
CheckinRecord parse_line(std::string_view line, std::size_t line_number = 1);

/// Inverse of parse_line: eight tab-joined fields in file encoding, no terminator.
std::string render_line(const CheckinRecord& record);

IngestResult ingest_text(std::string_view contents);
IngestResult ingest_stream(std::istream& in);

/// Throws IoError if the file cannot be read; malformed lines only show up in the report.
IngestResult ingest_file(const std::filesystem::path& path);

/// Appends `incoming` into `target` and restores per-user time order.
/// Existing records precede incoming ones at equal timestamps.
void merge_histories(HistoryMap& target, HistoryMap incoming);

nlohmann::ordered_json to_json(const IngestReport& report);

}  // namespace mobpat
