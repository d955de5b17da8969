#include "mobpat/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mobpat/text.hpp"

namespace mobpat {
namespace {

constexpr std::size_t kFieldCount = 8;
constexpr int kMaxOffsetMinutes = 14 * 60;

std::string describe(std::size_t line, std::string_view msg) {
  return "line " + std::to_string(line) + ": " + std::string(msg);
}

double parse_coordinate(std::string_view field, double limit, std::string_view name,
                        std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty() ||
      !std::isfinite(value)) {
    throw NumericRangeError(line, describe(line, std::string(name) + " is not a number: '" +
                                                     std::string(field) + "'"));
  }
  if (value < -limit || value > limit) {
    throw NumericRangeError(line, describe(line, std::string(name) + " out of range: " +
                                                     std::string(field)));
  }
  return value;
}

int parse_offset(std::string_view field, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw NumericRangeError(line, describe(line, "timezone offset is not an integer: '" +
                                                     std::string(field) + "'"));
  }
  if (value < -kMaxOffsetMinutes || value > kMaxOffsetMinutes) {
    throw NumericRangeError(line,
                            describe(line, "timezone offset out of range: " + std::string(field)));
  }
  return value;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void sort_history(UserHistory& h) {
  std::stable_sort(h.records.begin(), h.records.end(),
                   [](const CheckinRecord& a, const CheckinRecord& b) {
                     return a.utc_time < b.utc_time;
                   });
}

void reject(IngestReport& report, const ParseError& e) {
  switch (e.kind()) {
    case RejectKind::field_count: ++report.rejected_field_count; break;
    case RejectKind::numeric: ++report.rejected_numeric; break;
    case RejectKind::timestamp: ++report.rejected_timestamp; break;
  }
  if (report.samples.size() < kMaxRejectionSamples) {
    report.samples.push_back({e.line(), e.kind(), e.what()});
  }
}

}  // namespace

std::string_view to_string(RejectKind kind) {
  switch (kind) {
    case RejectKind::field_count: return "field_count";
    case RejectKind::numeric: return "numeric";
    case RejectKind::timestamp: return "timestamp";
  }
  return "unknown";
}

ParseError::ParseError(RejectKind kind, std::size_t line, const std::string& what)
    : std::runtime_error(what), kind_(kind), line_(line) {}

CheckinRecord parse_line(std::string_view raw, std::size_t line_number) {
  if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
  std::string line = decode_cp1252(raw);

  std::array<std::string_view, kFieldCount> fields;
  std::size_t count = 0;
  std::string_view rest = line;
  while (true) {
    auto tab = rest.find('\t');
    if (count < kFieldCount) fields[count] = rest.substr(0, tab);
    ++count;
    if (tab == std::string_view::npos) break;
    rest.remove_prefix(tab + 1);
  }
  if (count != kFieldCount) {
    throw FieldCountError(line_number, describe(line_number, "expected 8 tab-separated fields, got " +
                                                                 std::to_string(count)));
  }

  CheckinRecord r;
  r.user_id = fields[0];
  r.venue_id = fields[1];
  r.venue_category_id = fields[2];
  r.venue_category_name = trim(fields[3]);
  if (r.user_id.empty() || r.venue_id.empty() || r.venue_category_name.empty()) {
    throw FieldCountError(line_number,
                          describe(line_number, "user id, venue id and category name must be non-empty"));
  }
  r.latitude = parse_coordinate(fields[4], 90.0, "latitude", line_number);
  r.longitude = parse_coordinate(fields[5], 180.0, "longitude", line_number);
  r.tz_offset_minutes = parse_offset(fields[6], line_number);
  auto t = parse_timestamp(fields[7]);
  if (!t) {
    throw TimestampError(line_number,
                         describe(line_number, "unparseable time '" + std::string(fields[7]) + "'"));
  }
  r.utc_time = *t;
  return r;
}

std::string render_line(const CheckinRecord& r) {
  std::string out;
  out += r.user_id;
  out += '\t';
  out += r.venue_id;
  out += '\t';
  out += r.venue_category_id;
  out += '\t';
  out += r.venue_category_name;
  out += '\t';
  out += format_double(r.latitude);
  out += '\t';
  out += format_double(r.longitude);
  out += '\t';
  out += std::to_string(r.tz_offset_minutes);
  out += '\t';
  out += format_dataset_time(r.utc_time);
  return encode_cp1252(out);
}

IngestResult ingest_text(std::string_view contents) {
  IngestResult result;
  std::size_t line_number = 0;
  while (!contents.empty()) {
    auto nl = contents.find('\n');
    std::string_view line = contents.substr(0, nl);
    contents.remove_prefix(nl == std::string_view::npos ? contents.size() : nl + 1);
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    ++result.report.total_lines;
    try {
      CheckinRecord rec = parse_line(line, line_number);
      auto it = result.users.find(rec.user_id);
      if (it == result.users.end()) {
        it = result.users.emplace(rec.user_id, UserHistory{rec.user_id, {}}).first;
      }
      it->second.records.push_back(std::move(rec));
      ++result.report.parsed;
    } catch (const ParseError& e) {
      reject(result.report, e);
    }
  }
  for (auto& [id, history] : result.users) sort_history(history);
  return result;
}

IngestResult ingest_stream(std::istream& in) {
  std::string contents{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failure");
  return ingest_text(contents);
}

IngestResult ingest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return ingest_stream(in);
  } catch (const IoError&) {
    throw IoError("cannot read " + path.string());
  }
}

void merge_histories(HistoryMap& target, HistoryMap incoming) {
  for (auto& [id, history] : incoming) {
    auto it = target.find(id);
    if (it == target.end()) {
      target.emplace(id, std::move(history));
      continue;
    }
    auto& dst = it->second.records;
    dst.insert(dst.end(), std::make_move_iterator(history.records.begin()),
               std::make_move_iterator(history.records.end()));
    sort_history(it->second);
  }
}

nlohmann::ordered_json to_json(const IngestReport& report) {
  nlohmann::ordered_json rejected;
  rejected["field_count"] = report.rejected_field_count;
  rejected["numeric"] = report.rejected_numeric;
  rejected["timestamp"] = report.rejected_timestamp;
  nlohmann::ordered_json j;
  j["total_lines"] = report.total_lines;
  j["parsed"] = report.parsed;
  j["rejected"] = std::move(rejected);
  return j;
}

}  // namespace mobpat
