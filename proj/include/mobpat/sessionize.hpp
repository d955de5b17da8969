#pragma once

#include <chrono>
#include <span>
#include <string>
#include <vector>

#include "mobpat/taxonomy.hpp"

namespace mobpat {

using LocalDate = std::chrono::year_month_day;

/// One user's visits on one local calendar day, in visit order.
struct VisitSequence {
  std::string user_id;
  LocalDate session_key;
  std::vector<std::string> items;

  bool operator==(const VisitSequence&) const = default;
};

struct SessionOptions {
  bool collapse_adjacent_duplicates = true;
};

/// Calendar date at the record's own offset from UTC.
LocalDate local_date(Timestamp utc_time, int tz_offset_minutes);

/// Splits a single user's time-sorted visits into per-local-day sequences,
/// ordered by date. Visits keep their input order within a day.
std::vector<VisitSequence> sessionize(std::span<const LabeledVisit> visits,
                                      SessionOptions options = {});

}  // namespace mobpat
