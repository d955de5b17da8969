#include "mobpat/sessionize.hpp"

#include <map>

namespace mobpat {

LocalDate local_date(Timestamp utc_time, int tz_offset_minutes) {
  auto local = utc_time + std::chrono::minutes{tz_offset_minutes};
  return LocalDate{std::chrono::floor<std::chrono::days>(local)};
}

std::vector<VisitSequence> sessionize(std::span<const LabeledVisit> visits,
                                      SessionOptions options) {
  // Offsets can shift mid-stream (DST, travel), so a later visit may land on
  // an earlier local day; group by key rather than splitting on change.
  std::map<std::chrono::sys_days, VisitSequence> by_day;
  for (const auto& v : visits) {
    LocalDate key = local_date(v.utc_time, v.tz_offset_minutes);
    auto [it, inserted] = by_day.try_emplace(std::chrono::sys_days{key});
    VisitSequence& seq = it->second;
    if (inserted) {
      seq.user_id = v.user_id;
      seq.session_key = key;
    }
    if (options.collapse_adjacent_duplicates && !seq.items.empty() && seq.items.back() == v.label) {
      continue;
    }
    seq.items.push_back(v.label);
  }

  std::vector<VisitSequence> out;
  out.reserve(by_day.size());
  for (auto& [day, seq] : by_day) out.push_back(std::move(seq));
  return out;
}

}  // namespace mobpat
