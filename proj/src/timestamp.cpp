#include "mobpat/timestamp.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace mobpat {
namespace {

using namespace std::chrono;

constexpr std::array<std::string_view, 7> kWeekdays = {"Sun", "Mon", "Tue", "Wed",
                                                       "Thu", "Fri", "Sat"};
constexpr std::array<std::string_view, 12> kMonths = {"Jan", "Feb", "Mar", "Apr",
                                                      "May", "Jun", "Jul", "Aug",
                                                      "Sep", "Oct", "Nov", "Dec"};

constexpr int kMinYear = 1990;
constexpr int kMaxYear = 2100;

// Exactly `width` ASCII digits.
std::optional<int> fixed_digits(std::string_view s, std::size_t width) {
  if (s.size() != width) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

std::optional<seconds> parse_clock(std::string_view s) {
  if (s.size() != 8 || s[2] != ':' || s[5] != ':') return std::nullopt;
  auto h = fixed_digits(s.substr(0, 2), 2);
  auto m = fixed_digits(s.substr(3, 2), 2);
  auto sec = fixed_digits(s.substr(6, 2), 2);
  if (!h || !m || !sec || *h > 23 || *m > 59 || *sec > 59) return std::nullopt;
  return hours{*h} + minutes{*m} + seconds{*sec};
}

// "+HHMM", "+HH:MM", "Z"; returns offset east of UTC.
std::optional<minutes> parse_zone(std::string_view s) {
  if (s == "Z") return minutes{0};
  if (s.size() != 5 && s.size() != 6) return std::nullopt;
  if (s[0] != '+' && s[0] != '-') return std::nullopt;
  std::string_view hh = s.substr(1, 2);
  std::string_view mm = s.size() == 5 ? s.substr(3, 2) : s.substr(4, 2);
  if (s.size() == 6 && s[3] != ':') return std::nullopt;
  auto h = fixed_digits(hh, 2);
  auto m = fixed_digits(mm, 2);
  if (!h || !m || *h > 14 || *m > 59) return std::nullopt;
  minutes off = hours{*h} + minutes{*m};
  return s[0] == '-' ? -off : off;
}

std::optional<Timestamp> assemble(int y, int mo, int d, seconds clock, minutes zone) {
  if (y < kMinYear || y > kMaxYear) return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  Timestamp local = sys_days{ymd} + clock;
  Timestamp utc = local - zone;
  auto utc_year = static_cast<int>(year_month_day{floor<days>(utc)}.year());
  if (utc_year < kMinYear || utc_year > kMaxYear) return std::nullopt;
  return utc;
}

std::optional<Timestamp> parse_dataset_layout(std::string_view text) {
  // Www Mmm DD HH:MM:SS +ZZZZ YYYY
  std::array<std::string_view, 6> tok;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < tok.size(); ++i) {
    auto next = text.find(' ', pos);
    if (i + 1 < tok.size()) {
      if (next == std::string_view::npos) return std::nullopt;
      tok[i] = text.substr(pos, next - pos);
      pos = next + 1;
    } else {
      if (next != std::string_view::npos) return std::nullopt;
      tok[i] = text.substr(pos);
    }
  }
  int wd = -1;
  for (std::size_t i = 0; i < kWeekdays.size(); ++i) {
    if (tok[0] == kWeekdays[i]) wd = static_cast<int>(i);
  }
  int mo = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (tok[1] == kMonths[i]) mo = static_cast<int>(i) + 1;
  }
  auto d = fixed_digits(tok[2], 2);
  auto clock = parse_clock(tok[3]);
  auto zone = parse_zone(tok[4]);
  auto y = fixed_digits(tok[5], 4);
  if (wd < 0 || mo == 0 || !d || !clock || !zone || !y || tok[4].size() != 5) {
    return std::nullopt;
  }
  year_month_day ymd{year{*y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok() || weekday{sys_days{ymd}}.c_encoding() != static_cast<unsigned>(wd)) {
    return std::nullopt;
  }
  return assemble(*y, mo, *d, *clock, *zone);
}

std::optional<Timestamp> parse_iso_layout(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS[zone]
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' || text[10] != 'T') {
    return std::nullopt;
  }
  auto y = fixed_digits(text.substr(0, 4), 4);
  auto mo = fixed_digits(text.substr(5, 2), 2);
  auto d = fixed_digits(text.substr(8, 2), 2);
  auto clock = parse_clock(text.substr(11, 8));
  std::optional<minutes> zone = minutes{0};
  if (text.size() > 19) zone = parse_zone(text.substr(19));
  if (!y || !mo || !d || !clock || !zone || *mo < 1 || *mo > 12) return std::nullopt;
  return assemble(*y, *mo, *d, *clock, *zone);
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  if (!text.empty() && text[0] >= '0' && text[0] <= '9') return parse_iso_layout(text);
  return parse_dataset_layout(text);
}

std::string format_dataset_time(Timestamp t) {
  auto day_point = floor<days>(t);
  year_month_day ymd{day_point};
  hh_mm_ss clock{t - day_point};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s %s %02u %02d:%02d:%02d +0000 %04d",
                kWeekdays[weekday{day_point}.c_encoding()].data(),
                kMonths[static_cast<unsigned>(ymd.month()) - 1].data(),
                static_cast<unsigned>(ymd.day()), static_cast<int>(clock.hours().count()),
                static_cast<int>(clock.minutes().count()),
                static_cast<int>(clock.seconds().count()), static_cast<int>(ymd.year()));
  return buf;
}

std::string format_iso8601(Timestamp t) {
  auto day_point = floor<days>(t);
  year_month_day ymd{day_point};
  hh_mm_ss clock{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(clock.hours().count()),
                static_cast<int>(clock.minutes().count()),
                static_cast<int>(clock.seconds().count()));
  return buf;
}

}  // namespace mobpat
