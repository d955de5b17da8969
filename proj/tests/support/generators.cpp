#include "generators.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>

namespace mobpat::testing {
namespace {

using namespace std::chrono;

// UTF-8 in source; every character here has a Windows-1252 byte.
const std::vector<std::string> kCategories = {
    "Thai Restaurant", "Caysorn Thai Restaurant", "Café", "Coffee Shop", "Bar", "Gym / Fitness Center",
    "Office", "Home (private)", "Subway", "Train Station", "Bus Station", "Park", "Deli / Bodega",
    "Pizza Place", "Chinese Restaurant", "Mexican Restaurant", "Italian Restaurant",
    "Japanese Restaurant", "Sushi Restaurant", "Bakery", "Pâtisserie", "Crêperie", "Food Truck",
    "Grocery Store", "Drugstore / Pharmacy", "Bank", "Post Office", "University", "College Academic Building",
    "Library", "Museum", "Art Gallery", "Movie Theater", "Theater", "Concert Hall", "Stadium",
    "Hotel", "Airport", "Ferry", "Bridge", "Road", "Neighborhood", "Building", "Church",
    "Hospital", "Doctor's Office", "Salon / Barbershop", "Clothing Store", "Electronics Store",
    "Bookstore", "Department Store", "Mall", "Beer Garden", "Wine Bar", "Cocktail Bar", "Pub",
    "Nightclub", "Burger Joint", "Sandwich Place", "Diner", "Fast Food Restaurant",
    "Ice Cream Shop", "Tea Room", "Juice Bar", "Smörgåsbord", "Bar – Lounge", "Plaza",
    "Playground", "Beach", "Gas Station / Garage", "Parking", "Laundry Service", "School",
    "Government Building", "Residential Building (Apartment / Condo)", "Student Center",
    "General Entertainment", "Arts & Crafts Store", "Miscellaneous Shop", "Cosmetics Shop",
    "Asian Restaurant"};

constexpr std::array<const char*, 7> kWeekdays = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};
constexpr std::array<const char*, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                 "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

std::string hex_id(Rng& rng, std::size_t len) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s(len, '0');
  for (auto& c : s) c = kHex[rng() % 16];
  return s;
}

// Written independently of the library's formatter.
std::string dataset_time(sys_seconds t) {
  auto d = floor<days>(t);
  year_month_day ymd{d};
  auto secs = (t - d).count();
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s %s %02u %02lld:%02lld:%02lld +0000 %d",
                kWeekdays[weekday{d}.c_encoding()], kMonths[unsigned(ymd.month()) - 1],
                unsigned(ymd.day()), static_cast<long long>(secs / 3600),
                static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60),
                int(ymd.year()));
  return buf;
}

// Minimal UTF-8 -> Windows-1252 for the characters used above.
std::string to_cp1252(const std::string& utf8) {
  static const std::vector<std::pair<std::string, char>> kMap = {
      {"é", '\xE9'}, {"â", '\xE2'}, {"ê", '\xEA'}, {"ö", '\xF6'}, {"å", '\xE5'}, {"–", '\x96'}};
  std::string out = utf8;
  for (const auto& [from, to] : kMap) {
    for (auto pos = out.find(from); pos != std::string::npos; pos = out.find(from, pos + 1)) {
      out.replace(pos, from.size(), 1, to);
    }
  }
  return out;
}

std::string tsv_line(const std::string& user, const std::string& venue, const std::string& cat_id,
                     const std::string& cat_name, double lat, double lon, int offset,
                     sys_seconds utc) {
  char coords[80];
  std::snprintf(coords, sizeof coords, "%.15g\t%.15g\t%d", lat, lon, offset);
  return user + '\t' + venue + '\t' + cat_id + '\t' + to_cp1252(cat_name) + '\t' + coords + '\t' +
         dataset_time(utc);
}

}  // namespace

std::vector<std::vector<std::string>> random_sequences(Rng& rng, std::size_t max_sequences,
                                                       std::size_t alphabet,
                                                       std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> count(0, max_sequences);
  std::uniform_int_distribution<std::size_t> length(1, max_length);
  std::uniform_int_distribution<std::size_t> letter(0, alphabet - 1);
  std::vector<std::vector<std::string>> out(count(rng));
  for (auto& s : out) {
    s.resize(length(rng));
    for (auto& item : s) item = std::string(1, static_cast<char>('A' + letter(rng)));
  }
  return out;
}

CheckinRecord random_record(Rng& rng) {
  CheckinRecord r;
  r.user_id = std::to_string(1 + rng() % 5000);
  r.venue_id = hex_id(rng, 24);
  r.venue_category_id = rng() % 10 == 0 ? std::string() : hex_id(rng, 24);
  r.venue_category_name = kCategories[rng() % kCategories.size()];
  r.latitude = std::uniform_real_distribution<double>(-90.0, 90.0)(rng);
  r.longitude = std::uniform_real_distribution<double>(-180.0, 180.0)(rng);
  if (rng() % 8 == 0) r.latitude = std::round(r.latitude * 10) / 10;
  r.tz_offset_minutes = static_cast<int>(rng() % 1681) - 840;
  auto lo = sys_seconds{sys_days{year{1990} / January / 1}};
  auto hi = sys_seconds{sys_days{year{2100} / December / 31}} + hours{23} + minutes{59} + seconds{59};
  auto span = static_cast<std::uint64_t>((hi - lo).count());
  r.utc_time = lo + seconds{static_cast<long long>(rng() % (span + 1))};
  return r;
}

std::string random_dataset(Rng& rng, std::size_t users, std::size_t max_records) {
  std::string out;
  auto base = sys_seconds{sys_days{year{2012} / April / 3}};
  for (std::size_t u = 0; u < users; ++u) {
    std::string user = "u" + std::to_string(u);
    std::size_t n = 1 + rng() % max_records;
    for (std::size_t i = 0; i < n; ++i) {
      auto t = base + seconds{static_cast<long long>(rng() % (20 * 86400))};
      int offset = rng() % 2 ? -240 : -300;
      out += tsv_line(user, hex_id(rng, 8), hex_id(rng, 8), kCategories[rng() % 12], 40.7, -73.9,
                      offset, t);
      out += rng() % 3 == 0 ? "\r\n" : "\n";
    }
  }
  return out;
}

LabelTaxonomy random_taxonomy(Rng& rng) {
  static const std::vector<std::string> kFragments = {"restaurant", "bar", "station", "store",
                                                      "shop", "caf", "thai", "office", "park"};
  std::vector<Rule> rules;
  std::size_t n = rng() % 6;
  for (std::size_t i = 0; i < n; ++i) {
    Rule r;
    r.kind = static_cast<MatchKind>(rng() % 3);
    r.pattern = kFragments[rng() % kFragments.size()];
    r.label = "L" + std::to_string(rng() % 4);
    rules.push_back(std::move(r));
  }
  std::optional<std::string> fallback;
  if (rng() % 2) fallback = "Other";
  return LabelTaxonomy(std::move(rules), std::move(fallback));
}

std::vector<MalformedCase> malformed_corpus() {
  const std::string t = "Tue Apr 03 18:00:09 +0000 2012";
  auto line = [](std::vector<std::string> f) {
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "\t" : "") + f[i];
    return s;
  };
  using K = RejectKind;
  return {
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240"}), K::field_count, "7 fields"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240", t, "x"}), K::field_count, "9 fields"},
      {"just some text", K::field_count, "no tabs"},
      {line({"", "V49", "C", "Thai", "40.7", "-73.9", "-240", t}), K::field_count, "empty user"},
      {line({"470", "", "C", "Thai", "40.7", "-73.9", "-240", t}), K::field_count, "empty venue"},
      {line({"470", "V49", "C", "   ", "40.7", "-73.9", "-240", t}), K::field_count, "blank category"},
      {line({"470", "V49", "C", "Thai", "91.0", "-73.9", "-240", t}), K::numeric, "latitude 91"},
      {line({"470", "V49", "C", "Thai", "-90.5", "-73.9", "-240", t}), K::numeric, "latitude -90.5"},
      {line({"470", "V49", "C", "Thai", "40.7", "180.1", "-240", t}), K::numeric, "longitude 180.1"},
      {line({"470", "V49", "C", "Thai", "40.7", "abc", "-240", t}), K::numeric, "longitude text"},
      {line({"470", "V49", "C", "Thai", "", "-73.9", "-240", t}), K::numeric, "empty latitude"},
      {line({"470", "V49", "C", "Thai", "nan", "-73.9", "-240", t}), K::numeric, "latitude nan"},
      {line({"470", "V49", "C", "Thai", "40.7", "inf", "-240", t}), K::numeric, "longitude inf"},
      {line({"470", "V49", "C", "Thai", "40.7x", "-73.9", "-240", t}), K::numeric, "latitude junk"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "841", t}), K::numeric, "offset 841"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-900", t}), K::numeric, "offset -900"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "12.5", t}), K::numeric, "offset fractional"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240",
             "Tue Apr 03 18:00:09 2012"}), K::timestamp, "missing zone"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240",
             "Mon Apr 03 18:00:09 +0000 2012"}), K::timestamp, "wrong weekday"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240",
             "Tue Apr 31 18:00:09 +0000 2012"}), K::timestamp, "April 31"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240",
             "Tue Apr 03 24:00:09 +0000 2012"}), K::timestamp, "hour 24"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240", "2012-13-01T00:00:00Z"}),
       K::timestamp, "ISO month 13"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240", "1989-12-31T23:59:59Z"}),
       K::timestamp, "before 1990"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240", "2101-01-01T00:00:00Z"}),
       K::timestamp, "after 2100"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240", "yesterday"}), K::timestamp,
       "free text"},
      {line({"470", "V49", "C", "Thai", "40.7", "-73.9", "-240", ""}), K::timestamp, "empty time"},
  };
}

SyntheticDataset synthetic_nyc(std::uint64_t seed, std::size_t valid_lines,
                               std::size_t malformed_lines) {
  Rng rng(seed);
  constexpr std::size_t kUsers = 1083;
  constexpr std::size_t kDays = 320;
  constexpr std::size_t kTopCount = 2697;
  constexpr std::size_t kFloor = 100;

  // Per-user record counts: one very active user, the rest floor + exponential
  // tail, nudged until the total is exact.
  std::vector<std::size_t> counts(kUsers, kFloor);
  std::size_t top = std::min(kTopCount, valid_lines);
  counts[0] = top;
  if (valid_lines < kFloor * kUsers) {
    // Small fixtures: spread evenly, ignore the NYC shape.
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < valid_lines; ++i) ++counts[i % kUsers];
  } else {
    double mean_extra = (static_cast<double>(valid_lines - top) / (kUsers - 1)) - kFloor;
    std::exponential_distribution<double> tail(1.0 / std::max(mean_extra, 1.0));
    for (std::size_t u = 1; u < kUsers; ++u) {
      counts[u] = kFloor + std::min<std::size_t>(static_cast<std::size_t>(tail(rng)), top - 1 - kFloor);
    }
    auto total = [&] { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); };
    std::size_t u = 1;
    while (total() != valid_lines) {
      if (total() < valid_lines && counts[u] < top - 1) ++counts[u];
      else if (total() > valid_lines && counts[u] > kFloor) --counts[u];
      u = u + 1 == kUsers ? 1 : u + 1;
    }
  }

  SyntheticDataset ds;
  ds.valid_lines = valid_lines;
  ds.malformed_lines = malformed_lines;

  auto day0 = sys_days{year{2012} / April / 3};
  auto dst_end = sys_days{year{2012} / November / 4};

  std::vector<std::pair<sys_seconds, std::string>> lines;
  lines.reserve(valid_lines);
  for (std::size_t u = 0; u < kUsers; ++u) {
    std::size_t n = counts[u];
    if (n == 0) continue;
    std::string user = std::to_string(u + 1);
    if (n > ds.most_active_count) {
      ds.most_active_count = n;
      ds.most_active_user = user;
    }

    std::vector<std::size_t> favourites(4 + rng() % 14);
    for (auto& f : favourites) f = rng() % kCategories.size();
    std::vector<double> weights(favourites.size());
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

    double per_day = 1.5 + static_cast<double>(rng() % 70) / 10.0;
    if (u == 0) per_day = 8.4;
    std::size_t active_days = std::clamp<std::size_t>(
        static_cast<std::size_t>(static_cast<double>(n) / per_day) + 1, 1, std::min(kDays, n));
    std::vector<std::size_t> day_pool(kDays);
    std::iota(day_pool.begin(), day_pool.end(), 0);
    std::shuffle(day_pool.begin(), day_pool.end(), rng);
    day_pool.resize(active_days);
    std::vector<std::size_t> per(active_days, 1);
    for (std::size_t i = active_days; i < n; ++i) ++per[rng() % active_days];

    double home_lat = 40.55 + static_cast<double>(rng() % 35000) / 100000.0;
    double home_lon = -74.2 + static_cast<double>(rng() % 45000) / 100000.0;

    for (std::size_t d = 0; d < active_days; ++d) {
      auto day = day0 + days{day_pool[d]};
      int offset = day < dst_end ? -240 : -300;
      for (std::size_t k = 0; k < per[d]; ++k) {
        std::size_t cat = rng() % 10 == 0 ? rng() % kCategories.size() : favourites[pick(rng)];
        auto local = sys_seconds{day} + seconds{6 * 3600 + static_cast<long long>(rng() % (18 * 3600))};
        auto utc = local - minutes{offset};
        double lat = home_lat + static_cast<double>(rng() % 2000) / 100000.0;
        double lon = home_lon + static_cast<double>(rng() % 2000) / 100000.0;
        lines.emplace_back(utc, tsv_line(user, "v" + std::to_string(cat) + "_" + user,
                                         "c" + std::to_string(cat), kCategories[cat], lat, lon,
                                         offset, utc));
      }
    }
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  auto corpus = malformed_corpus();
  std::vector<std::size_t> bad_at(malformed_lines);
  for (auto& b : bad_at) b = rng() % (lines.size() + 1);
  std::sort(bad_at.begin(), bad_at.end());

  ds.contents.reserve(lines.size() * 130);
  std::size_t next_bad = 0;
  for (std::size_t i = 0; i <= lines.size(); ++i) {
    while (next_bad < bad_at.size() && bad_at[next_bad] == i) {
      ds.contents += corpus[next_bad % corpus.size()].line;
      ds.contents += "\r\n";
      ++next_bad;
    }
    if (i < lines.size()) {
      ds.contents += lines[i].second;
      ds.contents += "\r\n";
    }
  }
  return ds;
}

}  // namespace mobpat::testing
