#include "mobpat/miner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace mobpat {
namespace {

using ItemId = std::uint32_t;
using Position = std::uint32_t;

/// Sequences over dense item ids. Ids follow lexicographic label order, so
/// comparing id vectors orders patterns the same way as comparing labels.
struct EncodedDb {
  std::vector<std::string> alphabet;
  std::vector<std::vector<ItemId>> sequences;
};

template <class ItemsOf>
EncodedDb encode(std::size_t count, ItemsOf items_of) {
  EncodedDb db;
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& label : items_of(i)) db.alphabet.push_back(label);
  }
  std::sort(db.alphabet.begin(), db.alphabet.end());
  db.alphabet.erase(std::unique(db.alphabet.begin(), db.alphabet.end()), db.alphabet.end());

  std::unordered_map<std::string_view, ItemId> ids;
  ids.reserve(db.alphabet.size());
  for (std::size_t i = 0; i < db.alphabet.size(); ++i) {
    ids.emplace(db.alphabet[i], static_cast<ItemId>(i));
  }
  db.sequences.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& src = items_of(i);
    auto& dst = db.sequences[i];
    dst.reserve(src.size());
    for (const auto& label : src) dst.push_back(ids.at(label));
  }
  return db;
}

/// Pseudo-projected database for one prefix: every sequence that still
/// supports the prefix, with the positions where the prefix's last element
/// can end. Without a gap limit only the leftmost end is kept, since it
/// dominates every later one.
struct Projection {
  std::vector<std::uint32_t> sequence;
  std::vector<std::uint32_t> offsets{0};
  std::vector<Position> ends;

  std::size_t size() const { return sequence.size(); }

  std::span<const Position> ends_of(std::size_t entry) const {
    return {ends.data() + offsets[entry], ends.data() + offsets[entry + 1]};
  }

  void close_entry(std::uint32_t seq) {
    if (ends.size() == offsets.back()) return;
    sequence.push_back(seq);
    offsets.push_back(static_cast<std::uint32_t>(ends.size()));
  }
};

class PrefixSpan {
 public:
  PrefixSpan(const EncodedDb& db, std::size_t min_support, std::size_t max_length,
             std::optional<std::size_t> max_gap)
      : db_(db),
        min_support_(min_support),
        max_length_(max_length),
        max_gap_(max_gap),
        counts_(db.alphabet.size(), 0),
        last_entry_(db.alphabet.size(), kNone) {}

  std::vector<SequentialPattern> run() {
    Projection root;
    // Root ends are "before the first item"; a first element has no gap bound.
    for (std::uint32_t s = 0; s < db_.sequences.size(); ++s) {
      if (db_.sequences[s].empty()) continue;
      root.ends.push_back(kBeforeStart);
      root.close_entry(s);
    }
    grow(root);
    canonical_sort(out_);
    return std::move(out_);
  }

 private:
  static constexpr Position kBeforeStart = std::numeric_limits<Position>::max();
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // First position after `end` that may hold the next element, and one past
  // the last such position.
  std::pair<std::size_t, std::size_t> window(Position end, std::size_t length) const {
    if (end == kBeforeStart) return {0, length};
    std::size_t first = static_cast<std::size_t>(end) + 1;
    if (!max_gap_) return {first, length};
    return {first, std::min(length, first + *max_gap_ + 1)};
  }

  void grow(const Projection& proj) {
    // Count, per candidate item, the projected sequences it can extend.
    std::vector<ItemId> touched;
    for (std::size_t e = 0; e < proj.size(); ++e) {
      const auto& seq = db_.sequences[proj.sequence[e]];
      for (Position end : proj.ends_of(e)) {
        auto [lo, hi] = window(end, seq.size());
        for (std::size_t p = lo; p < hi; ++p) {
          ItemId x = seq[p];
          if (last_entry_[x] == e) continue;
          if (last_entry_[x] == kNone) touched.push_back(x);
          last_entry_[x] = e;
          ++counts_[x];
        }
      }
    }

    std::vector<std::pair<ItemId, std::size_t>> frequent;
    for (ItemId x : touched) {
      if (counts_[x] >= min_support_) frequent.emplace_back(x, counts_[x]);
      counts_[x] = 0;
      last_entry_[x] = kNone;
    }
    std::sort(frequent.begin(), frequent.end());

    for (auto [x, support] : frequent) {
      Projection child = project(proj, x);
      prefix_.push_back(x);
      emit(support);
      if (prefix_.size() < max_length_) grow(child);
      prefix_.pop_back();
    }
  }

  Projection project(const Projection& proj, ItemId x) const {
    Projection child;
    for (std::size_t e = 0; e < proj.size(); ++e) {
      const auto s = proj.sequence[e];
      const auto& seq = db_.sequences[s];
      std::size_t next_free = 0;
      for (Position end : proj.ends_of(e)) {
        auto [lo, hi] = window(end, seq.size());
        for (std::size_t p = std::max(lo, next_free); p < hi; ++p) {
          if (seq[p] != x) continue;
          child.ends.push_back(static_cast<Position>(p));
          next_free = p + 1;
          if (!max_gap_) break;
        }
        if (!max_gap_ && child.ends.size() > child.offsets.back()) break;
      }
      child.close_entry(s);
    }
    return child;
  }

  void emit(std::size_t support) {
    SequentialPattern p;
    p.items.reserve(prefix_.size());
    for (ItemId id : prefix_) p.items.push_back(db_.alphabet[id]);
    p.support = support;
    out_.push_back(std::move(p));
  }

  const EncodedDb& db_;
  std::size_t min_support_;
  std::size_t max_length_;
  std::optional<std::size_t> max_gap_;

  std::vector<std::size_t> counts_;
  std::vector<std::size_t> last_entry_;
  std::vector<ItemId> prefix_;
  std::vector<SequentialPattern> out_;
};

// Pattern element k may be matched at any position in [from, to).
bool match_from(std::span<const std::string> seq, std::span<const std::string> pattern,
                std::size_t k, std::size_t from, std::size_t to,
                std::optional<std::size_t> max_gap) {
  if (k == pattern.size()) return true;
  for (std::size_t p = from; p < std::min(to, seq.size()); ++p) {
    if (seq[p] != pattern[k]) continue;
    std::size_t next_to = max_gap ? p + 1 + *max_gap + 1 : seq.size();
    if (match_from(seq, pattern, k + 1, p + 1, next_to, max_gap)) return true;
    if (!max_gap) return false;  // leftmost match dominates without a gap bound
  }
  return false;
}

}  // namespace

MinSupport MinSupport::parse(std::string_view text) {
  if (text.empty()) throw ConfigError("min_support is empty");
  bool fractional = text.find_first_of(".eE") != std::string_view::npos;
  if (fractional) {
    double f = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), f);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ConfigError("min_support is not a number: '" + std::string(text) + "'");
    }
    MinSupport m = relative(f);
    m.validate();
    return m;
  }
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("min_support is not a non-negative integer: '" + std::string(text) + "'");
  }
  MinSupport m = absolute(n);
  m.validate();
  return m;
}

void MinSupport::validate() const {
  if (auto* f = std::get_if<double>(&value_)) {
    if (!(*f > 0.0 && *f <= 1.0)) throw ConfigError("relative min_support must be in (0, 1]");
  } else if (std::get<std::size_t>(value_) < 1) {
    throw ConfigError("min_support must be >= 1");
  }
}

std::size_t MinSupport::resolve(std::size_t sequence_count) const {
  validate();
  if (auto* n = std::get_if<std::size_t>(&value_)) return *n;
  if (sequence_count == 0) return 1;
  double raw = std::get<double>(value_) * static_cast<double>(sequence_count);
  // Absorb representation error so that e.g. 0.7 * 10 resolves to 7, not 8.
  auto n = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  if (n < 1) throw ConfigError("min_support resolves to 0");
  return n;
}

std::string MinSupport::to_string() const {
  if (auto* n = std::get_if<std::size_t>(&value_)) return std::to_string(*n);
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  std::string s(buf, ptr);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void MiningConfig::validate() const {
  min_support.validate();
  if (max_pattern_length < 1) throw ConfigError("max_pattern_length must be >= 1");
}

std::vector<SequentialPattern> mine(std::span<const ItemSequence> sequences,
                                    const MiningConfig& config) {
  config.validate();
  if (sequences.empty()) return {};
  EncodedDb db = encode(sequences.size(), [&](std::size_t i) -> const ItemSequence& {
    return sequences[i];
  });
  std::size_t min_support = config.min_support.resolve(sequences.size());
  return PrefixSpan(db, min_support, config.max_pattern_length, config.max_gap).run();
}

std::vector<SequentialPattern> mine(std::span<const VisitSequence> sequences,
                                    const MiningConfig& config) {
  config.validate();
  if (sequences.empty()) return {};
  EncodedDb db = encode(sequences.size(), [&](std::size_t i) -> const ItemSequence& {
    return sequences[i].items;
  });
  std::size_t min_support = config.min_support.resolve(sequences.size());
  return PrefixSpan(db, min_support, config.max_pattern_length, config.max_gap).run();
}

bool contains_pattern(std::span<const std::string> sequence, std::span<const std::string> pattern,
                      std::optional<std::size_t> max_gap) {
  if (pattern.empty()) return true;
  return match_from(sequence, pattern, 0, 0, sequence.size(), max_gap);
}

std::size_t count_support(std::span<const std::string> pattern,
                          std::span<const ItemSequence> sequences,
                          std::optional<std::size_t> max_gap) {
  std::size_t n = 0;
  for (const auto& s : sequences) n += contains_pattern(s, pattern, max_gap) ? 1 : 0;
  return n;
}

std::size_t count_support(std::span<const std::string> pattern,
                          std::span<const VisitSequence> sequences,
                          std::optional<std::size_t> max_gap) {
  std::size_t n = 0;
  for (const auto& s : sequences) n += contains_pattern(s.items, pattern, max_gap) ? 1 : 0;
  return n;
}

bool canonical_less(const SequentialPattern& a, const SequentialPattern& b) {
  if (a.support != b.support) return a.support > b.support;
  if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
  return a.items < b.items;
}

void canonical_sort(std::vector<SequentialPattern>& patterns) {
  std::sort(patterns.begin(), patterns.end(), canonical_less);
}

nlohmann::ordered_json to_json(std::span<const SequentialPattern> patterns) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : patterns) {
    nlohmann::ordered_json j;
    j["items"] = p.items;
    j["support"] = p.support;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace mobpat
