#pragma once

// Frequent sequential pattern mining over place-label sequences.
//
// PrefixSpan specialised to single-item elements, with pseudo-projected
// databases, a pattern length cap and an optional gap constraint. Support is
// sequence-level: a sequence counts once however many embeddings it has.
//
// Gap semantics: with max_gap = g, consecutive pattern elements matched at
// positions i < j must satisfy j - i - 1 <= g. g = 0 means contiguous.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mobpat/sessionize.hpp"

namespace mobpat {

struct SequentialPattern {
  std::vector<std::string> items;
  std::size_t support = 0;

  bool operator==(const SequentialPattern&) const = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Absolute count, or a fraction of the sequence count rounded up.
class MinSupport {
 public:
  static MinSupport absolute(std::size_t count) { return MinSupport(count); }
  static MinSupport relative(double fraction) { return MinSupport(fraction); }

  /// "3" is absolute; anything with '.' or 'e' is a fraction ("0.25", "1.0").
  /// Throws ConfigError on junk or out-of-range values.
  static MinSupport parse(std::string_view text);

  bool is_relative() const noexcept { return std::holds_alternative<double>(value_); }

  /// Throws ConfigError if the result would be < 1 for a non-empty database.
  std::size_t resolve(std::size_t sequence_count) const;

  void validate() const;

  std::string to_string() const;

  bool operator==(const MinSupport&) const = default;

 private:
  explicit MinSupport(std::size_t n) : value_(n) {}
  explicit MinSupport(double f) : value_(f) {}

  std::variant<std::size_t, double> value_;
};

struct MiningConfig {
  MinSupport min_support = MinSupport::absolute(2);
  std::size_t max_pattern_length = 10;
  std::optional<std::size_t> max_gap;

  void validate() const;
};

using ItemSequence = std::vector<std::string>;

std::vector<SequentialPattern> mine(std::span<const ItemSequence> sequences,
                                    const MiningConfig& config);

std::vector<SequentialPattern> mine(std::span<const VisitSequence> sequences,
                                    const MiningConfig& config);

/// Direct scan, independent of the projection machinery.
bool contains_pattern(std::span<const std::string> sequence, std::span<const std::string> pattern,
                      std::optional<std::size_t> max_gap);

std::size_t count_support(std::span<const std::string> pattern,
                          std::span<const ItemSequence> sequences,
                          std::optional<std::size_t> max_gap);

std::size_t count_support(std::span<const std::string> pattern,
                          std::span<const VisitSequence> sequences,
                          std::optional<std::size_t> max_gap);

/// Descending support, then ascending length, then lexicographic items.
bool canonical_less(const SequentialPattern& a, const SequentialPattern& b);

void canonical_sort(std::vector<SequentialPattern>& patterns);

nlohmann::ordered_json to_json(std::span<const SequentialPattern> patterns);

}  // namespace mobpat
