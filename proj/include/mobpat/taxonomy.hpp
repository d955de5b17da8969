#pragma once

// Rewrites venue categories into abstract place labels.
//
// Rule file grammar (UTF-8, one rule per line):
//
//   exact|prefix|substring "<pattern>" -> "<label>"
//   default passthrough
//   default "<label>"
//
// Blank lines and '#' comments are ignored. The optional `default` line must
// come last. Inside quotes, \" and \\ are escapes. Matching is ASCII
// case-insensitive and the first matching rule wins.

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mobpat/ingest.hpp"

namespace mobpat {

enum class MatchKind { exact, prefix, substring };

struct Rule {
  MatchKind kind = MatchKind::exact;
  std::string pattern;
  std::string label;
};

class TaxonomyError : public std::runtime_error {
 public:
  TaxonomyError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SyntaxError : public TaxonomyError {
 public:
  using TaxonomyError::TaxonomyError;
};

class EmptyLabelError : public TaxonomyError {
 public:
  using TaxonomyError::TaxonomyError;
};

class LabelTaxonomy {
 public:
  /// Identity taxonomy: no rules, passthrough default.
  LabelTaxonomy() = default;

  /// Throws EmptyLabelError (line 0) if any label or the fallback is empty.
  explicit LabelTaxonomy(std::vector<Rule> rules,
                         std::optional<std::string> fallback_label = std::nullopt);

  const std::vector<Rule>& rules() const noexcept { return rules_; }

  /// nullopt means passthrough.
  const std::optional<std::string>& fallback_label() const noexcept { return fallback_; }

  bool is_identity() const noexcept { return rules_.empty() && !fallback_; }

  std::string label_for(std::string_view category) const;

 private:
  std::vector<Rule> rules_;
  std::vector<std::string> folded_patterns_;
  std::optional<std::string> fallback_;
};

LabelTaxonomy parse_taxonomy(std::string_view text);
LabelTaxonomy load_taxonomy(const std::filesystem::path& path);

/// Inverse of parse_taxonomy up to comments and whitespace.
std::string render_taxonomy(const LabelTaxonomy& taxonomy);

struct LabeledVisit {
  std::string user_id;
  std::string label;
  Timestamp utc_time{};
  int tz_offset_minutes = 0;
  std::string venue_id;

  bool operator==(const LabeledVisit&) const = default;
};

std::vector<LabeledVisit> relabel(const UserHistory& history, const LabelTaxonomy& taxonomy);

/// Relabels an already-labeled stream, treating each label as a category.
std::vector<LabeledVisit> relabel(std::span<const LabeledVisit> visits,
                                  const LabelTaxonomy& taxonomy);

}  // namespace mobpat
