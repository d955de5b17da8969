#include "mobpat/taxonomy.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "mobpat/text.hpp"

namespace mobpat {
namespace {

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (!text_.empty() && (text_.front() == ' ' || text_.front() == '\t')) text_.remove_prefix(1);
  }

  bool at_end() const { return text_.empty(); }

  std::string_view word() {
    skip_space();
    std::size_t n = 0;
    while (n < text_.size() && text_[n] != ' ' && text_[n] != '\t' && text_[n] != '"') ++n;
    auto w = text_.substr(0, n);
    text_.remove_prefix(n);
    return w;
  }

  std::string quoted() {
    skip_space();
    if (text_.empty() || text_.front() != '"') fail("expected a quoted string");
    text_.remove_prefix(1);
    std::string out;
    while (true) {
      if (text_.empty()) fail("unterminated quoted string");
      char c = text_.front();
      text_.remove_prefix(1);
      if (c == '"') return out;
      if (c == '\\') {
        if (text_.empty() || (text_.front() != '"' && text_.front() != '\\')) {
          fail("invalid escape in quoted string");
        }
        c = text_.front();
        text_.remove_prefix(1);
      }
      out.push_back(c);
    }
  }

  void expect(std::string_view token) {
    skip_space();
    if (text_.substr(0, token.size()) != token) fail("expected '" + std::string(token) + "'");
    text_.remove_prefix(token.size());
  }

  void expect_end() {
    skip_space();
    if (!text_.empty()) fail("unexpected trailing text");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(line_, "taxonomy line " + std::to_string(line_) + ": " + msg);
  }

 private:
  std::string_view text_;
  std::size_t line_;
};

bool matches(MatchKind kind, std::string_view folded_category, std::string_view folded_pattern) {
  switch (kind) {
    case MatchKind::exact: return folded_category == folded_pattern;
    case MatchKind::prefix: return folded_category.substr(0, folded_pattern.size()) == folded_pattern;
    case MatchKind::substring: return folded_category.find(folded_pattern) != std::string_view::npos;
  }
  return false;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string_view keyword(MatchKind kind) {
  switch (kind) {
    case MatchKind::exact: return "exact";
    case MatchKind::prefix: return "prefix";
    case MatchKind::substring: return "substring";
  }
  return "";
}

}  // namespace

LabelTaxonomy::LabelTaxonomy(std::vector<Rule> rules, std::optional<std::string> fallback_label)
    : rules_(std::move(rules)), fallback_(std::move(fallback_label)) {
  folded_patterns_.reserve(rules_.size());
  for (const auto& r : rules_) {
    if (r.label.empty()) throw EmptyLabelError(0, "taxonomy rule has an empty label");
    folded_patterns_.push_back(ascii_lower(r.pattern));
  }
  if (fallback_ && fallback_->empty()) throw EmptyLabelError(0, "default label is empty");
}

std::string LabelTaxonomy::label_for(std::string_view category) const {
  if (!rules_.empty()) {
    std::string folded = ascii_lower(category);
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (matches(rules_[i].kind, folded, folded_patterns_[i])) return rules_[i].label;
    }
  }
  return fallback_ ? *fallback_ : std::string(category);
}

LabelTaxonomy parse_taxonomy(std::string_view text) {
  std::vector<Rule> rules;
  std::optional<std::string> fallback;
  bool saw_default = false;
  std::size_t line_number = 0;

  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_number;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    LineCursor cur(line, line_number);
    if (saw_default) cur.fail("'default' must be the last rule line");

    std::string_view kw = cur.word();
    if (kw == "default") {
      saw_default = true;
      cur.skip_space();
      if (!cur.at_end() && line.find('"') != std::string_view::npos) {
        std::string label = cur.quoted();
        cur.expect_end();
        if (label.empty()) {
          throw EmptyLabelError(line_number,
                                "taxonomy line " + std::to_string(line_number) + ": empty default label");
        }
        fallback = std::move(label);
      } else {
        if (cur.word() != "passthrough") cur.fail("expected 'passthrough' or a quoted label");
        cur.expect_end();
      }
      continue;
    }

    Rule rule;
    if (kw == "exact") {
      rule.kind = MatchKind::exact;
    } else if (kw == "prefix") {
      rule.kind = MatchKind::prefix;
    } else if (kw == "substring") {
      rule.kind = MatchKind::substring;
    } else {
      cur.fail("expected exact, prefix, substring or default");
    }
    rule.pattern = cur.quoted();
    cur.expect("->");
    rule.label = cur.quoted();
    cur.expect_end();
    if (rule.label.empty()) {
      throw EmptyLabelError(line_number,
                            "taxonomy line " + std::to_string(line_number) + ": empty label");
    }
    rules.push_back(std::move(rule));
  }
  return LabelTaxonomy(std::move(rules), std::move(fallback));
}

LabelTaxonomy load_taxonomy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_taxonomy(text);
}

std::string render_taxonomy(const LabelTaxonomy& taxonomy) {
  std::ostringstream out;
  for (const auto& r : taxonomy.rules()) {
    out << keyword(r.kind) << ' ' << quote(r.pattern) << " -> " << quote(r.label) << '\n';
  }
  if (taxonomy.fallback_label()) {
    out << "default " << quote(*taxonomy.fallback_label()) << '\n';
  } else {
    out << "default passthrough\n";
  }
  return out.str();
}

std::vector<LabeledVisit> relabel(const UserHistory& history, const LabelTaxonomy& taxonomy) {
  std::vector<LabeledVisit> out;
  out.reserve(history.records.size());
  for (const auto& r : history.records) {
    out.push_back({r.user_id, taxonomy.label_for(r.venue_category_name), r.utc_time,
                   r.tz_offset_minutes, r.venue_id});
  }
  return out;
}

std::vector<LabeledVisit> relabel(std::span<const LabeledVisit> visits,
                                  const LabelTaxonomy& taxonomy) {
  std::vector<LabeledVisit> out(visits.begin(), visits.end());
  for (auto& v : out) v.label = taxonomy.label_for(v.label);
  return out;
}

}  // namespace mobpat
