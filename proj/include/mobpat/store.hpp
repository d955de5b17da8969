#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mobpat/ingest.hpp"
#include "mobpat/pipeline.hpp"
#include "mobpat/taxonomy.hpp"

namespace mobpat {

/// Immutable view of the dataset. Users untouched by an upload are shared
/// between consecutive snapshots.
struct Snapshot {
  std::uint64_t version = 0;
  std::string taxonomy_name;
  std::shared_ptr<const LabelTaxonomy> taxonomy;
  SessionOptions session_options;
  std::map<std::string, std::shared_ptr<const UserModel>, std::less<>> users;

  const UserModel* find(std::string_view user_id) const;
};

/// Thrown when an upload contains no parseable line; carries the report.
class UploadRejected : public std::runtime_error {
 public:
  explicit UploadRejected(IngestReport report)
      : std::runtime_error("no line of the upload could be parsed"), report_(std::move(report)) {}
  const IngestReport& report() const noexcept { return report_; }

 private:
  IngestReport report_;
};

/// Versioned snapshot holder: any number of readers, one writer at a time.
/// Readers grab a shared_ptr to the current snapshot and keep using it for
/// the whole request; writers build the next snapshot off to the side and
/// swap it in under the pointer lock.
class DatasetStore {
 public:
  DatasetStore(HistoryMap initial, LabelTaxonomy taxonomy, std::string taxonomy_name = "identity",
               SessionOptions options = {});

  std::shared_ptr<const Snapshot> snapshot() const;

  struct UploadResult {
    IngestReport report;
    std::uint64_t version = 0;
  };

  /// Parses `tsv`, merges it into the current users and publishes a new
  /// snapshot. If nothing parses, throws UploadRejected and publishes
  /// nothing. `before_commit` runs after a successful parse and before the
  /// swap; if it throws, the upload is abandoned.
  UploadResult upload(std::string_view tsv,
                      const std::function<void(const IngestReport&)>& before_commit = {});

  /// Re-derives every user under a new taxonomy; returns the new version.
  std::uint64_t set_taxonomy(std::string name, LabelTaxonomy taxonomy);

 private:
  void publish(std::shared_ptr<const Snapshot> next);

  mutable std::mutex pointer_mutex_;
  std::mutex writer_mutex_;
  std::shared_ptr<const Snapshot> current_;
};

}  // namespace mobpat
