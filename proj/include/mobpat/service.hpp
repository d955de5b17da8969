#pragma once

// JSON API over a DatasetStore.
//
//   GET  /users
//   GET  /users/{id}/graph     [?min_support&max_gap]
//   GET  /users/{id}/patterns  [?min_support&max_len&max_gap]
//   GET  /users/{id}/stats     [?min_support&max_len&max_gap]
//   POST /upload               (body: check-in TSV)
//
// Every response carries the snapshot version it was computed from in the
// X-Snapshot-Version header. Errors are {"error": code, "message": text}.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobpat/lru_cache.hpp"
#include "mobpat/store.hpp"

namespace httplib {
class Server;
}

namespace mobpat {

inline constexpr std::string_view kSnapshotVersionHeader = "X-Snapshot-Version";

struct UserSummary {
  std::string user_id;
  std::size_t record_count = 0;
  Timestamp first_time{};
  Timestamp last_time{};
};

/// Descending record_count, ties by user_id.
std::vector<UserSummary> list_users(const Snapshot& snapshot);

struct ServiceOptions {
  std::size_t max_upload_bytes = 8 * 1024 * 1024;
  /// When set, accepted uploads are appended to <dir>/uploads.tsv.
  std::optional<std::filesystem::path> upload_dir;
  std::size_t memo_capacity = 256;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::uint64_t version = 0;
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

class Service {
 public:
  explicit Service(DatasetStore& store, ServiceOptions options = {});

  ApiResponse get_users() const;
  ApiResponse get_patterns(std::string_view user_id, const QueryParams& params);
  ApiResponse get_graph(std::string_view user_id, const QueryParams& params);
  ApiResponse get_stats(std::string_view user_id, const QueryParams& params);
  ApiResponse upload(std::string_view body);

  const ServiceOptions& options() const noexcept { return options_; }
  std::size_t memo_hits() const { return memo_.hits(); }
  std::size_t memo_misses() const { return memo_.misses(); }

 private:
  template <class Compute>
  ApiResponse memoized(std::string_view kind, std::string_view user_id, const QueryParams& params,
                       bool allow_max_len, Compute compute);

  DatasetStore& store_;
  ServiceOptions options_;
  LruCache<std::string, std::string> memo_;
};

/// Parses min_support / max_len / max_gap query parameters on top of the
/// MiningConfig defaults. Throws ConfigError.
MiningConfig config_from_query(const QueryParams& params, bool allow_max_len = true);

std::string error_body(std::string_view code, std::string_view message);

/// Installs the routes on `server`; `service` must outlive it.
void mount_routes(httplib::Server& server, Service& service);

/// Blocks until the server stops. Returns false if binding fails.
bool serve(Service& service, const std::string& host, int port);

}  // namespace mobpat
