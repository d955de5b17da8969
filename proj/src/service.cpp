#include "mobpat/service.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include <httplib.h>

namespace mobpat {
namespace {

constexpr std::size_t kTopPatterns = 10;

std::optional<std::size_t> parse_count(const QueryParams& params, std::string_view name) {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  const std::string& text = it->second;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(name) + " must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

ApiResponse json_response(int status, std::string body, std::uint64_t version) {
  return {status, std::move(body), version};
}

ApiResponse unknown_user(std::string_view user_id, std::uint64_t version) {
  return json_response(404, error_body("unknown_user", "no user '" + std::string(user_id) + "'"),
                       version);
}

void append_upload(const std::filesystem::path& dir, std::string_view body) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "uploads.tsv", std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open upload log in " + dir.string());
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!body.empty() && body.back() != '\n') out.put('\n');
  out.flush();
  if (!out) throw IoError("cannot write upload log in " + dir.string());
}

QueryParams to_params(const httplib::Request& req) {
  QueryParams params;
  for (const auto& [k, v] : req.params) params.emplace(k, v);
  return params;
}

void reply(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_header(std::string(kSnapshotVersionHeader), std::to_string(api.version));
  res.set_content(api.body, "application/json");
}

}  // namespace

std::vector<UserSummary> list_users(const Snapshot& snapshot) {
  std::vector<UserSummary> out;
  out.reserve(snapshot.users.size());
  for (const auto& [id, model] : snapshot.users) {
    const auto& records = model->history.records;
    UserSummary s{id, records.size(), {}, {}};
    if (!records.empty()) {
      s.first_time = records.front().utc_time;
      s.last_time = records.back().utc_time;
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const UserSummary& a, const UserSummary& b) {
    return a.record_count > b.record_count;
  });
  return out;
}

MiningConfig config_from_query(const QueryParams& params, bool allow_max_len) {
  MiningConfig config;
  if (auto it = params.find("min_support"); it != params.end()) {
    config.min_support = MinSupport::parse(it->second);
  }
  if (allow_max_len) {
    if (auto n = parse_count(params, "max_len")) config.max_pattern_length = *n;
  }
  config.max_gap = parse_count(params, "max_gap");
  config.validate();
  return config;
}

std::string error_body(std::string_view code, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  return dump_json(j);
}

Service::Service(DatasetStore& store, ServiceOptions options)
    : store_(store), options_(std::move(options)), memo_(options_.memo_capacity) {}

ApiResponse Service::get_users() const {
  auto snap = store_.snapshot();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& u : list_users(*snap)) {
    nlohmann::ordered_json j;
    j["user_id"] = u.user_id;
    j["record_count"] = u.record_count;
    j["first_time"] = format_iso8601(u.first_time);
    j["last_time"] = format_iso8601(u.last_time);
    arr.push_back(std::move(j));
  }
  return json_response(200, dump_json(arr), snap->version);
}

template <class Compute>
ApiResponse Service::memoized(std::string_view kind, std::string_view user_id,
                              const QueryParams& params, bool allow_max_len, Compute compute) {
  auto snap = store_.snapshot();
  const UserModel* model = snap->find(user_id);
  if (!model) return unknown_user(user_id, snap->version);

  MiningConfig config;
  try {
    config = config_from_query(params, allow_max_len);
  } catch (const ConfigError& e) {
    return json_response(400, error_body("config_error", e.what()), snap->version);
  }

  std::string key;
  key.append(kind).push_back('\x1f');
  key.append(user_id).push_back('\x1f');
  key.append(std::to_string(snap->version)).push_back('\x1f');
  key.append(config.min_support.to_string()).push_back('\x1f');
  key.append(allow_max_len ? std::to_string(config.max_pattern_length) : "-").push_back('\x1f');
  key.append(config.max_gap ? std::to_string(*config.max_gap) : "-");

  if (auto hit = memo_.get(key)) return json_response(200, std::move(*hit), snap->version);
  std::string body = compute(*model, config);
  memo_.put(key, body);
  return json_response(200, std::move(body), snap->version);
}

ApiResponse Service::get_patterns(std::string_view user_id, const QueryParams& params) {
  return memoized("patterns", user_id, params, true,
                  [](const UserModel& m, const MiningConfig& c) { return patterns_json(m, c); });
}

ApiResponse Service::get_graph(std::string_view user_id, const QueryParams& params) {
  return memoized("graph", user_id, params, false,
                  [](const UserModel& m, const MiningConfig& c) { return graph_json(m, c); });
}

ApiResponse Service::get_stats(std::string_view user_id, const QueryParams& params) {
  return memoized("stats", user_id, params, true, [](const UserModel& m, const MiningConfig& c) {
    std::set<std::string_view> labels;
    for (const auto& v : m.visits) labels.insert(v.label);
    auto patterns = mine_user(m, c);
    if (patterns.size() > kTopPatterns) patterns.resize(kTopPatterns);

    nlohmann::ordered_json j;
    j["record_count"] = m.history.records.size();
    j["distinct_labels"] = labels.size();
    j["session_count"] = m.sessions.size();
    j["top_patterns"] = to_json(std::span<const SequentialPattern>(patterns));
    return dump_json(j);
  });
}

ApiResponse Service::upload(std::string_view body) {
  if (body.size() > options_.max_upload_bytes) {
    return json_response(413,
                         error_body("too_large", "upload exceeds " +
                                                     std::to_string(options_.max_upload_bytes) +
                                                     " bytes"),
                         store_.snapshot()->version);
  }
  try {
    auto hook = [&](const IngestReport&) {
      if (options_.upload_dir) append_upload(*options_.upload_dir, body);
    };
    auto result = store_.upload(body, hook);
    return json_response(200, dump_json(to_json(result.report)), result.version);
  } catch (const UploadRejected& e) {
    const auto& r = e.report();
    return json_response(
        400,
        error_body("no_records", "none of " + std::to_string(r.total_lines) +
                                     " lines parsed (field_count=" +
                                     std::to_string(r.rejected_field_count) +
                                     ", numeric=" + std::to_string(r.rejected_numeric) +
                                     ", timestamp=" + std::to_string(r.rejected_timestamp) + ")"),
        store_.snapshot()->version);
  } catch (const std::exception& e) {
    return json_response(500, error_body("storage_error", e.what()), store_.snapshot()->version);
  }
}

void mount_routes(httplib::Server& server, Service& service) {
  server.Get("/users", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, service.get_users());
  });
  server.Get(R"(/users/([^/]+)/patterns)",
             [&service](const httplib::Request& req, httplib::Response& res) {
               reply(res, service.get_patterns(req.matches[1].str(), to_params(req)));
             });
  server.Get(R"(/users/([^/]+)/graph)",
             [&service](const httplib::Request& req, httplib::Response& res) {
               reply(res, service.get_graph(req.matches[1].str(), to_params(req)));
             });
  server.Get(R"(/users/([^/]+)/stats)",
             [&service](const httplib::Request& req, httplib::Response& res) {
               reply(res, service.get_stats(req.matches[1].str(), to_params(req)));
             });
  server.Post("/upload", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.upload(req.body));
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    std::string code = res.status == 404 ? "not_found" : "http_" + std::to_string(res.status);
    res.set_content(error_body(code, "request failed with status " + std::to_string(res.status)),
                    "application/json");
  });
}

bool serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  server.set_payload_max_length(service.options().max_upload_bytes + 1);
  mount_routes(server, service);
  return server.listen(host, port);
}

}  // namespace mobpat
