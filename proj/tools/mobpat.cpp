// mobpat: batch front end for ingest, mining and graph export, plus the API server.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mobpat/ingest.hpp"
#include "mobpat/pipeline.hpp"
#include "mobpat/service.hpp"
#include "mobpat/store.hpp"
#include "mobpat/taxonomy.hpp"

namespace fs = std::filesystem;
using namespace mobpat;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "-" means stdout; otherwise temp file + rename so readers never see a partial file.
void write_output(const std::string& path, const std::string& contents) {
  if (path == "-") {
    std::cout << contents;
    std::cout.flush();
    return;
  }
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw DataError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw DataError("cannot rename onto " + target.string() + ": " + ec.message());
  }
}

IngestResult load_input(const std::string& path) {
  IngestResult result = ingest_file(path);
  const auto& r = result.report;
  if (r.rejected() > 0) {
    std::cerr << "warning: " << r.rejected() << " of " << r.total_lines << " lines rejected\n";
    for (const auto& s : r.samples) std::cerr << "  " << s.message << '\n';
  }
  return result;
}

LabelTaxonomy load_optional_taxonomy(const std::string& path) {
  return path.empty() ? LabelTaxonomy{} : load_taxonomy(path);
}

UserModel load_user(const std::string& input, const std::string& taxonomy_path,
                    const std::string& user_id, bool no_collapse) {
  LabelTaxonomy taxonomy = load_optional_taxonomy(taxonomy_path);
  IngestResult data = load_input(input);
  auto it = data.users.find(user_id);
  if (it == data.users.end()) throw DataError("user '" + user_id + "' not found in " + input);
  return build_user_model(std::move(it->second), taxonomy, {.collapse_adjacent_duplicates = !no_collapse});
}

MiningConfig make_config(const std::string& min_support, std::optional<std::size_t> max_len,
                         std::optional<std::size_t> max_gap) {
  MiningConfig config;
  try {
    config.min_support = MinSupport::parse(min_support);
    if (max_len) config.max_pattern_length = *max_len;
    config.max_gap = max_gap;
    config.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine frequent mobility patterns from check-in histories"};
  app.require_subcommand(1);

  const MiningConfig defaults;

  std::string input;
  std::string taxonomy_path;
  std::string user_id;
  std::string out_path = "-";
  std::string report_path;
  std::string min_support = defaults.min_support.to_string();
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> max_gap;
  bool no_collapse = false;
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::string upload_dir;
  std::size_t max_upload_bytes = ServiceOptions{}.max_upload_bytes;

  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a check-in file and emit the ingest report");
  ingest_cmd->add_option("--input", input, "Check-in TSV file")->required();
  ingest_cmd->add_option("--report", report_path, "Write the report JSON here instead of stdout");

  auto add_user_options = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "Check-in TSV file")->required();
    cmd->add_option("--taxonomy", taxonomy_path, "Label rule file (identity if omitted)");
    cmd->add_option("--user", user_id, "User id")->required();
    cmd->add_option("--out", out_path, "Output JSON path, '-' for stdout")->capture_default_str();
    cmd->add_option("--min-support", min_support, "Absolute count or fraction in (0,1]")
        ->capture_default_str();
    cmd->add_option("--max-gap", max_gap, "Max skipped items between pattern elements");
    cmd->add_flag("--no-collapse", no_collapse, "Keep adjacent duplicate visits within a day");
  };

  auto* mine_cmd = app.add_subcommand("mine", "Mine one user's frequent patterns");
  add_user_options(mine_cmd);
  mine_cmd->add_option("--max-len", max_len, "Maximum pattern length")
      ->default_str(std::to_string(defaults.max_pattern_length));

  auto* graph_cmd = app.add_subcommand("graph", "Build one user's mobility graph");
  add_user_options(graph_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON API");
  serve_cmd->add_option("--input", input, "Check-in TSV file loaded at startup");
  serve_cmd->add_option("--taxonomy", taxonomy_path, "Label rule file (identity if omitted)");
  serve_cmd->add_option("--bind", bind, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", port, "Port")->capture_default_str();
  serve_cmd->add_option("--upload-dir", upload_dir,
                        "Append accepted uploads to <dir>/uploads.tsv and replay them at startup");
  serve_cmd->add_option("--max-upload-bytes", max_upload_bytes, "Upload size limit")
      ->capture_default_str();
  serve_cmd->add_flag("--no-collapse", no_collapse, "Keep adjacent duplicate visits within a day");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) {
      IngestResult data = load_input(input);
      std::string json = dump_json(to_json(data.report));
      write_output(report_path.empty() ? "-" : report_path, json);
      return 0;
    }
    if (*mine_cmd) {
      MiningConfig config = make_config(min_support, max_len, max_gap);
      UserModel model = load_user(input, taxonomy_path, user_id, no_collapse);
      write_output(out_path, patterns_json(model, config));
      return 0;
    }
    if (*graph_cmd) {
      MiningConfig config = make_config(min_support, std::nullopt, max_gap);
      UserModel model = load_user(input, taxonomy_path, user_id, no_collapse);
      write_output(out_path, graph_json(model, config));
      return 0;
    }
    if (*serve_cmd) {
      LabelTaxonomy taxonomy = load_optional_taxonomy(taxonomy_path);
      std::string taxonomy_name =
          taxonomy_path.empty() ? "identity" : fs::path(taxonomy_path).stem().string();
      HistoryMap users;
      if (!input.empty()) users = load_input(input).users;
      ServiceOptions options;
      options.max_upload_bytes = max_upload_bytes;
      if (!upload_dir.empty()) {
        options.upload_dir = upload_dir;
        fs::path log = fs::path(upload_dir) / "uploads.tsv";
        if (fs::exists(log)) merge_histories(users, load_input(log.string()).users);
      }
      DatasetStore store(std::move(users), std::move(taxonomy), taxonomy_name,
                         {.collapse_adjacent_duplicates = !no_collapse});
      Service service(store, options);
      std::cerr << "listening on " << bind << ':' << port << " (" << store.snapshot()->users.size()
                << " users)\n";
      if (!serve(service, bind, port)) {
        std::cerr << "error: cannot bind " << bind << ':' << port << '\n';
        return kExitData;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
