#include "mobpat/store.hpp"

namespace mobpat {

const UserModel* Snapshot::find(std::string_view user_id) const {
  auto it = users.find(user_id);
  return it == users.end() ? nullptr : it->second.get();
}

DatasetStore::DatasetStore(HistoryMap initial, LabelTaxonomy taxonomy, std::string taxonomy_name,
                           SessionOptions options) {
  auto snap = std::make_shared<Snapshot>();
  snap->version = 1;
  snap->taxonomy_name = std::move(taxonomy_name);
  snap->taxonomy = std::make_shared<const LabelTaxonomy>(std::move(taxonomy));
  snap->session_options = options;
  for (auto& [id, history] : initial) {
    snap->users.emplace(id, std::make_shared<const UserModel>(
                                build_user_model(std::move(history), *snap->taxonomy, options)));
  }
  current_ = std::move(snap);
}

std::shared_ptr<const Snapshot> DatasetStore::snapshot() const {
  std::lock_guard lock(pointer_mutex_);
  return current_;
}

void DatasetStore::publish(std::shared_ptr<const Snapshot> next) {
  std::lock_guard lock(pointer_mutex_);
  current_ = std::move(next);
}

DatasetStore::UploadResult DatasetStore::upload(
    std::string_view tsv, const std::function<void(const IngestReport&)>& before_commit) {
  IngestResult parsed = ingest_text(tsv);
  if (parsed.report.parsed == 0) throw UploadRejected(std::move(parsed.report));

  std::lock_guard writer(writer_mutex_);
  auto base = snapshot();
  auto next = std::make_shared<Snapshot>(*base);
  next->version = base->version + 1;

  for (auto& [id, incoming] : parsed.users) {
    HistoryMap merged;
    if (const UserModel* existing = base->find(id)) merged.emplace(id, existing->history);
    HistoryMap one;
    one.emplace(id, std::move(incoming));
    merge_histories(merged, std::move(one));
    next->users[id] = std::make_shared<const UserModel>(
        build_user_model(std::move(merged.begin()->second), *next->taxonomy, next->session_options));
  }

  if (before_commit) before_commit(parsed.report);
  publish(next);
  return {std::move(parsed.report), next->version};
}

std::uint64_t DatasetStore::set_taxonomy(std::string name, LabelTaxonomy taxonomy) {
  std::lock_guard writer(writer_mutex_);
  auto base = snapshot();
  auto next = std::make_shared<Snapshot>();
  next->version = base->version + 1;
  next->taxonomy_name = std::move(name);
  next->taxonomy = std::make_shared<const LabelTaxonomy>(std::move(taxonomy));
  next->session_options = base->session_options;
  for (const auto& [id, model] : base->users) {
    next->users.emplace(id, std::make_shared<const UserModel>(build_user_model(
                                model->history, *next->taxonomy, next->session_options)));
  }
  publish(next);
  return next->version;
}

}  // namespace mobpat
