#pragma once

// The ingest -> relabel -> sessionize -> mine/graph chain for one user, shared
// by the CLI and the service so both produce identical bytes.

#include <string>
#include <vector>

#include <json.hpp>

#include "mobpat/graph.hpp"
#include "mobpat/ingest.hpp"
#include "mobpat/miner.hpp"
#include "mobpat/sessionize.hpp"
#include "mobpat/taxonomy.hpp"

namespace mobpat {

struct UserModel {
  UserHistory history;
  std::vector<LabeledVisit> visits;
  std::vector<VisitSequence> sessions;
};

UserModel build_user_model(UserHistory history, const LabelTaxonomy& taxonomy,
                           SessionOptions options = {});

/// Compact JSON; invalid UTF-8 is replaced rather than thrown on.
std::string dump_json(const nlohmann::ordered_json& j);

std::vector<SequentialPattern> mine_user(const UserModel& model, const MiningConfig& config);

/// Edges carry pattern_support from length-2 patterns mined under `config`.
MobilityGraph graph_for_user(const UserModel& model, const MiningConfig& config = {});

std::string patterns_json(const UserModel& model, const MiningConfig& config);
std::string graph_json(const UserModel& model, const MiningConfig& config = {});

}  // namespace mobpat
