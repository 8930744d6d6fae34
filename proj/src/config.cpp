// Copyright 2026 The rwelect Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rwelect/config.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace rwelect {

ElectionConfig ElectionConfig::with_nodes(std::size_t nodes) {
  ElectionConfig config;
  config.membership.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) config.membership[i] = static_cast<NodeId>(i);
  return config;
}

bool ElectionConfig::contains(NodeId id) const {
  return std::find(membership.begin(), membership.end(), id) != membership.end();
}

void ElectionConfig::validate() const {
  const auto v = membership.size();
  if (v < 3) {
    throw ConfigError("cluster needs at least 3 nodes, got " + std::to_string(v));
  }
  std::set<NodeId> seen;
  for (NodeId id : membership) {
    if (id >= v) {
      throw ConfigError("node id " + std::to_string(id) + " not below cluster size " +
                        std::to_string(v));
    }
    if (!seen.insert(id).second) {
      throw ConfigError("duplicate node id " + std::to_string(id));
    }
  }
  if (streak_len == 0) throw ConfigError("streak length must be positive");
  if (leader_miss_limit == 0) throw ConfigError("leader miss limit must be positive");
  if (draw_period_ms <= 0 || vote_timeout_ms <= 0 || leader_ack_timeout_ms <= 0 ||
      heartbeat_interval_ms <= 0) {
    throw ConfigError("all durations must be positive");
  }
}

}  // namespace rwelect
