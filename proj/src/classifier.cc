// Copyright 2026 The Relic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relic/classifier.h"

#include "relic/error.h"
#include "relic/rng.h"

namespace relic {

const char* to_string(RegisterLabel label) {
  return label == RegisterLabel::kState ? "STATE" : "DATA";
}

std::size_t Classification::count(RegisterLabel label) const {
  std::size_t n = 0;
  for (const auto& [id, a] : labels) n += a.label == label ? 1 : 0;
  return n;
}

ClusterSet cluster(const std::map<RegisterId, double>& embeddings, double t1,
                   std::uint64_t seed) {
  if (!(t1 > 0.0)) throw InputError("t1 must be positive");
  std::vector<std::pair<RegisterId, double>> candidates(embeddings.begin(),
                                                        embeddings.end());
  Rng rng(seed);
  ClusterSet result;
  while (candidates.size() > 1) {
    const auto pick = static_cast<std::size_t>(rng.below(candidates.size()));
    const auto [srn, value] = candidates[pick];
    Cluster group;
    group.seed_register = srn;
    group.members.push_back(srn);
    std::vector<std::pair<RegisterId, double>> remaining;
    remaining.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (i == pick) continue;
      if (fdv(value, candidates[i].second) < t1) {
        group.members.push_back(candidates[i].first);
      } else {
        remaining.push_back(candidates[i]);
      }
    }
    result.groups.push_back(std::move(group));
    candidates = std::move(remaining);
  }
  if (candidates.size() == 1) {
    result.groups.push_back({candidates[0].first, {candidates[0].first}});
  }
  return result;
}

Classification label_groups(const ClusterSet& clusters, std::size_t t2) {
  Classification result;
  for (std::size_t g = 0; g < clusters.groups.size(); ++g) {
    const auto& members = clusters.groups[g].members;
    const RegisterLabel label =
        members.size() < t2 ? RegisterLabel::kState : RegisterLabel::kData;
    for (RegisterId id : members) {
      if (!result.labels.emplace(id, Assignment{label, g, members.size()}).second) {
        throw InputError("register " + std::to_string(id) +
                         " appears in more than one group");
      }
    }
  }
  return result;
}

Classification classify(const std::map<RegisterId, double>& embeddings,
                        double t1, std::size_t t2, std::uint64_t seed) {
  return label_groups(cluster(embeddings, t1, seed), t2);
}

}  // namespace relic
