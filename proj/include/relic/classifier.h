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

#ifndef RELIC_CLASSIFIER_H_
#define RELIC_CLASSIFIER_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace relic {

using RegisterId = std::size_t;

inline constexpr double kDefaultT1 = 1e-3;
inline constexpr std::size_t kDefaultT2 = 4;

enum class RegisterLabel { kState, kData };

const char* to_string(RegisterLabel label);

// Feature difference value between two scalar embeddings.
inline double fdv(double a, double b) { return a > b ? a - b : b - a; }

struct Cluster {
  RegisterId seed_register = 0;      // the starting register of the group
  std::vector<RegisterId> members;   // seed first, then ascending id
};

struct ClusterSet {
  std::vector<Cluster> groups;  // in creation order
};

// Greedy grouping: repeatedly draw a starting register uniformly from the
// remaining candidates and take every candidate whose FDV to it is strictly
// below t1. Stops once at most one candidate is left; that one becomes a
// singleton group.
ClusterSet cluster(const std::map<RegisterId, double>& embeddings, double t1,
                   std::uint64_t seed);

struct Assignment {
  RegisterLabel label = RegisterLabel::kData;
  std::size_t group = 0;
  std::size_t group_size = 0;
};

struct Classification {
  std::map<RegisterId, Assignment> labels;

  std::size_t count(RegisterLabel label) const;
};

// Groups smaller than t2 are state registers, the rest data registers.
Classification label_groups(const ClusterSet& clusters, std::size_t t2);

Classification classify(const std::map<RegisterId, double>& embeddings,
                        double t1, std::size_t t2, std::uint64_t seed);

}  // namespace relic

#endif  // RELIC_CLASSIFIER_H_
