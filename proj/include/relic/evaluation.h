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

#ifndef RELIC_EVALUATION_H_
#define RELIC_EVALUATION_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "relic/corpus.h"
#include "relic/metrics.h"
#include "relic/trainer.h"

namespace relic {

struct PreparedDesign {
  DesignCorpus corpus;
  GroundTruth truth;
};

struct LoocvOptions {
  TrainConfig train;
  double t1 = kDefaultT1;
  std::size_t t2 = kDefaultT2;
  std::uint64_t seed = 1;
  // Train on distinct subgraphs only. Identical subgraphs yield identical
  // gradients, so this changes sample weighting, not the sample space.
  bool dedupe = true;
};

struct FoldSummary {
  std::string held_out;
  std::size_t training_samples = 0;
  std::vector<std::string> training_designs;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  double max_clipped_norm = 0.0;
  double seconds = 0.0;
};

struct LoocvResult {
  MetricsReport report;
  std::vector<FoldSummary> folds;
};

using FoldCallback = std::function<void(const FoldSummary&, const MetricsRow&)>;

// Leave-one-out cross-validation: for every design, train on all others,
// classify the held-out one and score it. Fold k trains with seed
// mix_seed(seed, k). Requires at least two designs.
LoocvResult loocv(const std::vector<PreparedDesign>& designs,
                  const LoocvOptions& options, const FoldCallback& on_fold = {});

// Closed-form work bounds with S = sum_{i=1}^{L-1} 4^i, R registers, input
// width F and hidden width H:
//   extraction = S * R
//   network    = (S * F * H + S * H) * R
struct WorkBounds {
  std::uint64_t extraction = 0;
  std::uint64_t network = 0;
};

WorkBounds work_bounds(int walk_length, std::uint64_t registers,
                   std::uint64_t feature_width = kFeatureWidth,
                   std::uint64_t hidden_width = 64);
WorkBounds work_bounds(const CircuitGraph& graph, int walk_length,
                   std::uint64_t feature_width = kFeatureWidth,
                   std::uint64_t hidden_width = 64);

}  // namespace relic

#endif  // RELIC_EVALUATION_H_
