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

#include "relic/evaluation.h"

#include <chrono>
#include <set>
#include <string>

#include "relic/error.h"
#include "relic/rng.h"

namespace relic {

LoocvResult loocv(const std::vector<PreparedDesign>& designs,
                  const LoocvOptions& options, const FoldCallback& on_fold) {
  if (designs.size() < 2) {
    throw InputError("leave-one-out needs at least two designs");
  }
  std::set<std::string> names;
  for (const auto& d : designs) {
    if (!names.insert(d.corpus.design).second) {
      throw InputError("leave-one-out: design name '" + d.corpus.design + "' appears twice");
    }
  }
  LoocvResult result;
  for (std::size_t fold = 0; fold < designs.size(); ++fold) {
    const auto start = std::chrono::steady_clock::now();
    const PreparedDesign& held_out = designs[fold];
    FoldSummary summary;
    summary.held_out = held_out.corpus.design;

    std::vector<Subgraph> samples;
    for (std::size_t d = 0; d < designs.size(); ++d) {
      if (d == fold) continue;
      summary.training_designs.push_back(designs[d].corpus.design);
      for (const auto& r : designs[d].corpus.registers) samples.push_back(r.subgraph);
    }
    if (options.dedupe) samples = dedupe(samples);
    summary.training_samples = samples.size();

    TrainConfig config = options.train;
    config.seed = mix_seed(options.train.seed, fold);
    const TrainResult trained = train(samples, config);
    summary.initial_loss = trained.initial_loss;
    summary.final_loss = trained.final_loss;
    summary.max_clipped_norm = trained.max_clipped_norm;

    const DesignClassification classified =
        classify_design(trained.model, held_out.corpus, options.t1, options.t2,
                        mix_seed(options.seed, fold));
    MetricsRow row;
    row.design = held_out.corpus.design;
    row.counts = confusion(classified.labels(), held_out.truth);
    row.values = metrics(row.counts);
    summary.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (on_fold) on_fold(summary, row);
    result.report.rows.push_back(std::move(row));
    result.folds.push_back(std::move(summary));
  }
  return result;
}

WorkBounds work_bounds(int walk_length, std::uint64_t registers,
                   std::uint64_t feature_width, std::uint64_t hidden_width) {
  std::uint64_t geometric = 0;
  std::uint64_t power = 1;
  for (int i = 1; i <= walk_length - 1; ++i) {
    power *= 4;
    geometric += power;
  }
  WorkBounds b;
  b.extraction = geometric * registers;
  b.network = (geometric * feature_width * hidden_width + geometric * hidden_width) * registers;
  return b;
}

WorkBounds work_bounds(const CircuitGraph& graph, int walk_length,
                   std::uint64_t feature_width, std::uint64_t hidden_width) {
  return work_bounds(walk_length, graph.registers().size(), feature_width, hidden_width);
}

}  // namespace relic
