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

#ifndef RELIC_TRAINER_H_
#define RELIC_TRAINER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "relic/gate_model.h"

namespace relic {

struct TrainConfig {
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  int epochs = 200;
  double gradient_clip = 5.0;
  std::uint64_t seed = 1;
  int heads = 4;
  int hidden = 64;
  Activation activation = Activation::kRelu;
  Activation embedding_activation = Activation::kLinear;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Weight of the optional edge-reconstruction term; 0 disables it.
  double structure_weight = 0.0;

  ModelShape model_shape() const;
  // Throws InputError unless every hyperparameter is strictly positive.
  void validate() const;
};

struct AdamState {
  ParamVector m;
  ParamVector v;
  std::int64_t t = 0;
};

struct StepStats {
  double grad_norm = 0.0;     // before clipping
  double clipped_norm = 0.0;  // after clipping
};

double l2_norm(std::span<const double> values);

// Rescales `grads` in place so its L2 norm is at most `max_norm`.
// Returns the norm before clipping.
double clip_gradient(std::span<double> grads, double max_norm);

// Global clipping, decoupled weight decay, then a bias-corrected Adam update.
// Throws NumericalError on a non-finite gradient.
StepStats adam_step(std::span<double> params, std::span<double> grads,
                    AdamState& state, const TrainConfig& config);

struct TrainResult {
  GateModel model;
  std::vector<double> epoch_loss;  // mean loss seen during each epoch
  double initial_loss = 0.0;       // corpus mean before any update
  double final_loss = 0.0;         // corpus mean after training
  double max_clipped_norm = 0.0;
  double max_grad_norm = 0.0;
};

using EpochCallback = std::function<void(int epoch, double mean_loss)>;

// One forward/backward/update per subgraph, in a seeded shuffled order that
// changes every epoch. Throws InputError on an empty corpus and
// NumericalError (naming the epoch) when the loss stops being finite.
TrainResult train(std::span<const Subgraph> corpus, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

double mean_loss(const GateModel& model, std::span<const Subgraph> corpus,
                 const LossOptions& options = {});

}  // namespace relic

#endif  // RELIC_TRAINER_H_
