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

#include "relic/trainer.h"

#include <cmath>
#include <numeric>

#include <Eigen/Core>

#include "relic/error.h"
#include "relic/rng.h"

namespace relic {

ModelShape TrainConfig::model_shape() const {
  ModelShape shape;
  const int f = static_cast<int>(kFeatureWidth);
  shape.dims = {f, hidden, hidden, 1, hidden, hidden, f};
  shape.heads = heads;
  shape.activation = activation;
  shape.embedding_activation = embedding_activation;
  return shape;
}

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InputError(std::string("training config: ") + what);
  };
  require(learning_rate > 0.0, "learning rate must be positive");
  require(weight_decay > 0.0, "weight decay must be positive");
  require(epochs > 0, "epochs must be positive");
  require(gradient_clip > 0.0, "gradient clip must be positive");
  require(heads > 0, "heads must be positive");
  require(hidden > 0, "hidden width must be positive");
  require(beta1 > 0.0 && beta1 < 1.0, "beta1 must lie in (0, 1)");
  require(beta2 > 0.0 && beta2 < 1.0, "beta2 must lie in (0, 1)");
  require(epsilon > 0.0, "epsilon must be positive");
  require(structure_weight >= 0.0, "structure weight must be non-negative");
}

double l2_norm(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

double clip_gradient(std::span<double> grads, double max_norm) {
  const double norm = l2_norm(grads);
  if (norm > max_norm) {
    const double scale = max_norm / norm;
    for (double& g : grads) g *= scale;
  }
  return norm;
}

StepStats adam_step(std::span<double> params, std::span<double> grads,
                    AdamState& state, const TrainConfig& config) {
  if (params.size() != grads.size()) {
    throw InputError("adam: gradient size differs from parameter size");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) throw NumericalError("adam: non-finite gradient entry");
  }
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
    state.t = 0;
  }
  StepStats stats;
  stats.grad_norm = clip_gradient(grads, config.gradient_clip);
  stats.clipped_norm = l2_norm(grads);

  ++state.t;
  const double t = static_cast<double>(state.t);
  const double bias1 = 1.0 - std::pow(config.beta1, t);
  const double bias2 = 1.0 - std::pow(config.beta2, t);
  const double lr = config.learning_rate;
  using Array = Eigen::ArrayXd;
  const auto n = static_cast<Eigen::Index>(params.size());
  Eigen::Map<Array> p(params.data(), n);
  Eigen::Map<const Array> g(grads.data(), n);
  Eigen::Map<Array> m(state.m.data(), n);
  Eigen::Map<Array> v(state.v.data(), n);
  m = config.beta1 * m + (1.0 - config.beta1) * g;
  v = config.beta2 * v + (1.0 - config.beta2) * g.square();
  // Moments of parameters whose gradient stays zero decay geometrically into
  // the subnormal range, where arithmetic is several times slower.
  constexpr double kFloor = 1e-280;
  m = (m.abs() < kFloor).select(0.0, m);
  v = (v < kFloor).select(0.0, v);
  p -= (lr * config.weight_decay) * p;
  p -= lr * (m / bias1) / ((v / bias2).sqrt() + config.epsilon);
  return stats;
}

double mean_loss(const GateModel& model, std::span<const Subgraph> corpus,
                 const LossOptions& options) {
  if (corpus.empty()) return 0.0;
  double total = 0.0;
  for (const auto& sg : corpus) total += evaluate(model, sg, options).loss;
  return total / static_cast<double>(corpus.size());
}

TrainResult train(std::span<const Subgraph> corpus, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
  config.validate();
  if (corpus.empty()) throw InputError("training corpus is empty");

  const LossOptions options{config.structure_weight};
  TrainResult result{GateModel::initialize(config.model_shape(), config.seed)};
  result.initial_loss = mean_loss(result.model, corpus, options);
  if (!std::isfinite(result.initial_loss)) {
    throw NumericalError("initial loss is not finite");
  }

  Rng order_rng(mix_seed(config.seed, 0x5eed));
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  AdamState state;
  Gradient grad;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(order);
    double total = 0.0;
    for (std::size_t idx : order) {
      const ForwardResult fr =
          forward_backward(result.model, corpus[idx], grad, options);
      if (!std::isfinite(fr.loss)) {
        throw NumericalError("training diverged at epoch " +
                             std::to_string(epoch + 1) + " (loss is NaN/inf)");
      }
      total += fr.loss;
      StepStats stats;
      try {
        stats = adam_step(result.model.params(), grad, state, config);
      } catch (const Error& e) {
        throw NumericalError("training diverged at epoch " +
                             std::to_string(epoch + 1) + ": " + e.what());
      }
      result.max_grad_norm = std::max(result.max_grad_norm, stats.grad_norm);
      result.max_clipped_norm = std::max(result.max_clipped_norm, stats.clipped_norm);
    }
    const double mean = total / static_cast<double>(corpus.size());
    result.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch + 1, mean);
  }
  result.final_loss = mean_loss(result.model, corpus, options);
  return result;
}

}  // namespace relic
