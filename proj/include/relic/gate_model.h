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

#ifndef RELIC_GATE_MODEL_H_
#define RELIC_GATE_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "relic/circuit_graph.h"

namespace relic {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// A path structure prepared for the network: node 0 is the register, rows
// of `features` follow the induced node order, and the neighbourhood of
// node i is itself followed by its in-neighbours inside the cone.
class Subgraph {
 public:
  Subgraph() = default;
  // `neighbors[i]` lists in-neighbours of i (without i itself).
  Subgraph(Matrix features, const std::vector<std::vector<int>>& in_neighbors);

  int size() const { return static_cast<int>(features_.rows()); }
  const Matrix& features() const { return features_; }
  // CSR view of the neighbourhoods; self-loop first in every row.
  int begin(int i) const { return offsets_[i]; }
  int end(int i) const { return offsets_[i + 1]; }
  int neighbor(int e) const { return targets_[e]; }
  int edge_count() const { return static_cast<int>(targets_.size()); }
  // In-neighbour lists without self-loops, as given at construction.
  std::vector<std::vector<int>> in_neighbors() const;

  bool operator==(const Subgraph& other) const;

 private:
  Matrix features_;
  std::vector<int> offsets_{0};
  std::vector<int> targets_;
};

Subgraph make_subgraph(const CircuitGraph& graph, const PathStructure& ps);

enum class Activation { kRelu, kElu, kLinear };

std::string_view to_string(Activation act);
Activation parse_activation(std::string_view name);

// Layer widths: encoder dims[0]->dims[1]->...->dims[k], decoder mirrors it.
struct ModelShape {
  std::vector<int> dims = {static_cast<int>(kFeatureWidth), 64, 64, 1,
                           64, 64, static_cast<int>(kFeatureWidth)};
  int heads = 4;
  Activation activation = Activation::kRelu;
  // Used by the last encoder layer, whose single output is the embedding.
  Activation embedding_activation = Activation::kLinear;

  int layer_count() const { return static_cast<int>(dims.size()) - 1; }
  int encoder_layers() const { return layer_count() / 2; }
  Activation activation_of(int layer) const {
    return layer == encoder_layers() - 1 ? embedding_activation : activation;
  }
  bool operator==(const ModelShape&) const = default;
};

// Read-only view of one attention head: W (d_out x d_in), v_s and v_r.
struct HeadView {
  Eigen::Map<const Eigen::MatrixXd> w;
  Eigen::Map<const Vector> v_s;
  Eigen::Map<const Vector> v_r;
};

struct MutableHeadView {
  Eigen::Map<Eigen::MatrixXd> w;
  Eigen::Map<Vector> v_s;
  Eigen::Map<Vector> v_r;
};

// Flat storage for parameters and their companions. Vectorized kernels over
// a mapped block take a path that depends on the block's address alignment,
// so every buffer starts on the same boundary to keep results reproducible.
using ParamVector = std::vector<double, Eigen::aligned_allocator<double>>;

// All trainable parameters, stored contiguously so optimizer state,
// gradients and checkpoints share one flat layout.
class GateModel {
 public:
  GateModel() = default;
  explicit GateModel(ModelShape shape);

  const ModelShape& shape() const { return shape_; }
  std::span<const double> params() const { return params_; }
  std::span<double> params() { return params_; }
  std::size_t param_count() const { return params_.size(); }

  HeadView head(int layer, int h) const;
  MutableHeadView head(int layer, int h);
  // Offset of (layer, head) in the flat layout; W first, then v_s, v_r.
  std::size_t offset(int layer, int h) const;

  // Seeded uniform init: W in +-sqrt(6/(d_in+d_out)), v in +-sqrt(6/(d_out+1)).
  static GateModel initialize(const ModelShape& shape, std::uint64_t seed);

  bool operator==(const GateModel&) const = default;

 private:
  ModelShape shape_;
  std::vector<std::size_t> offsets_;  // per (layer, head)
  ParamVector params_;
};

// Flat gradient with the same layout as GateModel::params().
using Gradient = ParamVector;

// e_ij for every CSR edge of `sg`, using h_prev rows as node states.
Vector attention_logits(const HeadView& head, const Matrix& h_prev,
                        const Subgraph& sg, Activation act);

// Row-wise softmax of the logits over each neighbourhood.
Vector attention_weights(const Vector& logits, const Subgraph& sg);

// One multi-head attention layer; head outputs are averaged.
Matrix attention_layer(const GateModel& model, int layer, const Matrix& h_prev,
                       const Subgraph& sg);

// h[0] = input features, h[k] = output of encoder layer k.
struct NodeRepresentations {
  std::vector<Matrix> h;
  const Matrix& final() const { return h.back(); }
};

NodeRepresentations encode(const GateModel& model, const Subgraph& sg);
Matrix decode(const GateModel& model, const Matrix& h_final, const Subgraph& sg);

double reconstruction_loss(const Matrix& x, const Matrix& x_hat);

// Optional structure term on the final representations:
// mean over cone edges (i != j) of -log Sigmoid(h_i . h_j).
double structure_loss(const Matrix& h_final, const Subgraph& sg);

struct LossOptions {
  double structure_weight = 0.0;
};

struct ForwardResult {
  double loss = 0.0;
  double feature_loss = 0.0;
  Matrix reconstruction;
  double embedding = 0.0;
};

// Full forward pass only.
ForwardResult evaluate(const GateModel& model, const Subgraph& sg,
                       const LossOptions& options = {});

// Forward plus reverse-mode pass; gradient is overwritten.
ForwardResult forward_backward(const GateModel& model, const Subgraph& sg,
                               Gradient& gradient,
                               const LossOptions& options = {});

// Root register's final encoder output.
double embed_register(const GateModel& model, const Subgraph& sg);

}  // namespace relic

#endif  // RELIC_GATE_MODEL_H_
