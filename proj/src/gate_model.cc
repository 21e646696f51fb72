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

#include "relic/gate_model.h"

#include <cmath>
#include <random>
#include <unordered_map>

#include "relic/error.h"
#include "relic/rng.h"

namespace relic {

Subgraph::Subgraph(Matrix features, const std::vector<std::vector<int>>& in_neighbors)
    : features_(std::move(features)) {
  const int n = static_cast<int>(features_.rows());
  if (static_cast<int>(in_neighbors.size()) != n) {
    throw InputError("subgraph: neighbour list count differs from node count");
  }
  for (int i = 0; i < n; ++i) {
    targets_.push_back(i);
    for (int j : in_neighbors[i]) {
      if (j < 0 || j >= n || j == i) {
        throw InputError("subgraph: invalid neighbour index");
      }
      targets_.push_back(j);
    }
    offsets_.push_back(static_cast<int>(targets_.size()));
  }
}

std::vector<std::vector<int>> Subgraph::in_neighbors() const {
  std::vector<std::vector<int>> result(size());
  for (int i = 0; i < size(); ++i) {
    for (int e = begin(i) + 1; e < end(i); ++e) result[i].push_back(targets_[e]);
  }
  return result;
}

bool Subgraph::operator==(const Subgraph& other) const {
  return features_.rows() == other.features_.rows() &&
         features_.cols() == other.features_.cols() &&
         features_ == other.features_ && offsets_ == other.offsets_ &&
         targets_ == other.targets_;
}

Subgraph make_subgraph(const CircuitGraph& graph, const PathStructure& ps) {
  const auto nodes = ps.induced_nodes();
  std::unordered_map<NodeId, int> local;
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
  Matrix features(static_cast<Eigen::Index>(nodes.size()),
                  static_cast<Eigen::Index>(kFeatureWidth));
  std::vector<std::vector<int>> in_neighbors(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& f = graph.feature(nodes[i]).values;
    for (std::size_t c = 0; c < kFeatureWidth; ++c) {
      features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = f[c];
    }
    for (NodeId pred : graph.predecessors(nodes[i])) {
      auto it = local.find(pred);
      if (it != local.end() && it->second != static_cast<int>(i)) {
        in_neighbors[i].push_back(it->second);
      }
    }
  }
  return Subgraph(std::move(features), in_neighbors);
}

std::string_view to_string(Activation act) {
  switch (act) {
    case Activation::kRelu: return "relu";
    case Activation::kElu: return "elu";
    case Activation::kLinear: return "linear";
  }
  return "relu";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "elu") return Activation::kElu;
  if (name == "linear") return Activation::kLinear;
  throw InputError("unknown activation '" + std::string(name) + "'");
}

GateModel::GateModel(ModelShape shape) : shape_(std::move(shape)) {
  if (shape_.dims.size() < 3 || shape_.layer_count() % 2 != 0) {
    throw InputError("model shape needs an even number of layers");
  }
  if (shape_.heads < 1) throw InputError("model needs at least one head");
  for (int d : shape_.dims) {
    if (d < 1) throw InputError("layer widths must be positive");
  }
  std::size_t total = 0;
  for (int l = 0; l < shape_.layer_count(); ++l) {
    const auto d_in = static_cast<std::size_t>(shape_.dims[l]);
    const auto d_out = static_cast<std::size_t>(shape_.dims[l + 1]);
    for (int h = 0; h < shape_.heads; ++h) {
      offsets_.push_back(total);
      total += d_out * d_in + 2 * d_out;
    }
  }
  params_.assign(total, 0.0);
}

std::size_t GateModel::offset(int layer, int h) const {
  return offsets_.at(static_cast<std::size_t>(layer * shape_.heads + h));
}

HeadView GateModel::head(int layer, int h) const {
  const int d_in = shape_.dims.at(layer);
  const int d_out = shape_.dims.at(layer + 1);
  const double* base = params_.data() + offset(layer, h);
  return {Eigen::Map<const Eigen::MatrixXd>(base, d_out, d_in),
          Eigen::Map<const Vector>(base + d_out * d_in, d_out),
          Eigen::Map<const Vector>(base + d_out * d_in + d_out, d_out)};
}

MutableHeadView GateModel::head(int layer, int h) {
  const int d_in = shape_.dims.at(layer);
  const int d_out = shape_.dims.at(layer + 1);
  double* base = params_.data() + offset(layer, h);
  return {Eigen::Map<Eigen::MatrixXd>(base, d_out, d_in),
          Eigen::Map<Vector>(base + d_out * d_in, d_out),
          Eigen::Map<Vector>(base + d_out * d_in + d_out, d_out)};
}

GateModel GateModel::initialize(const ModelShape& shape, std::uint64_t seed) {
  GateModel model(shape);
  Rng rng(seed);
  for (int l = 0; l < shape.layer_count(); ++l) {
    const double d_in = shape.dims[l];
    const double d_out = shape.dims[l + 1];
    const double w_bound = std::sqrt(6.0 / (d_in + d_out));
    const double v_bound = std::sqrt(6.0 / (d_out + 1.0));
    for (int h = 0; h < shape.heads; ++h) {
      auto view = model.head(l, h);
      for (Eigen::Index c = 0; c < view.w.cols(); ++c) {
        for (Eigen::Index r = 0; r < view.w.rows(); ++r) {
          view.w(r, c) = rng.uniform(-w_bound, w_bound);
        }
      }
      for (Eigen::Index r = 0; r < view.v_s.size(); ++r) {
        view.v_s(r) = rng.uniform(-v_bound, v_bound);
      }
      for (Eigen::Index r = 0; r < view.v_r.size(); ++r) {
        view.v_r(r) = rng.uniform(-v_bound, v_bound);
      }
    }
  }
  return model;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Matrix activate(const Matrix& z, Activation act) {
  if (act == Activation::kLinear) return z;
  if (act == Activation::kRelu) return z.cwiseMax(0.0);
  return z.unaryExpr([](double v) { return v > 0.0 ? v : std::expm1(v); });
}

// d act / dz evaluated at z.
Matrix activation_slope(const Matrix& z, Activation act) {
  if (act == Activation::kLinear) return Matrix::Ones(z.rows(), z.cols());
  if (act == Activation::kRelu) {
    return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
  }
  return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : std::exp(v); });
}

void check_width(const Matrix& h, int expected, const char* what) {
  if (h.cols() != expected) {
    throw InputError(std::string(what) + ": expected width " +
                     std::to_string(expected) + ", got " +
                     std::to_string(h.cols()));
  }
}

struct HeadCache {
  Matrix z;  // W h_j for every node
  Matrix s;  // act(z)
  Vector e;      // per CSR edge
  Vector alpha;  // per CSR edge
};

struct LayerCache {
  std::vector<HeadCache> heads;
};

Vector logits_from_states(const Matrix& s, const HeadView& head, const Subgraph& sg) {
  const Vector send = s * head.v_s;
  const Vector recv = s * head.v_r;
  Vector e(sg.edge_count());
  for (int i = 0; i < sg.size(); ++i) {
    for (int k = sg.begin(i); k < sg.end(i); ++k) {
      e(k) = sigmoid(send(i) + recv(sg.neighbor(k)));
    }
  }
  return e;
}

Matrix layer_forward(const GateModel& model, int layer, const Matrix& h_prev,
                     const Subgraph& sg, LayerCache* cache) {
  const auto& shape = model.shape();
  check_width(h_prev, shape.dims.at(layer), "attention layer input");
  const int d_out = shape.dims[layer + 1];
  const double scale = 1.0 / shape.heads;
  Matrix out = Matrix::Zero(h_prev.rows(), d_out);
  if (cache) cache->heads.resize(static_cast<std::size_t>(shape.heads));
  for (int h = 0; h < shape.heads; ++h) {
    const HeadView head = model.head(layer, h);
    Matrix z = h_prev * head.w.transpose();
    Matrix s = activate(z, shape.activation_of(layer));
    Vector e = logits_from_states(s, head, sg);
    Vector alpha = attention_weights(e, sg);
    for (int i = 0; i < sg.size(); ++i) {
      for (int k = sg.begin(i); k < sg.end(i); ++k) {
        out.row(i).noalias() += (scale * alpha(k)) * s.row(sg.neighbor(k));
      }
    }
    if (cache) {
      auto& hc = cache->heads[static_cast<std::size_t>(h)];
      hc.z = std::move(z);
      hc.s = std::move(s);
      hc.e = std::move(e);
      hc.alpha = std::move(alpha);
    }
  }
  return out;
}

// Accumulates parameter gradients of one layer into `grad` and returns the
// gradient with respect to the layer input.
Matrix layer_backward(const GateModel& model, int layer, const Matrix& h_prev,
                      const Subgraph& sg, const LayerCache& cache,
                      const Matrix& d_out_rows, Gradient& grad) {
  const auto& shape = model.shape();
  const int d_in = shape.dims[layer];
  const int d_out = shape.dims[layer + 1];
  const double scale = 1.0 / shape.heads;
  const int n = sg.size();
  Matrix d_h_prev = Matrix::Zero(n, d_in);
  for (int h = 0; h < shape.heads; ++h) {
    const HeadView head = model.head(layer, h);
    const HeadCache& hc = cache.heads[static_cast<std::size_t>(h)];
    Matrix d_s = Matrix::Zero(n, d_out);
    Vector d_alpha(sg.edge_count());
    for (int i = 0; i < n; ++i) {
      for (int k = sg.begin(i); k < sg.end(i); ++k) {
        const int j = sg.neighbor(k);
        d_s.row(j).noalias() += (scale * hc.alpha(k)) * d_out_rows.row(i);
        d_alpha(k) = scale * d_out_rows.row(i).dot(hc.s.row(j));
      }
    }
    Vector d_send = Vector::Zero(n);
    Vector d_recv = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      double weighted = 0.0;
      for (int k = sg.begin(i); k < sg.end(i); ++k) weighted += hc.alpha(k) * d_alpha(k);
      for (int k = sg.begin(i); k < sg.end(i); ++k) {
        const double d_e = hc.alpha(k) * (d_alpha(k) - weighted);
        const double d_u = d_e * hc.e(k) * (1.0 - hc.e(k));
        d_send(i) += d_u;
        d_recv(sg.neighbor(k)) += d_u;
      }
    }
    double* base = grad.data() + model.offset(layer, h);
    Eigen::Map<Eigen::MatrixXd> g_w(base, d_out, d_in);
    Eigen::Map<Vector> g_vs(base + d_out * d_in, d_out);
    Eigen::Map<Vector> g_vr(base + d_out * d_in + d_out, d_out);
    g_vs.noalias() += hc.s.transpose() * d_send;
    g_vr.noalias() += hc.s.transpose() * d_recv;
    d_s.noalias() += d_send * head.v_s.transpose();
    d_s.noalias() += d_recv * head.v_r.transpose();
    const Matrix d_z = d_s.cwiseProduct(activation_slope(hc.z, shape.activation_of(layer)));
    g_w.noalias() += d_z.transpose() * h_prev;
    d_h_prev.noalias() += d_z * head.w;
  }
  return d_h_prev;
}

struct Pass {
  std::vector<Matrix> h;  // h[0] = features ... h[L] = reconstruction
  std::vector<LayerCache> caches;
};

Pass run_forward(const GateModel& model, const Subgraph& sg, bool keep_cache) {
  check_width(sg.features(), model.shape().dims.front(), "input features");
  Pass pass;
  const int layers = model.shape().layer_count();
  pass.h.reserve(static_cast<std::size_t>(layers) + 1);
  pass.h.push_back(sg.features());
  if (keep_cache) pass.caches.resize(static_cast<std::size_t>(layers));
  for (int l = 0; l < layers; ++l) {
    pass.h.push_back(layer_forward(model, l, pass.h.back(), sg,
                                   keep_cache ? &pass.caches[l] : nullptr));
  }
  return pass;
}

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace

Vector attention_logits(const HeadView& head, const Matrix& h_prev,
                        const Subgraph& sg, Activation act) {
  check_width(h_prev, static_cast<int>(head.w.cols()), "attention logits");
  const Matrix s = activate(h_prev * head.w.transpose(), act);
  return logits_from_states(s, head, sg);
}

Vector attention_weights(const Vector& logits, const Subgraph& sg) {
  Vector alpha(logits.size());
  for (int i = 0; i < sg.size(); ++i) {
    double peak = -std::numeric_limits<double>::infinity();
    for (int k = sg.begin(i); k < sg.end(i); ++k) peak = std::max(peak, logits(k));
    double total = 0.0;
    for (int k = sg.begin(i); k < sg.end(i); ++k) {
      alpha(k) = std::exp(logits(k) - peak);
      total += alpha(k);
    }
    for (int k = sg.begin(i); k < sg.end(i); ++k) alpha(k) /= total;
  }
  return alpha;
}

Matrix attention_layer(const GateModel& model, int layer, const Matrix& h_prev,
                       const Subgraph& sg) {
  return layer_forward(model, layer, h_prev, sg, nullptr);
}

NodeRepresentations encode(const GateModel& model, const Subgraph& sg) {
  check_width(sg.features(), model.shape().dims.front(), "input features");
  NodeRepresentations reps;
  reps.h.push_back(sg.features());
  for (int l = 0; l < model.shape().encoder_layers(); ++l) {
    reps.h.push_back(layer_forward(model, l, reps.h.back(), sg, nullptr));
  }
  return reps;
}

Matrix decode(const GateModel& model, const Matrix& h_final, const Subgraph& sg) {
  const int first = model.shape().encoder_layers();
  check_width(h_final, model.shape().dims.at(first), "decoder input");
  Matrix h = h_final;
  for (int l = first; l < model.shape().layer_count(); ++l) {
    h = layer_forward(model, l, h, sg, nullptr);
  }
  return h;
}

double reconstruction_loss(const Matrix& x, const Matrix& x_hat) {
  if (x.rows() != x_hat.rows() || x.cols() != x_hat.cols()) {
    throw InputError("reconstruction loss: shape mismatch");
  }
  if (x.size() == 0) return 0.0;
  return (x - x_hat).squaredNorm() / static_cast<double>(x.size());
}

double structure_loss(const Matrix& h_final, const Subgraph& sg) {
  double total = 0.0;
  int count = 0;
  for (int i = 0; i < sg.size(); ++i) {
    for (int k = sg.begin(i) + 1; k < sg.end(i); ++k) {
      total += softplus(-h_final.row(i).dot(h_final.row(sg.neighbor(k))));
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / count;
}

ForwardResult evaluate(const GateModel& model, const Subgraph& sg,
                       const LossOptions& options) {
  Pass pass = run_forward(model, sg, false);
  ForwardResult result;
  result.feature_loss = reconstruction_loss(pass.h.front(), pass.h.back());
  result.loss = result.feature_loss;
  const auto& h_final = pass.h[static_cast<std::size_t>(model.shape().encoder_layers())];
  if (options.structure_weight > 0.0) {
    result.loss += options.structure_weight * structure_loss(h_final, sg);
  }
  result.embedding = h_final(0, 0);
  result.reconstruction = std::move(pass.h.back());
  return result;
}

ForwardResult forward_backward(const GateModel& model, const Subgraph& sg,
                               Gradient& gradient, const LossOptions& options) {
  Pass pass = run_forward(model, sg, true);
  const auto& x = pass.h.front();
  const auto& x_hat = pass.h.back();
  const int layers = model.shape().layer_count();
  const int enc = model.shape().encoder_layers();

  ForwardResult result;
  result.feature_loss = reconstruction_loss(x, x_hat);
  result.loss = result.feature_loss;
  result.embedding = pass.h[static_cast<std::size_t>(enc)](0, 0);

  gradient.assign(model.param_count(), 0.0);
  Matrix d_h = (x_hat - x) * (2.0 / static_cast<double>(x.size()));
  for (int l = layers - 1; l >= 0; --l) {
    if (l == enc - 1 && options.structure_weight > 0.0) {
      // Structure term attaches to the encoder output.
      const Matrix& h_final = pass.h[static_cast<std::size_t>(enc)];
      int count = 0;
      for (int i = 0; i < sg.size(); ++i) count += sg.end(i) - sg.begin(i) - 1;
      if (count > 0) {
        result.loss += options.structure_weight * structure_loss(h_final, sg);
        const double w = options.structure_weight / count;
        for (int i = 0; i < sg.size(); ++i) {
          for (int k = sg.begin(i) + 1; k < sg.end(i); ++k) {
            const int j = sg.neighbor(k);
            const double p = sigmoid(h_final.row(i).dot(h_final.row(j)));
            d_h.row(i) -= (w * (1.0 - p)) * h_final.row(j);
            d_h.row(j) -= (w * (1.0 - p)) * h_final.row(i);
          }
        }
      }
    }
    d_h = layer_backward(model, l, pass.h[static_cast<std::size_t>(l)], sg,
                         pass.caches[static_cast<std::size_t>(l)], d_h, gradient);
  }
  result.reconstruction = std::move(pass.h.back());
  return result;
}

double embed_register(const GateModel& model, const Subgraph& sg) {
  return encode(model, sg).final()(0, 0);
}

}  // namespace relic
