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

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relic/checkpoint.h"
#include "relic/corpus.h"
#include "relic/error.h"
#include "relic/evaluation.h"
#include "relic/metrics.h"
#include "relic/netlist.h"
#include "relic/synth.h"
#include "relic/tech_library.h"
#include "relic/verilog_parser.h"

namespace relic::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

// Prefixes errors raised while reading `path` with the file name so that
// parser positions read as file:line:column.
template <typename F>
auto with_file(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    std::string msg = e.what();
    constexpr std::string_view kAt = "syntax error at ";
    if (msg.rfind(kAt, 0) == 0) {
      const auto colon = msg.find(':', kAt.size());
      const auto end = msg.find_first_of(" :", colon + 1);
      msg = path.string() + ":" + msg.substr(kAt.size(), end - kAt.size()) +
            ": syntax error" + msg.substr(end);
    } else {
      msg = path.string() + ": " + msg;
    }
    throw Error(e.kind(), msg);
  }
}

Netlist read_mapped_netlist(const fs::path& netlist_path, const TechLibrary& lib) {
  const std::string text = read_file(netlist_path);
  return with_file(netlist_path,
                   [&] { return map_to_independent(parse_netlist(text), lib); });
}

TechLibrary require_library(const PipelineConfig& cfg) {
  if (cfg.tech_library.empty()) {
    throw InputError("no tech library given (use --lib or tech_library in --config)");
  }
  return load_tech_library(cfg.tech_library);
}

DesignCorpus read_paths(const fs::path& path) {
  const std::string text = read_file(path);
  return with_file(path, [&] { return load_paths(text); });
}

std::string loss_csv(const std::vector<double>& losses) {
  std::ostringstream out;
  out << "epoch,mean_loss\n";
  char buf[64];
  for (std::size_t e = 0; e < losses.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", e + 1, losses[e]);
    out << buf;
  }
  return out.str();
}

PreparedDesign prepare_corpus_entry(const fs::path& dir, const PipelineConfig& cfg) {
  const fs::path local_lib = dir / "library.json";
  const TechLibrary lib =
      fs::exists(local_lib) ? load_tech_library(local_lib) : require_library(cfg);
  const Netlist netlist = read_mapped_netlist(dir / "netlist.v", lib);
  PreparedDesign prepared;
  prepared.corpus = prepare_design(netlist, cfg.walk_length);
  const fs::path truth_path = dir / "truth.json";
  const std::string truth_text = read_file(truth_path);
  prepared.truth = with_file(truth_path, [&] {
    return make_ground_truth(parse_state_list(truth_text), prepared.corpus.register_names());
  });
  prepared.truth.design = prepared.corpus.design;
  return prepared;
}

// Command bodies. Each returns the exit code.

int cmd_map(const PipelineConfig& cfg, const fs::path& netlist_path, std::ostream& out) {
  const TechLibrary lib = require_library(cfg);
  const Netlist netlist = read_mapped_netlist(netlist_path, lib);
  const fs::path target = cfg.out / "mapped.json";
  write_file(target, dump_netlist(netlist));
  out << "mapped " << netlist.name << ": " << netlist.cells.size() << " cells, "
      << registers_of(netlist).size() << " registers -> " << target.string() << "\n";
  return kExitOk;
}

int cmd_extract(const PipelineConfig& cfg, const fs::path& mapped_path, bool write_graph,
                std::ostream& out) {
  const std::string text = read_file(mapped_path);
  const Netlist netlist = with_file(mapped_path, [&] { return load_netlist(text); });
  const DesignCorpus corpus = prepare_design(netlist, cfg.walk_length);
  const fs::path target = cfg.out / "paths.json";
  write_file(target, dump_paths(corpus));
  if (write_graph) write_file(cfg.out / "graph.json", dump_graph(build_graph(netlist)));
  out << "extracted " << corpus.registers.size() << " path structures (depth "
      << cfg.walk_length << ") -> " << target.string() << "\n";
  return kExitOk;
}

int cmd_train(const PipelineConfig& cfg, const std::vector<fs::path>& inputs, bool dedup,
              std::ostream& out) {
  std::vector<Subgraph> samples;
  for (const auto& p : inputs) {
    for (const auto& r : read_paths(p).registers) samples.push_back(r.subgraph);
  }
  if (dedup) samples = dedupe(samples);
  TrainConfig config = cfg.train;
  config.seed = cfg.seed;
  const TrainResult result = train(samples, config);
  const fs::path ckpt = cfg.out / "model.ckpt";
  fs::create_directories(cfg.out);
  save_model(result.model, config.seed, ckpt);
  write_file(cfg.out / "loss.csv", loss_csv(result.epoch_loss));
  char buf[160];
  std::snprintf(buf, sizeof buf, "trained on %zu samples for %d epochs: loss %.6g -> %.6g\n",
                samples.size(), config.epochs, result.initial_loss, result.final_loss);
  out << buf << "wrote " << ckpt.string() << "\n";
  return kExitOk;
}

int cmd_classify(const PipelineConfig& cfg, const fs::path& model_path,
                 const fs::path& paths_path, std::ostream& out) {
  const LoadedModel loaded = load_model(model_path);
  if (loaded.model.shape().dims.front() != static_cast<int>(kFeatureWidth)) {
    throw InputError("checkpoint/feature-width mismatch: model expects " +
                     std::to_string(loaded.model.shape().dims.front()) +
                     " features, path structures carry " + std::to_string(kFeatureWidth));
  }
  const DesignCorpus corpus = read_paths(paths_path);
  const DesignClassification result =
      classify_design(loaded.model, corpus, cfg.t1, cfg.t2, cfg.seed);
  const fs::path target = cfg.out / "labels.json";
  write_file(target, dump_labels(result));
  std::size_t states = 0;
  for (const auto& r : result.registers) {
    if (r.assignment.label == RegisterLabel::kState) ++states;
  }
  out << "classified " << result.registers.size() << " registers, " << states
      << " STATE -> " << target.string() << "\n";
  return kExitOk;
}

int cmd_eval(const PipelineConfig& cfg, const fs::path& labels_path,
             const fs::path& truth_path, std::ostream& out) {
  const std::string labels_text = read_file(labels_path);
  const DesignClassification labels =
      with_file(labels_path, [&] { return load_labels(labels_text); });
  std::vector<std::string> names;
  for (const auto& r : labels.registers) names.push_back(r.name);
  const std::string truth_text = read_file(truth_path);
  const GroundTruth truth = with_file(
      truth_path, [&] { return make_ground_truth(parse_state_list(truth_text), names); });
  MetricsRow row;
  row.design = labels.design;
  row.counts = confusion(labels.labels(), truth);
  row.values = metrics(row.counts);
  MetricsReport report;
  report.rows.push_back(row);
  write_file(cfg.out / "metrics.csv", report.to_csv());
  write_file(cfg.out / "metrics.json", report.to_json());
  out << report.to_csv();
  return kExitOk;
}

int cmd_loocv(const PipelineConfig& cfg, const fs::path& corpus_dir, std::ostream& out,
              std::ostream& err) {
  if (!fs::is_directory(corpus_dir)) {
    throw InputError("corpus directory '" + corpus_dir.string() + "' does not exist");
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "netlist.v")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<PreparedDesign> designs;
  for (const auto& d : dirs) designs.push_back(prepare_corpus_entry(d, cfg));

  LoocvOptions options;
  options.train = cfg.train;
  options.train.seed = cfg.seed;
  options.t1 = cfg.t1;
  options.t2 = cfg.t2;
  options.seed = cfg.seed;
  const LoocvResult result =
      loocv(designs, options, [&](const FoldSummary& f, const MetricsRow& row) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "fold %s: %zu samples, loss %.4g -> %.4g, recall %s, %.1fs\n",
                      f.held_out.c_str(), f.training_samples, f.initial_loss, f.final_loss,
                      format_ratio(row.values.recall).c_str(), f.seconds);
        err << buf << std::flush;
      });
  write_file(cfg.out / "loocv.csv", result.report.to_csv());
  write_file(cfg.out / "loocv.json", result.report.to_json());
  out << result.report.to_csv();
  return kExitOk;
}

int cmd_gen(const PipelineConfig& cfg, SynthSpec spec, std::ostream& out) {
  spec.seed = cfg.seed;
  const SynthDesign design = generate_synthetic(spec);
  write_file(cfg.out / "netlist.v", design.verilog);
  write_file(cfg.out / "truth.json", dump_ground_truth(design.truth));
  write_file(cfg.out / "library.json", dump_tech_library(generic_library()));
  out << "generated " << spec.name << ": " << design.gate_count << " gates, "
      << design.register_count << " registers -> " << cfg.out.string() << "\n";
  return kExitOk;
}

// Registers the training flags of `sub` and records which config key each
// flag shadows.
using KeyedOptions = std::vector<std::pair<CLI::Option*, std::string>>;

void add_train_flags(CLI::App* sub, PipelineConfig& cfg, KeyedOptions& keyed) {
  keyed.emplace_back(sub->add_option("--epochs", cfg.train.epochs, "Training epochs")
                         ->capture_default_str(),
                     "epochs");
  keyed.emplace_back(sub->add_option("--lr", cfg.train.learning_rate, "Learning rate")
                         ->capture_default_str(),
                     "learning_rate");
  keyed.emplace_back(
      sub->add_option("--weight-decay", cfg.train.weight_decay, "Decoupled weight decay")
          ->capture_default_str(),
      "weight_decay");
  keyed.emplace_back(sub->add_option("--clip", cfg.train.gradient_clip,
                                     "Global gradient-norm clip")
                         ->capture_default_str(),
                     "gradient_clip");
  keyed.emplace_back(
      sub->add_option("--heads", cfg.train.heads, "Attention heads")->capture_default_str(),
      "heads");
  keyed.emplace_back(
      sub->add_option("--hidden", cfg.train.hidden, "Hidden width")->capture_default_str(),
      "hidden");
  keyed.emplace_back(sub->add_option_function<std::string>(
                            "--activation",
                            [&cfg](const std::string& v) {
                              cfg.train.activation = parse_activation(v);
                            },
                            "relu or elu")
                         ->default_str(std::string(to_string(cfg.train.activation))),
                     "activation");
  keyed.emplace_back(sub->add_option_function<std::string>(
                            "--embedding-activation",
                            [&cfg](const std::string& v) {
                              cfg.train.embedding_activation = parse_activation(v);
                            },
                            "Activation of the one-wide embedding layer: linear, relu or elu")
                         ->default_str(std::string(to_string(cfg.train.embedding_activation))),
                     "embedding_activation");
  keyed.emplace_back(sub->add_option("--structure-weight", cfg.train.structure_weight,
                                     "Weight of the optional structure loss")
                         ->capture_default_str(),
                     "structure_weight");
}

void add_cluster_flags(CLI::App* sub, PipelineConfig& cfg, KeyedOptions& keyed) {
  keyed.emplace_back(
      sub->add_option("--t1", cfg.t1, "FDV threshold")->capture_default_str(), "t1");
  keyed.emplace_back(
      sub->add_option("--t2", cfg.t2, "Group-size threshold")->capture_default_str(), "t2");
}

void add_depth_flag(CLI::App* sub, PipelineConfig& cfg, KeyedOptions& keyed) {
  keyed.emplace_back(
      sub->add_option("--depth", cfg.walk_length, "Backward BFS depth")->capture_default_str(),
      "walk_length");
}

void add_lib_flag(CLI::App* sub, PipelineConfig& cfg, KeyedOptions& keyed) {
  keyed.emplace_back(sub->add_option("--lib", cfg.tech_library, "Tech library JSON"),
                     "tech_library");
}

void print_version(std::ostream& out) {
  out << "relic " << kVersion << "\n"
      << "schemas: relic.mapped/1 relic.graph/1 relic.paths/1 relic.labels/1 "
         "checkpoint/"
      << kCheckpointVersion << "\n";
}

}  // namespace

void apply_config_json(std::string_view json_text, PipelineConfig& config,
                       const std::vector<std::string>& skip) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("config: top level must be a JSON object");
  const std::set<std::string> skipped(skip.begin(), skip.end());
  TrainConfig& t = config.train;
  for (const auto& [key, value] : doc.items()) {
    if (skipped.count(key)) continue;
    try {
      if (key == "tech_library") {
        config.tech_library = value.get<std::string>();
      } else if (key == "walk_length") {
        config.walk_length = value.get<int>();
      } else if (key == "learning_rate") {
        t.learning_rate = value.get<double>();
      } else if (key == "weight_decay") {
        t.weight_decay = value.get<double>();
      } else if (key == "epochs") {
        t.epochs = value.get<int>();
      } else if (key == "gradient_clip") {
        t.gradient_clip = value.get<double>();
      } else if (key == "heads") {
        t.heads = value.get<int>();
      } else if (key == "hidden") {
        t.hidden = value.get<int>();
      } else if (key == "activation") {
        t.activation = parse_activation(value.get<std::string>());
      } else if (key == "embedding_activation") {
        t.embedding_activation = parse_activation(value.get<std::string>());
      } else if (key == "beta1") {
        t.beta1 = value.get<double>();
      } else if (key == "beta2") {
        t.beta2 = value.get<double>();
      } else if (key == "epsilon") {
        t.epsilon = value.get<double>();
      } else if (key == "structure_weight") {
        t.structure_weight = value.get<double>();
      } else if (key == "t1") {
        config.t1 = value.get<double>();
      } else if (key == "t2") {
        config.t2 = value.get<std::size_t>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "out") {
        config.out = value.get<std::string>();
      } else {
        throw InputError("config: unknown key '" + key + "'");
      }
    } catch (const json::exception&) {
      throw InputError("config: key '" + key + "' has the wrong type");
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  PipelineConfig cfg;
  KeyedOptions keyed;

  CLI::App app{"Register classification for gate-level netlists", "relic"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  keyed.emplace_back(
      app.add_option("--seed", cfg.seed, "Seed for training, clustering and generation")
          ->capture_default_str(),
      "seed");
  keyed.emplace_back(
      app.add_option("--out", cfg.out, "Output directory")->capture_default_str(), "out");
  std::string config_path;
  app.add_option("--config", config_path, "JSON file mirroring the pipeline settings");
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and artifact schema versions");

  fs::path netlist_path;
  auto* map = app.add_subcommand("map", "Map a structural Verilog netlist onto generic cells");
  map->add_option("netlist", netlist_path, "Netlist (.v)")->required();
  add_lib_flag(map, cfg, keyed);

  fs::path mapped_path;
  bool write_graph = false;
  auto* extract = app.add_subcommand("extract", "Extract register path structures");
  extract->add_option("mapped", mapped_path, "Mapped netlist JSON")->required();
  extract->add_flag("--graph", write_graph, "Also write graph.json");
  add_depth_flag(extract, cfg, keyed);

  std::vector<fs::path> train_inputs;
  bool no_dedupe = false;
  auto* trn = app.add_subcommand("train", "Train the attention auto-encoder");
  trn->add_option("paths", train_inputs, "Path-structure files")->required();
  trn->add_flag("--no-dedupe", no_dedupe, "Keep repeated identical subgraphs");
  add_train_flags(trn, cfg, keyed);

  fs::path model_path;
  fs::path paths_path;
  auto* classify = app.add_subcommand("classify", "Cluster and label registers");
  classify->add_option("model", model_path, "Checkpoint")->required();
  classify->add_option("paths", paths_path, "Path-structure file")->required();
  add_cluster_flags(classify, cfg, keyed);

  fs::path labels_path;
  fs::path truth_path;
  auto* eval = app.add_subcommand("eval", "Score labels against ground truth");
  eval->add_option("labels", labels_path, "Labels file")->required();
  eval->add_option("truth", truth_path, "Ground-truth file")->required();

  fs::path corpus_dir;
  auto* loocv_cmd = app.add_subcommand("loocv", "Leave-one-out evaluation over a corpus");
  loocv_cmd->add_option("corpus", corpus_dir, "Directory of design subdirectories")
      ->required();
  add_lib_flag(loocv_cmd, cfg, keyed);
  add_depth_flag(loocv_cmd, cfg, keyed);
  add_train_flags(loocv_cmd, cfg, keyed);
  add_cluster_flags(loocv_cmd, cfg, keyed);

  SynthSpec spec;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic benchmark");
  gen->add_option("--name", spec.name, "Module name")->capture_default_str();
  gen->add_option("--fsm", spec.fsm_states, "State registers")->capture_default_str();
  gen->add_option("--data", spec.data_regs, "Data registers")->capture_default_str();
  gen->add_option("--width", spec.datapath_width, "Datapath word width")
      ->capture_default_str();
  gen->add_option("--comb-depth", spec.comb_depth, "Gate levels per datapath tree")
      ->capture_default_str();
  gen->add_option("--fanin", spec.fanin_max, "Maximum gate fan-in")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "relic: error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (show_version) {
    print_version(out);
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    err << app.help();
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      std::vector<std::string> explicit_keys;
      for (const auto& [opt, key] : keyed) {
        if (opt->count() > 0) explicit_keys.push_back(key);
      }
      apply_config_json(read_file(config_path), cfg, explicit_keys);
    }
    cfg.train.validate();
    if (map->parsed()) return cmd_map(cfg, netlist_path, out);
    if (extract->parsed()) return cmd_extract(cfg, mapped_path, write_graph, out);
    if (trn->parsed()) return cmd_train(cfg, train_inputs, !no_dedupe, out);
    if (classify->parsed()) return cmd_classify(cfg, model_path, paths_path, out);
    if (eval->parsed()) return cmd_eval(cfg, labels_path, truth_path, out);
    if (loocv_cmd->parsed()) return cmd_loocv(cfg, corpus_dir, out, err);
    if (gen->parsed()) return cmd_gen(cfg, spec, out);
  } catch (const Error& e) {
    err << "relic: error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kNumerical ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "relic: error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace relic::cli
