/**
 * Copyright 2026 The ffbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ffbench/eval/experiment.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ffbench/bp/network.hpp"
#include "ffbench/bp/train.hpp"
#include "ffbench/datasets/registry.hpp"
#include "ffbench/error.hpp"
#include "ffbench/eval/probe.hpp"
#include "ffbench/eval/slow.hpp"
#include "ffbench/ff/train.hpp"
#include "ffbench/tasks/batch.hpp"

namespace ffb {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  throw ConfigError("config." + field + ": " + msg);
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

std::vector<int> head_predictions(const Checkpoint& ckpt, const Tensor& inputs) {
  std::vector<int> out;
  out.reserve(inputs.rows());
  constexpr std::size_t kChunk = 1000;
  for (std::size_t start = 0; start < inputs.rows(); start += kChunk) {
    const std::size_t n = std::min(kChunk, inputs.rows() - start);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), start);
    const auto acts = ff_forward_all(ckpt.backbone, gather_rows(inputs, idx));
    const Tensor logits = layer_preactivation(*ckpt.head, acts.back());
    for (std::size_t r = 0; r < n; ++r) out.push_back(argmax_lowest(logits.row(r)));
  }
  return out;
}

struct ProbeOutcome {
  double train_accuracy;
  double test_accuracy;
};

ProbeOutcome fit_probe(const ExperimentConfig& cfg, const FFNetwork& backbone, std::span<const std::size_t> layers,
                       const Tensor& train_x, std::span<const int> train_y, const Tensor& test_x,
                       std::span<const int> test_y, int num_classes, int num_labels, int epochs) {
  const LabelPolicy policy{cfg.probe_label_mode, 0, num_labels};
  const Tensor train_f = extract_features(backbone, train_x, layers, policy, cfg.probe_normalized);
  const Tensor test_f = extract_features(backbone, test_x, layers, policy, cfg.probe_normalized);
  const ProbeConfig pc{epochs, cfg.probe_batch_size, cfg.probe_lr(), cfg.seed};
  const LinearProbe probe = train_linear_probe(train_f, train_y, num_classes, pc);
  return {accuracy(probe_predict(probe, train_f), train_y), accuracy(probe_predict(probe, test_f), test_y)};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dataset.empty()) bad("dataset", "must not be empty");
  if (!is_known_dataset(dataset)) bad("dataset", "unknown dataset '" + dataset + "'");
  std::set<int> seen;
  for (int c : classes) {
    if (c < 0) bad("classes", "negative class " + std::to_string(c));
    if (!seen.insert(c).second) bad("classes", "class " + std::to_string(c) + " listed twice");
  }
  if (classes.size() == 1) bad("classes", "at least two classes required");
  if (widths.empty()) bad("widths", "at least one layer required");
  for (auto w : widths) {
    if (w < 1) bad("widths", "every width must be at least 1");
  }
  if (!(theta > 0.0)) bad("theta", "must be positive");
  if (epochs < 0) bad("epochs", "must be non-negative");
  if (probe_epochs < 0) bad("probe_epochs", "must be non-negative");
  if (batch_size < 1) bad("batch_size", "must be at least 1");
  if (probe_batch_size < 1) bad("probe_batch_size", "must be at least 1");
  if (!(learning_rate > 0.0)) bad("learning_rate", "must be positive");
  if (probe_learning_rate && !(*probe_learning_rate > 0.0)) bad("probe_learning_rate", "must be positive");
  if (curve_every < 0) bad("curve_every", "must be non-negative");
  if (curve_probe_epochs < 0) bad("curve_probe_epochs", "must be non-negative");
  if (mask.repetitions < 0) bad("mask.repetitions", "must be non-negative");
  if (!(mask.threshold > 0.0 && mask.threshold < 1.0)) bad("mask.threshold", "must lie in (0, 1)");
  if (probe_label_mode == LabelMode::label) bad("probe_label_mode", "'label' is only available for embeddings");
  if (!layer_set.empty()) {
    try {
      validate_layer_set(layer_set, widths.size());
    } catch (const ArgumentError& e) {
      bad("layer_set", e.what());
    }
  }
}

ExperimentData prepare_experiment_data(const ExperimentConfig& cfg, ImageDataset train, ImageDataset test) {
  if (!cfg.classes.empty()) {
    train = make_subset(train, cfg.classes);
    test = make_subset(test, cfg.classes);
  }
  if (cfg.train_limit > 0) train = take_first(train, cfg.train_limit);
  if (cfg.test_limit > 0) test = take_first(test, cfg.test_limit);
  if (train.flat_dim() != test.flat_dim()) throw ShapeError("train and test images differ in shape");
  const TaskSpec task = make_task(cfg.task, train.num_classes);
  return ExperimentData{std::move(train), std::move(test), task};
}

ExperimentData load_experiment_data(const ExperimentConfig& cfg, const std::filesystem::path& cache_dir) {
  return prepare_experiment_data(cfg, load_dataset(cfg.dataset, Split::train, cache_dir),
                                 load_dataset(cfg.dataset, Split::test, cache_dir));
}

PretrainResult pretrain(const ExperimentConfig& cfg, const ExperimentData& data, const PretrainHook& hook) {
  cfg.validate();
  Rng init = Rng(cfg.seed).split(streams::kInit);
  const std::size_t input_dim = data.train.flat_dim();
  const FFTrainConfig tc{cfg.epochs, cfg.batch_size, cfg.learning_rate, cfg.seed};
  PretrainResult result;

  auto finish_epoch = [&](const FFNetwork& backbone, int epoch, std::vector<CurvePoint> points) {
    if (hook) hook(backbone, epoch, points);
    result.curves.insert(result.curves.end(), points.begin(), points.end());
  };

  if (!is_backprop(cfg.trainer)) {
    FFNetwork net = make_ff_network(input_dim, cfg.widths, init, cfg.theta, cfg.goodness_mode, cfg.learning_rate);
    FFEpochCallback cb = [&](const FFNetwork& n, const FFEpochLog& log) {
      std::vector<CurvePoint> points;
      for (std::size_t k = 0; k < log.layer_loss.size(); ++k) {
        points.push_back({log.epoch, "train", "loss_layer" + std::to_string(k), log.layer_loss[k]});
      }
      for (std::size_t k = 0; k < log.layer_separation.size(); ++k) {
        points.push_back({log.epoch, "train", "separation_layer" + std::to_string(k), log.layer_separation[k]});
      }
      finish_epoch(n, log.epoch, std::move(points));
    };
    if (cfg.trainer == Trainer::ff) {
      train_ff(net, data.train, data.task, tc, cb);
    } else {
      const TaskSpec* augment = cfg.task == TaskKind::classify ? nullptr : &data.task;
      train_ff_unsupervised(net, data.train, tc, cfg.mask, augment, cb);
    }
    result.checkpoint = Checkpoint{cfg.trainer, std::move(net), std::nullopt};
    return result;
  }

  BPNetwork net = make_bp_network(input_dim, cfg.widths, data.task.num_labels, bp_loss_for(cfg.trainer), init,
                                  cfg.theta, cfg.goodness_mode, cfg.learning_rate, cfg.normalize_between);
  BPEpochCallback cb = [&](const BPNetwork& n, const BPEpochLog& log) {
    finish_epoch(n.backbone, log.epoch,
                 {{log.epoch, "train", "loss", log.loss}, {log.epoch, "train", "accuracy", log.train_accuracy}});
  };
  train_bp(net, data.train, data.task, tc, cb);
  result.checkpoint = to_checkpoint(net);
  return result;
}

std::vector<std::size_t> slow_layers(const ExperimentConfig& cfg, std::size_t depth) {
  if (!cfg.layer_set.empty()) return cfg.layer_set;
  if (cfg.trainer == Trainer::bp_goodness_last) return {depth - 1};
  return default_layer_set(depth);
}

std::vector<std::size_t> transfer_layers(const ExperimentConfig& cfg, std::size_t depth) {
  return cfg.layer_set.empty() ? default_layer_set(depth) : cfg.layer_set;
}

PretextResult evaluate_pretext(const ExperimentConfig& cfg, const Checkpoint& ckpt, const ExperimentData& data) {
  const FFNetwork& net = ckpt.backbone;
  const int num_labels = data.task.num_labels;
  PretextResult out;
  if (uses_goodness_inference(ckpt.trainer)) {
    const LabeledBatch eval = make_eval_set(data.test, data.task, cfg.seed);
    out.method = "slow";
    out.accuracy = slow_accuracy(net, eval, num_labels, slow_layers(cfg, net.depth()));
    out.per_layer = per_layer_accuracy(net, eval, num_labels);
    return out;
  }
  if (ckpt.trainer == Trainer::bp_ce) {
    const LabeledBatch eval = make_eval_set(data.test, data.task, cfg.seed);
    out.method = "head";
    out.accuracy = accuracy(head_predictions(ckpt, eval.inputs), eval.task_labels);
    return out;
  }
  if (cfg.task == TaskKind::classify) {
    out.method = "none";
    return out;
  }
  Rng rng = Rng(cfg.seed).split(streams::kEval).split(1);
  const auto idx = all_indices(data.train.count());
  const LabeledBatch train = make_transformed_batch(data.train, data.task, idx, rng);
  const LabeledBatch test = make_eval_set(data.test, data.task, cfg.seed);
  const auto layers = transfer_layers(cfg, net.depth());
  out.method = "probe";
  out.accuracy = fit_probe(cfg, net, layers, train.inputs, train.task_labels, test.inputs, test.task_labels,
                           num_labels, num_labels, cfg.probe_epochs)
                     .test_accuracy;
  return out;
}

TransferResult run_transfer_probe(const ExperimentConfig& cfg, const FFNetwork& backbone,
                                  const ExperimentData& data, int probe_epochs) {
  TransferResult out;
  out.layers = transfer_layers(cfg, backbone.depth());
  const Tensor train_x = flat_batch(data.train, all_indices(data.train.count()));
  const Tensor test_x = flat_batch(data.test, all_indices(data.test.count()));
  const auto r = fit_probe(cfg, backbone, out.layers, train_x, data.train.labels, test_x, data.test.labels,
                           data.train.num_classes, data.task.num_labels, probe_epochs);
  out.train_accuracy = r.train_accuracy;
  out.test_accuracy = r.test_accuracy;
  return out;
}

PretrainHook online_probe_hook(const ExperimentConfig& cfg, const ExperimentData& data) {
  if (cfg.curve_every <= 0) return {};
  return [&cfg, &data](const FFNetwork& backbone, int epoch, std::vector<CurvePoint>& points) {
    if (epoch % cfg.curve_every != 0) return;
    const auto r = run_transfer_probe(cfg, backbone, data, cfg.curve_probe_epochs);
    points.push_back({epoch, "train", "transfer_accuracy", r.train_accuracy});
    points.push_back({epoch, "test", "transfer_accuracy", r.test_accuracy});
  };
}

std::string default_run_id(const ExperimentConfig& cfg) {
  return cfg.dataset + "-" + to_string(cfg.task) + "-" + to_string(cfg.trainer) + "-s" + std::to_string(cfg.seed);
}

EvalReport run_transfer_experiment(const ExperimentConfig& cfg, const ExperimentData& data, Checkpoint* trained) {
  PretrainResult pre = pretrain(cfg, data, online_probe_hook(cfg, data));
  const PretextResult pretext = evaluate_pretext(cfg, pre.checkpoint, data);
  const TransferResult transfer = run_transfer_probe(cfg, pre.checkpoint.backbone, data, cfg.probe_epochs);

  EvalReport r;
  r.run_id = default_run_id(cfg);
  r.dataset = cfg.dataset;
  r.task = to_string(cfg.task);
  r.trainer = to_string(cfg.trainer);
  r.pretext_accuracy = pretext.accuracy;
  r.pretext_method = pretext.method;
  r.per_layer_accuracy = pretext.per_layer;
  r.transfer_accuracy = transfer.test_accuracy;
  r.transfer_train_accuracy = transfer.train_accuracy;
  r.transfer_layers = transfer.layers;
  r.curves = std::move(pre.curves);
  if (trained) *trained = std::move(pre.checkpoint);
  return r;
}

}  // namespace ffb
