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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//
// Criteria 1-6 are self-contained property checks. 7-10 train desk-scale presets from
// configs/desk on the cached MNIST and are skipped when it has not been fetched. 11-14 train
// the full-scale presets from configs/full and only run with FFBENCH_FULL_SCALE=1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ffbench/analysis/tsne.hpp"
#include "ffbench/bp/network.hpp"
#include "ffbench/cli/config.hpp"
#include "ffbench/core/linalg.hpp"
#include "ffbench/datasets/fetch.hpp"
#include "ffbench/datasets/formats.hpp"
#include "ffbench/error.hpp"
#include "ffbench/eval/experiment.hpp"
#include "ffbench/eval/report.hpp"
#include "ffbench/eval/slow.hpp"
#include "ffbench/ff/checkpoint.hpp"
#include "ffbench/tasks/transforms.hpp"
#include "model_oracles.hpp"

using namespace ffb;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kGradientTol = 1e-5;
constexpr double kUnitNormTol = 1e-6;
constexpr double kTsnePurity = 0.95;
constexpr double kJointSumTol = 1e-9;
constexpr double kPerplexityTol = 1e-3;

constexpr double kDeskFFSlow = 0.94;
constexpr double kDeskBPHead = 0.95;
constexpr double kDeskBPBelowFF = 0.02;
constexpr double kDeskRotationGap = 0.10;
constexpr double kDeskGoodnessAllGap = 0.05;

struct Target {
  double value;
  double tol;
};
constexpr Target kFullFFClassify{0.9803, 0.010};
constexpr Target kFullBPClassify{0.9877, 0.007};
constexpr Target kFullFFRotPretext{0.9864, 0.010};
constexpr Target kFullFFRotTransfer{0.7633, 0.060};
constexpr Target kFullBPRotPretext{0.9956, 0.005};
constexpr Target kFullBPRotTransfer{0.9681, 0.015};
constexpr double kFullFirstLayerGap = 0.015;
constexpr double kFullUnsupervised = 0.95;
constexpr double kFullUnsupervisedGap = 0.15;

enum class Status { pass, fail, skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::fail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::skip, std::move(d)}; }
Outcome judge(bool ok, std::string d) { return {ok ? Status::pass : Status::fail, std::move(d)}; }

std::string pct(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100.0 * v << "%";
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

bool within(double got, Target t) { return std::abs(got - t.value) <= t.tol + 1e-12; }

std::string vs_target(double got, Target t) { return pct(got) + " (target " + pct(t.value) + " ± " + pct(t.tol) + ")"; }

// 1. Gradient oracles.
Outcome gradients() {
  double ff_worst = 0.0, bp_worst = 0.0;
  for (std::size_t width : {1, 3, 17}) {
    for (auto mode : {GoodnessMode::mean_sq, GoodnessMode::sum_sq, GoodnessMode::l2norm}) {
      ff_worst = std::max(ff_worst, oracle::worst_ff_gradient_error(width, mode, 100 + width));
    }
    for (auto loss : {BPLoss::cross_entropy, BPLoss::goodness_last, BPLoss::goodness_all}) {
      auto net = oracle::random_bp(6, {width, width, width}, loss, 10 + width);
      bp_worst = std::max(bp_worst, oracle::worst_bp_gradient_error(net, oracle::random_bp_batch(4, 6, 20 + width)));
    }
  }
  return judge(ff_worst <= kGradientTol && bp_worst <= kGradientTol,
               "worst relative error FF " + sci(ff_worst) + ", BP " + sci(bp_worst) + " (tol " + sci(kGradientTol) +
                   ")");
}

// 2. Transform algebra.
Outcome transforms() {
  Rng r(2);
  Tensor img({3, 8, 8});
  for (auto& v : img.values()) v = r.uniform();
  bool rot = true, flips = true, inverse = true;
  Tensor t = img;
  for (int k = 0; k < 4; ++k) t = apply_rotation(t, 1);
  rot = t == img;
  for (auto m : {FlipMode::h, FlipMode::v, FlipMode::hv}) flips = flips && apply_flip(apply_flip(img, m), m) == img;

  Tensor patches({1, 4, 4});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) patches[i * 4 + j] = static_cast<double>((i / 2) * 2 + j / 2);
  }
  std::set<std::vector<double>> distinct;
  for (int p = 0; p < 24; ++p) {
    const Tensor once = apply_jigsaw(img, p);
    inverse = inverse && apply_jigsaw(once, jigsaw_inverse_index(p)) == img;
    const Tensor shuffled = apply_jigsaw(patches, p);
    distinct.emplace(shuffled.values().begin(), shuffled.values().end());
  }
  const bool ok = rot && flips && inverse && distinct.size() == 24;
  return judge(ok, std::string("rotation^4 ") + (rot ? "ok" : "broken") + ", flips " + (flips ? "ok" : "broken") +
                       ", jigsaw inverse " + (inverse ? "ok" : "broken") + ", " + std::to_string(distinct.size()) +
                       "/24 distinct jigsaw outputs");
}

// 3. Normalization contract.
Outcome normalization() {
  Rng r(3);
  const auto net = make_ff_network(20, {16, 16, 16, 16}, r);
  Rng data(4);
  Tensor x({50, 20});
  for (auto& v : x.values()) v = data.uniform();
  double worst = 0.0;
  const auto acts = ff_forward_all(net, x);
  for (std::size_t k = 0; k + 1 < acts.size(); ++k) {
    const Tensor in = next_layer_input(net, acts[k]);
    for (std::size_t i = 0; i < in.rows(); ++i) {
      if (l2_norm(acts[k].row(i)) > kNormEps) worst = std::max(worst, std::abs(l2_norm(in.row(i)) - 1.0));
    }
  }

  const auto scores = label_goodness_scores(net, x, 10);
  auto predictions = [](const Tensor& s) {
    std::vector<int> out;
    for (std::size_t i = 0; i < s.rows(); ++i) out.push_back(argmax_lowest(s.row(i)));
    return out;
  };
  const std::vector<std::size_t> all{0, 1, 2, 3}, single{2};
  const auto base_all = predictions(average_scores(scores, all));
  const auto base_single = predictions(average_scores(scores, single));
  bool invariant = true;
  for (double c : {1e-3, 7.0, 1e4}) {
    auto scaled = scores;
    for (auto& s : scaled) {
      for (auto& v : s.values()) v *= c;
    }
    invariant = invariant && predictions(average_scores(scaled, all)) == base_all;
  }
  for (auto f : {+[](double v) { return std::sqrt(v); }, +[](double v) { return std::log1p(v); },
                 +[](double v) { return v * v * v; }}) {
    auto mapped = scores;
    for (auto& v : mapped[2].values()) v = f(v);
    invariant = invariant && predictions(average_scores(mapped, single)) == base_single;
  }
  return judge(worst <= kUnitNormTol && invariant, "max |norm - 1| " + sci(worst) + " (tol " + sci(kUnitNormTol) +
                                                       "), slow argmax " + (invariant ? "invariant" : "changed") +
                                                       " under monotone rescaling");
}

ImageDataset synthetic_digits(std::size_t n, std::uint64_t seed, Split split) {
  Rng r(seed);
  ImageDataset ds;
  ds.name = "synthetic";
  ds.split = split;
  ds.num_classes = 10;
  ds.images = Tensor({n, 1, 6, 6});
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(r.uniform_int(10));
    ds.labels.push_back(label);
    for (std::size_t p = 0; p < 36; ++p) {
      ds.images[i * 36 + p] = (p % 10 == static_cast<std::size_t>(label) ? 0.7 : 0.0) + 0.3 * r.uniform();
    }
  }
  return ds;
}

// 4. Determinism.
Outcome determinism() {
  struct Variant {
    Trainer trainer;
    TaskKind task;
  };
  const std::vector<Variant> variants{{Trainer::ff, TaskKind::classify},
                                      {Trainer::ff, TaskKind::rotation},
                                      {Trainer::bp_ce, TaskKind::classify},
                                      {Trainer::bp_goodness_last, TaskKind::rotation},
                                      {Trainer::bp_goodness_all, TaskKind::classify},
                                      {Trainer::ff_unsupervised, TaskKind::classify}};
  std::vector<std::string> broken;
  for (const auto& v : variants) {
    ExperimentConfig cfg;
    cfg.dataset = "svhn";
    cfg.trainer = v.trainer;
    cfg.task = v.task;
    cfg.widths = {12, 12};
    cfg.epochs = 3;
    cfg.probe_epochs = 3;
    cfg.batch_size = 16;
    cfg.seed = 77;
    const ExperimentData data =
        prepare_experiment_data(cfg, synthetic_digits(120, 5, Split::train), synthetic_digits(60, 6, Split::test));
    Checkpoint a, b;
    const std::string ra = report_to_json(run_transfer_experiment(cfg, data, &a));
    const std::string rb = report_to_json(run_transfer_experiment(cfg, data, &b));
    if (encode_checkpoint(a) != encode_checkpoint(b) || ra != rb) {
      broken.push_back(to_string(v.trainer) + "/" + to_string(v.task));
    }
  }
  if (broken.empty()) return pass(std::to_string(variants.size()) + " trainer/task pairs bitwise identical");
  std::string d = "differs:";
  for (const auto& s : broken) d += " " + s;
  return fail(d);
}

Bytes idx_bytes(const std::vector<std::uint32_t>& dims, const std::vector<std::uint8_t>& payload) {
  Bytes b{0, 0, 0x08, static_cast<std::uint8_t>(dims.size())};
  for (auto d : dims) {
    for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<std::uint8_t>(d >> s));
  }
  b.insert(b.end(), payload.begin(), payload.end());
  return b;
}

// 5. Format round trips.
Outcome formats() {
  std::vector<std::string> broken;

  ImageDataset ds = synthetic_digits(17, 7, Split::test);
  for (std::size_t i = 0; i < ds.images.size(); ++i) ds.images[i] = static_cast<double>((i * 37) % 256) / 255.0;
  const Bytes flat = encode_flat_tensor(ds);
  const ImageDataset back = decode_flat_tensor(flat, ds.name, Split::test);
  if (back.images != ds.images || back.labels != ds.labels || back.num_classes != ds.num_classes ||
      encode_flat_tensor(back) != flat) {
    broken.push_back("flat-tensor");
  }

  Rng r(8);
  auto bp = make_bp_network(36, {5, 4}, 10, BPLoss::cross_entropy, r, 1.5, GoodnessMode::l2norm);
  const Checkpoint ckpt = to_checkpoint(bp);
  const Bytes bytes = encode_checkpoint(ckpt);
  const Checkpoint decoded = decode_checkpoint(bytes);
  bool ckpt_ok = encode_checkpoint(decoded) == bytes && decoded.trainer == ckpt.trainer &&
                 decoded.backbone.theta == ckpt.backbone.theta && decoded.backbone.mode == ckpt.backbone.mode &&
                 decoded.backbone.depth() == ckpt.backbone.depth() && decoded.head.has_value() &&
                 decoded.head->weights == ckpt.head->weights && decoded.head->bias == ckpt.head->bias;
  for (std::size_t k = 0; ckpt_ok && k < ckpt.backbone.depth(); ++k) {
    ckpt_ok = decoded.backbone.layers[k].weights == ckpt.backbone.layers[k].weights &&
              decoded.backbone.layers[k].bias == ckpt.backbone.layers[k].bias;
  }
  if (!ckpt_ok) broken.push_back("FFCK checkpoint");

  const auto idx = parse_idx(idx_bytes({2, 2, 3}, {0, 1, 2, 3, 4, 5, 250, 251, 252, 253, 254, 255}));
  if (idx.shape != Shape{2, 2, 3} || idx.data[6] != 250 || idx.data[11] != 255) broken.push_back("IDX");

  Bytes rec(1 + 3 * 32 * 32);
  rec[0] = 4;
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t p = 0; p < 1024; ++p) rec[1 + c * 1024 + p] = static_cast<std::uint8_t>(c == 1 ? 255 : p % 2);
  }
  const ImageDataset cifar = parse_cifar10_binary(rec);
  bool cifar_ok = cifar.labels == std::vector<int>{4} && cifar.images.shape() == Shape{1, 3, 32, 32};
  for (std::size_t p = 0; cifar_ok && p < 1024; ++p) {
    cifar_ok = cifar.images[p] == static_cast<double>(p % 2) / 255.0 && cifar.images[1024 + p] == 1.0;
  }
  if (!cifar_ok) broken.push_back("CIFAR-10 record");

  if (broken.empty()) return pass("flat-tensor, FFCK, IDX and CIFAR-10 records exact");
  std::string d = "mismatch:";
  for (const auto& s : broken) d += " " + s;
  return fail(d);
}

// 6. t-SNE.
Outcome tsne_checks() {
  Rng data(11);
  Tensor pts({60, 10});
  std::vector<int> labels;
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t i = 0; i < 20; ++i) {
      labels.push_back(static_cast<int>(b));
      for (std::size_t d = 0; d < 10; ++d) pts.at(b * 20 + i, d) = (d == b ? 10.0 : 0.0) + data.normal();
    }
  }
  TsneConfig cfg;
  cfg.perplexity = 20.0;
  Rng rng(12);
  const Tensor y = tsne(pts, cfg, rng).coords;
  double centroid[3][2] = {};
  for (std::size_t i = 0; i < 60; ++i) {
    for (std::size_t c = 0; c < 2; ++c) centroid[labels[i]][c] += y.at(i, c) / 20.0;
  }
  std::size_t pure = 0;
  for (std::size_t i = 0; i < 60; ++i) {
    int best = 0;
    double best_d = 1e300;
    for (int b = 0; b < 3; ++b) {
      const double d = std::hypot(y.at(i, 0) - centroid[b][0], y.at(i, 1) - centroid[b][1]);
      if (d < best_d) {
        best_d = d;
        best = b;
      }
    }
    pure += best == labels[i] ? 1 : 0;
  }
  const double purity = static_cast<double>(pure) / 60.0;

  Rng u(13);
  Tensor cloud({150, 6});
  for (auto& v : cloud.values()) v = u.uniform() * 4.0;
  const auto bw = calibrate_bandwidths(pairwise_sq_distances(cloud), 30.0);
  double worst_perp = 0.0;
  for (std::size_t i = 0; i < 150; ++i) {
    double h = 0.0;
    for (double p : bw.conditional.row(i)) {
      if (p > 0.0) h -= p * std::log(p);
    }
    worst_perp = std::max(worst_perp, std::abs(std::exp(h) - 30.0) / 30.0);
  }
  const Tensor joint = joint_probabilities(bw.conditional);
  double sum = 0.0;
  bool symmetric = true;
  for (std::size_t i = 0; i < 150; ++i) {
    for (std::size_t j = 0; j < 150; ++j) {
      sum += joint.at(i, j);
      symmetric = symmetric && joint.at(i, j) == joint.at(j, i) && joint.at(i, j) >= 0.0;
    }
  }
  const bool ok = purity >= kTsnePurity && std::abs(sum - 1.0) <= kJointSumTol && symmetric &&
                  worst_perp <= kPerplexityTol;
  return judge(ok, "blob purity " + pct(purity) + " (>= " + pct(kTsnePurity) + "), |sum P - 1| " +
                       sci(std::abs(sum - 1.0)) + (symmetric ? ", P symmetric" : ", P not symmetric") +
                       ", worst perplexity error " + sci(worst_perp));
}

// Trains one preset end to end; results are cached because criteria share runs.
class Presets {
 public:
  Presets(fs::path dir, fs::path cache) : dir_(std::move(dir)), cache_(std::move(cache)) {}

  struct Result {
    ExperimentConfig cfg;
    PretextResult pretext;
    std::optional<TransferResult> transfer;
  };

  const Result& get(const std::string& name, bool probe) {
    auto it = results_.find(name);
    if (it != results_.end() && (!probe || it->second.transfer)) return it->second;
    ExperimentConfig cfg = load_experiment_config(dir_ / (name + ".json"));
    std::cerr << "  training " << name << " (" << to_string(cfg.trainer) << ", " << to_string(cfg.task) << ", "
              << cfg.epochs << " epochs)" << std::endl;
    const ExperimentData data = load_experiment_data(cfg, cache_);
    const PretrainResult trained = pretrain(cfg, data);
    Result r{cfg, evaluate_pretext(cfg, trained.checkpoint, data), std::nullopt};
    if (probe) r.transfer = run_transfer_probe(cfg, trained.checkpoint.backbone, data, cfg.probe_epochs);
    return results_[name] = std::move(r);
  }

 private:
  fs::path dir_;
  fs::path cache_;
  std::map<std::string, Result> results_;
};

bool mnist_cached(const fs::path& cache) {
  for (const char* f : {"train-images-idx3-ubyte", "train-labels-idx1-ubyte", "t10k-images-idx3-ubyte",
                        "t10k-labels-idx1-ubyte"}) {
    const fs::path p = cache / "mnist" / f;
    if (!fs::exists(p) && !fs::exists(p.string() + ".gz")) return false;
  }
  return true;
}

double required(const std::optional<double>& v, const std::string& what) {
  if (!v) throw Error(what + " produced no accuracy");
  return *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ffbench acceptance suite"};
  std::vector<int> only;
  std::string cache_flag;
  fs::path source_dir = FFBENCH_SOURCE_DIR;
  app.add_option("--only", only, "Criteria to run (default: all)")->check(CLI::Range(1, 14));
  app.add_option("--cache-dir", cache_flag, "Dataset cache (default: $FFBENCH_CACHE or ~/.cache/ffbench)");
  app.add_option("--source-dir", source_dir, "Repository root holding configs/");
  CLI11_PARSE(app, argc, argv);

  const fs::path cache = resolve_cache_dir(cache_flag.empty() ? std::nullopt : std::optional<fs::path>(cache_flag));
  const bool have_mnist = mnist_cached(cache);
  const char* full_env = std::getenv("FFBENCH_FULL_SCALE");
  const bool full_scale = full_env && std::string(full_env) == "1";
  Presets desk(source_dir / "configs" / "desk", cache);
  Presets full(source_dir / "configs" / "full", cache);

  auto needs_desk = [&]() -> std::optional<Outcome> {
    if (!have_mnist) return skip("MNIST not in " + (cache / "mnist").string() + "; run `ffbench fetch mnist`");
    return std::nullopt;
  };
  auto needs_full = [&]() -> std::optional<Outcome> {
    if (!full_scale) return skip("full-scale run; set FFBENCH_FULL_SCALE=1 (hours of CPU)");
    return needs_desk();
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gradient oracles", gradients},
      {"transform algebra", transforms},
      {"normalization contract", normalization},
      {"determinism", determinism},
      {"format round trips", formats},
      {"t-SNE", tsne_checks},
      {"desk FF supervised slow accuracy",
       [&] {
         if (auto s = needs_desk()) return *s;
         const double ff = required(desk.get("mnist_classify_ff", false).pretext.accuracy, "FF classify");
         return judge(ff >= kDeskFFSlow, "test accuracy " + pct(ff) + " (required >= " + pct(kDeskFFSlow) + ")");
       }},
      {"desk BP-CE supervised accuracy",
       [&] {
         if (auto s = needs_desk()) return *s;
         const double bp = required(desk.get("mnist_classify_bp_ce", false).pretext.accuracy, "BP-CE classify");
         const double ff = required(desk.get("mnist_classify_ff", false).pretext.accuracy, "FF classify");
         return judge(bp >= kDeskBPHead && bp >= ff - kDeskBPBelowFF,
                      "BP-CE " + pct(bp) + " (required >= " + pct(kDeskBPHead) + " and >= FF " + pct(ff) + " - " +
                          pct(kDeskBPBelowFF) + ")");
       }},
      {"desk rotation transfer, BP-CE over FF",
       [&] {
         if (auto s = needs_desk()) return *s;
         const double bp = desk.get("mnist_rotation_bp_ce", true).transfer->test_accuracy;
         const double ff = desk.get("mnist_rotation_ff", true).transfer->test_accuracy;
         return judge(bp - ff >= kDeskRotationGap, "BP-CE " + pct(bp) + ", FF " + pct(ff) + ", gap " + pct(bp - ff) +
                                                       " (required >= " + pct(kDeskRotationGap) + ")");
       }},
      {"desk rotation transfer, goodness_all below BP-CE",
       [&] {
         if (auto s = needs_desk()) return *s;
         const double ce = desk.get("mnist_rotation_bp_ce", true).transfer->test_accuracy;
         const double ga = desk.get("mnist_rotation_bp_goodness_all", true).transfer->test_accuracy;
         return judge(ce - ga >= kDeskGoodnessAllGap, "BP-CE " + pct(ce) + ", goodness_all " + pct(ga) + ", gap " +
                                                          pct(ce - ga) + " (required >= " +
                                                          pct(kDeskGoodnessAllGap) + ")");
       }},
      {"full MNIST supervised",
       [&] {
         if (auto s = needs_full()) return *s;
         const double ff = required(full.get("mnist_classify_ff", false).pretext.accuracy, "FF classify");
         const double bp = required(full.get("mnist_classify_bp_ce", false).pretext.accuracy, "BP-CE classify");
         return judge(within(ff, kFullFFClassify) && within(bp, kFullBPClassify),
                      "FF " + vs_target(ff, kFullFFClassify) + ", BP " + vs_target(bp, kFullBPClassify));
       }},
      {"full MNIST rotation",
       [&] {
         if (auto s = needs_full()) return *s;
         const auto& ff = full.get("mnist_rotation_ff", true);
         const auto& bp = full.get("mnist_rotation_bp_ce", true);
         const double fp = required(ff.pretext.accuracy, "FF rotation"), bpp = required(bp.pretext.accuracy, "BP rotation");
         const double ft = ff.transfer->test_accuracy, bt = bp.transfer->test_accuracy;
         return judge(within(fp, kFullFFRotPretext) && within(ft, kFullFFRotTransfer) && within(bpp, kFullBPRotPretext) &&
                          within(bt, kFullBPRotTransfer),
                      "FF pretext " + vs_target(fp, kFullFFRotPretext) + ", transfer " +
                          vs_target(ft, kFullFFRotTransfer) + "; BP pretext " + vs_target(bpp, kFullBPRotPretext) +
                          ", transfer " + vs_target(bt, kFullBPRotTransfer));
       }},
      {"full per-layer classify pattern",
       [&] {
         if (auto s = needs_full()) return *s;
         const auto& layers = full.get("mnist_classify_ff", false).pretext.per_layer;
         if (layers.size() < 2) return fail("need at least two layers");
         const auto best = std::max_element(layers.begin(), layers.end()) - layers.begin();
         std::string d = "per-layer";
         for (double a : layers) d += " " + pct(a);
         return judge(best == 1 && layers[0] >= layers[1] - kFullFirstLayerGap,
                      d + " (layer 1 must be best, layer 0 within " + pct(kFullFirstLayerGap) + ")");
       }},
      {"full unsupervised FF probe",
       [&] {
         if (auto s = needs_full()) return *s;
         const double un = full.get("mnist_unsupervised_ff", true).transfer->test_accuracy;
         const double rot = full.get("mnist_rotation_ff", true).transfer->test_accuracy;
         return judge(un >= kFullUnsupervised && un - rot >= kFullUnsupervisedGap,
                      "unsupervised " + pct(un) + " (required >= " + pct(kFullUnsupervised) + "), rotation FF " +
                          pct(rot) + ", gap " + pct(un - rot) + " (required >= " + pct(kFullUnsupervisedGap) + ")");
       }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("error: ") + e.what());
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    failures += o.status == Status::fail ? 1 : 0;
    std::cout << "criterion " << std::setw(2) << id << "  " << tag << "  " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
