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

#include "ffbench/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>

#include "ffbench/analysis/csv.hpp"
#include "ffbench/analysis/export.hpp"
#include "ffbench/analysis/tsne.hpp"
#include "ffbench/cli/config.hpp"
#include "ffbench/cli/metrics.hpp"
#include "ffbench/datasets/fetch.hpp"
#include "ffbench/datasets/registry.hpp"
#include "ffbench/error.hpp"
#include "ffbench/eval/experiment.hpp"
#include "ffbench/eval/report.hpp"
#include "ffbench/eval/slow.hpp"

namespace ffb {

namespace fs = std::filesystem;

namespace {

std::ostream& out_of(const GlobalOptions& o) { return o.out ? *o.out : std::cout; }
std::ostream& err_of(const GlobalOptions& o) { return o.err ? *o.err : std::cerr; }

fs::path cache_of(const GlobalOptions& o) { return resolve_cache_dir(o.cache_dir); }

struct Run {
  fs::path dir;
  ExperimentConfig cfg;
  Checkpoint ckpt;
};

Run open_run(const fs::path& dir) {
  for (const char* f : {kConfigFile, kCheckpointFile}) {
    if (!fs::exists(dir / f)) throw ConfigError("run directory " + dir.string() + " has no " + f);
  }
  return Run{dir, load_experiment_config(dir / kConfigFile), load_checkpoint(dir / kCheckpointFile)};
}

EvalReport report_for(const Run& run) {
  if (fs::exists(run.dir / kReportFile)) return load_report(run.dir / kReportFile);
  EvalReport r;
  r.run_id = run.dir.filename().string();
  r.dataset = run.cfg.dataset;
  r.task = to_string(run.cfg.task);
  r.trainer = to_string(run.cfg.trainer);
  return r;
}

void log_metric(const Run& run, const std::string& run_id, const std::string& phase, int epoch,
                const std::string& metric, double value) {
  MetricsLog(run.dir / kMetricsFile).append({run_id, phase, epoch, metric, value, utc_timestamp()});
}

template <typename Fn>
int guarded(const GlobalOptions& opts, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err_of(opts) << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err_of(opts) << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err_of(opts) << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
  return buf;
}

}  // namespace

int cmd_fetch(const GlobalOptions& opts, const std::string& dataset, const std::optional<fs::path>& manifest,
              const std::optional<fs::path>& from) {
  return guarded(opts, [&] {
    auto manifests = builtin_manifests();
    if (manifest) {
      for (auto& m : load_manifests(*manifest)) {
        std::erase_if(manifests, [&](const DatasetManifest& b) { return b.name == m.name; });
        manifests.push_back(std::move(m));
      }
    }
    const DatasetManifest& m = find_manifest(manifests, dataset);
    const fs::path cache = cache_of(opts);
    const auto paths = from ? seed_cache(m, cache, *from) : fetch_dataset(m, cache);
    for (const auto& p : paths) out_of(opts) << p.string() << "\n";
    return kExitOk;
  });
}

int cmd_train(const GlobalOptions& opts, const fs::path& config_path, const std::optional<fs::path>& run_dir_override) {
  return guarded(opts, [&] {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (run_dir_override) cfg.output_dir = run_dir_override->string();
    if (cfg.output_dir.empty()) throw ConfigError("config.output_dir: required (or pass --out)");
    const fs::path dir = cfg.output_dir;
    for (const char* f : {kConfigFile, kCheckpointFile, kMetricsFile, kReportFile}) {
      if (!fs::exists(dir / f)) continue;
      if (!opts.force) {
        err_of(opts) << "refusing to overwrite run " << dir.string() << " (found " << f
                     << "); pass --force to retrain\n";
        return kExitRefused;
      }
    }
    for (const char* f : {kConfigFile, kCheckpointFile, kMetricsFile, kReportFile}) fs::remove(dir / f);
    fs::create_directories(dir);

    const ExperimentData data = load_experiment_data(cfg, cache_of(opts));
    save_experiment_config(cfg, dir / kConfigFile);
    const std::string run_id = dir.filename().string();
    const MetricsLog metrics(dir / kMetricsFile);
    const PretrainHook online = online_probe_hook(cfg, data);
    auto hook = [&](const FFNetwork& backbone, int epoch, std::vector<CurvePoint>& points) {
      if (online) online(backbone, epoch, points);
      for (const auto& p : points) {
        metrics.append({run_id, "pretrain", p.epoch, p.split + "/" + p.metric, p.value, utc_timestamp()});
      }
      out_of(opts) << "epoch " << epoch << "/" << cfg.epochs << std::endl;
    };
    PretrainResult result = pretrain(cfg, data, hook);
    save_checkpoint(result.checkpoint, dir / kCheckpointFile);
    out_of(opts) << "wrote " << (dir / kCheckpointFile).string() << "\n";
    return kExitOk;
  });
}

int cmd_evaluate(const GlobalOptions& opts, const fs::path& run_dir, const std::optional<fs::path>& curves_csv) {
  return guarded(opts, [&] {
    const Run run = open_run(run_dir);
    const ExperimentData data = load_experiment_data(run.cfg, cache_of(opts));
    const PretextResult pretext = evaluate_pretext(run.cfg, run.ckpt, data);
    EvalReport report = report_for(run);
    report.pretext_accuracy = pretext.accuracy;
    report.pretext_method = pretext.method;
    report.per_layer_accuracy = pretext.per_layer;
    report.curves.clear();
    if (fs::exists(run_dir / kMetricsFile)) {
      for (const auto& m : read_metrics(run_dir / kMetricsFile)) {
        if (m.phase != "pretrain") continue;
        const auto slash = m.metric.find('/');
        if (slash == std::string::npos) continue;
        report.curves.push_back({m.epoch, m.metric.substr(0, slash), m.metric.substr(slash + 1), m.value});
      }
    }
    if (pretext.accuracy) log_metric(run, report.run_id, "evaluate", run.cfg.epochs, "pretext_accuracy", *pretext.accuracy);
    for (std::size_t k = 0; k < pretext.per_layer.size(); ++k) {
      log_metric(run, report.run_id, "evaluate", run.cfg.epochs, "layer" + std::to_string(k) + "_accuracy",
                 pretext.per_layer[k]);
    }
    save_report(report, run_dir / kReportFile);
    if (curves_csv) save_curves_csv(report.curves, *curves_csv);
    out_of(opts) << "pretext accuracy (" << pretext.method
                 << "): " << (pretext.accuracy ? percent(*pretext.accuracy) : std::string("n/a")) << "\n";
    for (std::size_t k = 0; k < pretext.per_layer.size(); ++k) {
      out_of(opts) << "  layer " << k << ": " << percent(pretext.per_layer[k]) << "\n";
    }
    return kExitOk;
  });
}

int cmd_probe(const GlobalOptions& opts, const fs::path& run_dir) {
  return guarded(opts, [&] {
    const Run run = open_run(run_dir);
    const ExperimentData data = load_experiment_data(run.cfg, cache_of(opts));
    const TransferResult t = run_transfer_probe(run.cfg, run.ckpt.backbone, data, run.cfg.probe_epochs);
    EvalReport report = report_for(run);
    report.transfer_accuracy = t.test_accuracy;
    report.transfer_train_accuracy = t.train_accuracy;
    report.transfer_layers = t.layers;
    log_metric(run, report.run_id, "probe", run.cfg.probe_epochs, "transfer_accuracy", t.test_accuracy);
    log_metric(run, report.run_id, "probe", run.cfg.probe_epochs, "transfer_train_accuracy", t.train_accuracy);
    save_report(report, run_dir / kReportFile);
    out_of(opts) << "transfer accuracy: " << percent(t.test_accuracy) << " (train " << percent(t.train_accuracy)
                 << ")\n";
    return kExitOk;
  });
}

int cmd_embed(const GlobalOptions& opts, const fs::path& config_path) {
  return guarded(opts, [&] {
    EmbedConfig ec = load_embed_config(config_path);
    if (opts.seed) ec.seed = *opts.seed;
    const Run run = open_run(ec.run_dir);
    const ExperimentData data = load_experiment_data(run.cfg, cache_of(opts));
    const ImageDataset& ds = ec.split == Split::train ? data.train : data.test;
    if (ec.cap > ds.count()) throw ConfigError("config.cap: exceeds the split's " + std::to_string(ds.count()) + " samples");
    const auto layers = ec.layer_set.empty() ? transfer_layers(run.cfg, run.ckpt.backbone.depth()) : ec.layer_set;
    validate_layer_set(layers, run.ckpt.backbone.depth());
    const LabelPolicy policy{ec.label_mode, ec.label, data.task.num_labels};
    Rng export_rng = Rng(ec.seed).split(streams::kExport);
    const ActivationExport ex = export_activations(run.ckpt.backbone, ds, layers, policy, ec.cap, export_rng);
    TsneConfig tc;
    tc.perplexity = ec.perplexity;
    tc.iterations = ec.iterations;
    Rng tsne_rng = Rng(ec.seed).split(streams::kTsne);
    const TsneResult t = tsne(ex.features, tc, tsne_rng);
    emit_embedding_csv(Embedding2D{t.coords, ex.labels, ex.activity}, ec.output);
    out_of(opts) << "wrote " << ec.output << " (" << ex.labels.size() << " points)\n";
    return kExitOk;
  });
}

ReportTable build_report_table(const std::vector<fs::path>& run_dirs, const std::string& metric) {
  if (metric != "transfer" && metric != "pretext") throw ArgumentError("metric must be 'transfer' or 'pretext'");
  ReportTable t;
  for (const auto& dir : run_dirs) {
    const fs::path file = dir / kReportFile;
    if (!fs::exists(file)) {
      t.gaps.push_back(dir.string());
      continue;
    }
    const EvalReport r = load_report(file);
    const std::optional<double> v = metric == "transfer" ? r.transfer_accuracy : r.pretext_accuracy;
    if (!v) {
      t.gaps.push_back(dir.string());
      continue;
    }
    const std::string row = r.task + " / " + r.trainer;
    if (std::find(t.rows.begin(), t.rows.end(), row) == t.rows.end()) t.rows.push_back(row);
    if (std::find(t.columns.begin(), t.columns.end(), r.dataset) == t.columns.end()) t.columns.push_back(r.dataset);
    t.cells[{row, r.dataset}] = *v;
  }
  return t;
}

std::string format_report_text(const ReportTable& t) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"method"});
  for (const auto& c : t.columns) grid[0].push_back(c);
  for (const auto& r : t.rows) {
    std::vector<std::string> line{r};
    for (const auto& c : t.columns) {
      auto it = t.cells.find({r, c});
      line.push_back(it == t.cells.end() ? "-" : percent(it->second));
    }
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> width(grid[0].size(), 0);
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::string out;
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i > 0) out += "  ";
      const std::size_t pad = width[i] - line[i].size();
      out += i == 0 ? line[i] + std::string(pad, ' ') : std::string(pad, ' ') + line[i];
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

std::string format_report_csv(const ReportTable& t) {
  std::string out = "method";
  for (const auto& c : t.columns) out += "," + c;
  out += "\n";
  for (const auto& r : t.rows) {
    out += r;
    for (const auto& c : t.columns) {
      out += ",";
      auto it = t.cells.find({r, c});
      if (it != t.cells.end()) out += format_double(it->second);
    }
    out += "\n";
  }
  return out;
}

int cmd_report(const GlobalOptions& opts, const std::vector<fs::path>& run_dirs, const std::string& metric,
               const std::optional<fs::path>& csv_path) {
  return guarded(opts, [&] {
    const ReportTable t = build_report_table(run_dirs, metric);
    out_of(opts) << format_report_text(t);
    for (const auto& g : t.gaps) out_of(opts) << "missing report: " << g << "\n";
    if (csv_path) {
      const std::string csv = format_report_csv(t);
      write_file(*csv_path, Bytes(csv.begin(), csv.end()));
    }
    return kExitOk;
  });
}

}  // namespace ffb
