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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffbench/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ffbench: forward-forward and backprop benchmark on self-supervised pretext tasks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string cache_dir;
  std::uint64_t seed = 0;
  bool force = false;
  int threads = 1;
  app.add_option("--cache-dir", cache_dir, "Dataset cache (default: $FFBENCH_CACHE or ~/.cache/ffbench)");
  auto* seed_opt = app.add_option("--seed", seed, "Override the master seed");
  app.add_flag("--force", force, "Overwrite an existing run directory");
  app.add_option("--threads", threads, "Worker threads (only 1 is supported)")->check(CLI::Range(1, 1));

  std::string dataset, manifest, from;
  auto* fetch = app.add_subcommand("fetch", "Download and verify a dataset into the cache");
  fetch->add_option("dataset", dataset, "mnist, fmnist, cifar10 or svhn")->required();
  fetch->add_option("--manifest", manifest, "JSON manifest with urls and sha256 digests");
  fetch->add_option("--from", from, "Seed the cache from a local directory instead of downloading");

  std::string config, out_dir;
  auto* train = app.add_subcommand("train", "Pretrain a network and write a run directory");
  train->add_option("config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  train->add_option("--out", out_dir, "Run directory (overrides output_dir)");

  std::string run_dir, curves_csv;
  auto* evaluate = app.add_subcommand("evaluate", "Pretext and per-layer accuracy of a run");
  evaluate->add_option("run_dir", run_dir)->required()->check(CLI::ExistingDirectory);
  evaluate->add_option("--curves-csv", curves_csv, "Also write the training curves as CSV");

  auto* probe = app.add_subcommand("probe", "Linear-probe transfer accuracy of a run");
  probe->add_option("run_dir", run_dir)->required()->check(CLI::ExistingDirectory);

  std::string embed_config;
  auto* embed = app.add_subcommand("embed", "t-SNE embedding of a run's activations");
  embed->add_option("config", embed_config, "Embedding config (JSON)")->required()->check(CLI::ExistingFile);

  std::vector<std::string> run_dirs;
  std::string metric = "transfer", table_csv;
  auto* report = app.add_subcommand("report", "Consolidate run reports into a table");
  report->add_option("run_dirs", run_dirs, "Run directories");
  report->add_option("--metric", metric, "transfer or pretext")->check(CLI::IsMember({"transfer", "pretext"}));
  report->add_option("--csv", table_csv, "Also write the table as CSV");

  CLI11_PARSE(app, argc, argv);

  ffb::GlobalOptions opts;
  if (!cache_dir.empty()) opts.cache_dir = cache_dir;
  if (seed_opt->count() > 0) opts.seed = seed;
  opts.force = force;
  opts.threads = threads;

  auto opt_path = [](const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
  };

  if (*fetch) return ffb::cmd_fetch(opts, dataset, opt_path(manifest), opt_path(from));
  if (*train) return ffb::cmd_train(opts, config, opt_path(out_dir));
  if (*evaluate) return ffb::cmd_evaluate(opts, run_dir, opt_path(curves_csv));
  if (*probe) return ffb::cmd_probe(opts, run_dir);
  if (*embed) return ffb::cmd_embed(opts, embed_config);
  if (*report) {
    std::vector<std::filesystem::path> dirs(run_dirs.begin(), run_dirs.end());
    return ffb::cmd_report(opts, dirs, metric, opt_path(table_csv));
  }
  return ffb::kExitUsage;
}
